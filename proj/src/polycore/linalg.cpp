#include "sympoly/linalg.hpp"

#include <utility>

namespace sympoly {

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  std::vector<IntVector> a;
  a.reserve(m.size());
  for (const auto& row : m) a.push_back(primitive_integer(row));
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();

  // Bareiss: every intermediate entry is an exact minor, so divisions are exact.
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

EchelonForm reduced_echelon(Matrix m) {
  EchelonForm out;
  if (m.empty()) return out;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(m[r][j]) != 0) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

Matrix nullspace(const Matrix& m, std::size_t cols) {
  auto ech = reduced_echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  Matrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
  auto ech = reduced_echelon(std::move(aug));
  Vector x = zero_vector(cols);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] == cols) return std::nullopt;
    x[ech.pivots[r]] = ech.rows[r][cols];
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  auto ech = reduced_echelon(std::move(aug));
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(ech.rows[i].begin() + n, ech.rows[i].end());
  return inv;
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::vector<std::size_t> independent_rows(const Matrix& m) {
  std::vector<std::size_t> chosen;
  Matrix basis;  // kept in reduced form incrementally
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < m.size(); ++i) {
    Vector v = m[i];
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const Rational f = v[pivots[r]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * basis[r][j];
    }
    std::size_t p = 0;
    while (p < v.size() && sgn(v[p]) == 0) ++p;
    if (p == v.size()) continue;
    Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const Rational f = basis[r][p];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) basis[r][j] -= f * v[j];
    }
    basis.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(i);
  }
  return chosen;
}

HermiteDecomposition column_hermite(const std::vector<IntVector>& e) {
  const std::size_t r = e.size();
  const std::size_t n = r ? e[0].size() : 0;
  std::vector<IntVector> a = e;
  std::vector<IntVector> u(n, IntVector(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (auto& row : a) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  auto col_negate = [&](std::size_t x) {
    for (auto& row : a) row[x] = -row[x];
    for (auto& row : u) row[x] = -row[x];
  };

  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      while (a[i][j] != 0) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][i].get_mpz_t(), a[i][j].get_mpz_t());
        col_axpy(i, j, q);
        col_swap(i, j);
      }
    }
    if (a[i][i] == 0) throw InputError("column_hermite: matrix does not have full row rank");
    if (a[i][i] < 0) col_negate(i);
  }

  HermiteDecomposition out;
  out.unimodular = std::move(u);
  out.hermite.assign(r, IntVector(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) out.hermite[i][j] = a[i][j];
  return out;
}

}  // namespace sympoly
