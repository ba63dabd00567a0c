#pragma once

// Shared polytopes and brute-force oracles for the test suites.

#include "sympoly/linalg.hpp"
#include "sympoly/polyhedron.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>

namespace sympoly::testing {

inline Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

/// [-1,1]^n as 2n inequalities +-x_i <= 1 (+x_1, -x_1, +x_2, ...).
inline HPolyhedron cube_h(std::size_t n) {
  HPolyhedron p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_row(unit_vector(n, i), 1);
    p.add_row(scale(unit_vector(n, i), -1), 1);
  }
  return p;
}

/// Vertices of [-1,1]^n in binary order (bit i set means coordinate i is -1).
inline VPolyhedron cube_v(std::size_t n) {
  VPolyhedron v;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i & 1) ? -1 : 1;
    v.vertices.push_back(std::move(x));
  }
  return v;
}

inline VPolyhedron cross_v(std::size_t n) {
  VPolyhedron v;
  for (std::size_t i = 0; i < n; ++i) {
    v.vertices.push_back(unit_vector(n, i));
    v.vertices.push_back(scale(unit_vector(n, i), -1));
  }
  return v;
}

/// Cross-polytope as 2^n inequalities sum(+-x_i) <= 1.
inline HPolyhedron cross_h(std::size_t n) {
  HPolyhedron p(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i & 1) ? -1 : 1;
    p.add_row(std::move(a), 1);
  }
  return p;
}

/// Standard simplex conv{0, e_1, ..., e_n}.
inline VPolyhedron simplex_v(std::size_t n) {
  VPolyhedron v;
  v.vertices.push_back(zero_vector(n));
  for (std::size_t i = 0; i < n; ++i) v.vertices.push_back(unit_vector(n, i));
  return v;
}

/// x >= 0, sum x <= 1.
inline HPolyhedron simplex_h(std::size_t n) {
  HPolyhedron p(n);
  for (std::size_t i = 0; i < n; ++i) p.add_row(scale(unit_vector(n, i), -1), 0);
  p.add_row(Vector(n, Rational(1)), 1);
  return p;
}

/// The 48 vertices of Santos' 5-dimensional prismatoid of width 6.
/// The first 24 lie on x5 = 1, the last 24 on x5 = -1.
inline VPolyhedron santos_prismatoid() {
  struct Pattern {
    std::vector<std::pair<int, long>> entries;
    long last;
  };
  const std::vector<Pattern> patterns = {
      {{{0, 18}}, 1},           {{{1, 18}}, 1},           {{{2, 45}}, 1},
      {{{3, 45}}, 1},           {{{0, 15}, {1, 15}}, 1},  {{{2, 30}, {3, 30}}, 1},
      {{{1, 10}, {2, 40}}, 1},  {{{0, 10}, {3, 40}}, 1},  {{{3, 18}}, -1},
      {{{2, 18}}, -1},          {{{0, 45}}, -1},          {{{1, 45}}, -1},
      {{{2, 15}, {3, 15}}, -1}, {{{0, 30}, {1, 30}}, -1}, {{{0, 40}, {2, 10}}, -1},
      {{{1, 40}, {3, 10}}, -1},
  };
  VPolyhedron v;
  for (const auto& pat : patterns) {
    const std::size_t k = pat.entries.size();
    for (std::size_t signs = 0; signs < (std::size_t{1} << k); ++signs) {
      Vector x = zero_vector(5);
      x[4] = pat.last;
      for (std::size_t e = 0; e < k; ++e)
        x[pat.entries[e].first] = (signs >> e & 1) ? -pat.entries[e].second : pat.entries[e].second;
      v.vertices.push_back(std::move(x));
    }
  }
  return v;
}

/// Vertices of a bounded H-polytope by brute force over all n-subsets of rows.
/// Independent of the double description code.
inline std::vector<Vector> brute_force_vertices(const HPolyhedron& p) {
  const std::size_t n = p.dimension();
  const std::size_t m = p.rows();
  std::set<Vector, decltype([](const Vector& a, const Vector& b) { return lex_less(a, b); })> out;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(n, m)), true);
  if (n > m) return {};
  do {
    Matrix a;
    Vector b;
    for (std::size_t i = 0; i < m; ++i)
      if (pick[i]) {
        a.push_back(p.row(i));
        b.push_back(p.rhs(i));
      }
    if (rank(a) != n) continue;
    auto x = solve(a, b);
    if (x && p.contains(*x)) out.insert(*x);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return {out.begin(), out.end()};
}

inline Rational random_rational(std::mt19937& rng, long lo, long hi, long max_den) {
  std::uniform_int_distribution<long> num(lo * max_den, hi * max_den);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Random bounded full-dimensional polytope: a box [-3,3]^n cut by `cuts`
/// random integer halfspaces that keep the origin strictly inside.
inline HPolyhedron random_polytope(std::mt19937& rng, std::size_t n, std::size_t cuts) {
  HPolyhedron p = [&] {
    HPolyhedron box(n);
    for (std::size_t i = 0; i < n; ++i) {
      box.add_row(unit_vector(n, i), 3);
      box.add_row(scale(unit_vector(n, i), -1), 3);
    }
    return box;
  }();
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<long> rhs(1, 6);
  for (std::size_t c = 0; c < cuts; ++c) {
    Vector a(n);
    for (auto& x : a) x = coef(rng);
    if (is_zero(a)) a[0] = 1;
    p.add_row(std::move(a), rhs(rng));
  }
  return p;
}

/// Set of primitive-integer inequalities, for comparing H-descriptions.
inline std::set<NormalizedRow> normalized_rows(const HPolyhedron& p) {
  std::set<NormalizedRow> out;
  for (std::size_t i = 0; i < p.rows(); ++i) out.insert(normalize_row(p.row(i), p.rhs(i)));
  return out;
}

/// Random invertible affine map x -> m x + t with small rational entries.
inline std::pair<Matrix, Vector> random_affine(std::mt19937& rng, std::size_t n) {
  for (;;) {
    Matrix m(n, Vector(n));
    for (auto& row : m)
      for (auto& x : row) x = random_rational(rng, -3, 3, 4);
    if (determinant(m) == 0) continue;
    Vector t(n);
    for (auto& x : t) x = random_rational(rng, -5, 5, 3);
    return {m, t};
  }
}

inline VPolyhedron transform(const VPolyhedron& v, const Matrix& m, const Vector& t) {
  VPolyhedron out;
  for (const auto& x : v.vertices) out.vertices.push_back(add(multiply(m, x), t));
  return out;
}

}  // namespace sympoly::testing
