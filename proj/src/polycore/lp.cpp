#include "sympoly/lp.hpp"

#include <limits>

namespace sympoly {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau over standard form  T x = rhs, x >= 0.
class Tableau {
 public:
  Tableau(Matrix rows, Vector rhs, std::vector<std::size_t> basis, std::size_t cols)
      : t_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)), cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return t_.size(); }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Vector& rhs() const { return rhs_; }
  const Vector& row(std::size_t i) const { return t_[i]; }

  // Sets the objective to maximize `cost` (length cols_).
  void set_objective(const Vector& cost) {
    reduced_ = cost;
    value_ = 0;
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(t_[i][j]) != 0) reduced_[j] -= cb * t_[i][j];
      value_ += cb * rhs_[i];
    }
  }

  // Runs primal simplex; `allowed[j]` false excludes column j from entering.
  // Returns false if unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && sgn(reduced_[j]) > 0) {
          enter = j;
          break;
        }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = rhs_[i] / t_[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == kNone) {
        unbounded_column_ = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(t_[r][j]) != 0) t_[r][j] *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    if (sgn(reduced_[c]) != 0) {
      const Rational f = reduced_[c];
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(t_[r][j]) != 0) reduced_[j] -= f * t_[r][j];
      value_ += f * rhs_[r];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  const Rational& value() const { return value_; }
  std::size_t unbounded_column() const { return unbounded_column_; }

  Vector solution() const {
    Vector x = zero_vector(cols_);
    for (std::size_t i = 0; i < rows(); ++i) x[basis_[i]] = rhs_[i];
    return x;
  }

 private:
  Matrix t_;
  Vector rhs_;
  std::vector<std::size_t> basis_;
  Vector reduced_;
  Rational value_;
  std::size_t cols_ = 0;
  std::size_t unbounded_column_ = kNone;
};

}  // namespace

LpResult solve_lp(const HPolyhedron& p, const Vector& c) {
  const std::size_t n = p.dimension();
  const std::size_t m = p.rows();
  if (c.size() != n) throw InputError("solve_lp: objective dimension mismatch");

  // Columns: x+ (n), x- (n), slacks (m), artificials (one per row with b < 0).
  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(p.rhs(i)) < 0) art_rows.push_back(i);
  const std::size_t slack0 = 2 * n;
  const std::size_t art0 = slack0 + m;
  const std::size_t cols = art0 + art_rows.size();

  Matrix rows(m, zero_vector(cols));
  Vector rhs(m);
  std::vector<std::size_t> basis(m);
  std::size_t next_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool negate = sgn(p.rhs(i)) < 0;
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = negate ? -p.row(i)[j] : p.row(i)[j];
      rows[i][n + j] = -rows[i][j];
    }
    rows[i][slack0 + i] = negate ? -1 : 1;
    rhs[i] = negate ? -p.rhs(i) : p.rhs(i);
    if (negate) {
      rows[i][art0 + next_art] = 1;
      basis[i] = art0 + next_art;
      ++next_art;
    } else {
      basis[i] = slack0 + i;
    }
  }

  Tableau tab(std::move(rows), std::move(rhs), std::move(basis), cols);
  std::vector<bool> allowed(cols, true);

  if (!art_rows.empty()) {
    Vector phase1 = zero_vector(cols);
    for (std::size_t j = art0; j < cols; ++j) phase1[j] = -1;
    tab.set_objective(phase1);
    tab.optimize(allowed);
    if (sgn(tab.value()) < 0) return {LpStatus::infeasible, {}, {}};
    // Drive zero-level artificials out of the basis.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < art0) {
        ++i;
        continue;
      }
      std::size_t col = kNone;
      for (std::size_t j = 0; j < art0; ++j)
        if (sgn(tab.row(i)[j]) != 0) {
          col = j;
          break;
        }
      if (col == kNone) {
        tab.drop_row(i);
      } else {
        tab.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  }

  Vector cost = zero_vector(cols);
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = c[j];
    cost[n + j] = -c[j];
  }
  tab.set_objective(cost);
  const bool bounded = tab.optimize(allowed);

  const Vector sol = tab.solution();
  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = sol[j] - sol[n + j];
  if (!bounded) return {LpStatus::unbounded, {}, std::move(x)};
  return {LpStatus::optimal, dot(c, x), std::move(x)};
}

LpResult minimize_lp(const HPolyhedron& p, const Vector& c) {
  Vector neg(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
  LpResult r = solve_lp(p, neg);
  if (r.status == LpStatus::optimal) r.value = -r.value;
  return r;
}

std::optional<Vector> feasible_point(const HPolyhedron& p) {
  LpResult r = solve_lp(p, zero_vector(p.dimension()));
  if (r.status == LpStatus::infeasible) return std::nullopt;
  return r.point;
}

}  // namespace sympoly
