#include "sympoly/redundancy.hpp"

#include "sympoly/linalg.hpp"
#include "sympoly/lp.hpp"

namespace sympoly {
namespace {

HPolyhedron subsystem(const HPolyhedron& p, const std::vector<std::size_t>& ineq,
                      const std::vector<std::size_t>& eq) {
  HPolyhedron out(p.dimension());
  for (auto i : ineq) out.add_row(p.row(i), p.rhs(i));
  for (auto i : eq) {
    out.add_row(p.row(i), p.rhs(i));
    out.add_row(scale(p.row(i), -1), -p.rhs(i));
  }
  return out;
}

}  // namespace

std::vector<std::size_t> implicit_equalities(const HPolyhedron& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (is_zero(p.row(i))) {
      if (sgn(p.rhs(i)) == 0) out.push_back(i);
      continue;
    }
    LpResult r = minimize_lp(p, p.row(i));
    if (r.status == LpStatus::optimal && r.value == p.rhs(i)) out.push_back(i);
  }
  return out;
}

IrredundantSystem remove_redundancy(const HPolyhedron& p) {
  IrredundantSystem out;
  if (p.trivially_empty() || !feasible_point(p)) {
    out.empty = true;
    out.system = p;
    return out;
  }

  const auto implicit = implicit_equalities(p);
  {
    Matrix eq_rows;
    for (auto i : implicit) eq_rows.push_back(p.row(i));
    for (auto k : independent_rows(eq_rows)) out.equalities.push_back(implicit[k]);
  }

  std::vector<bool> is_implicit(p.rows(), false);
  for (auto i : implicit) is_implicit[i] = true;
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < p.rows(); ++i)
    if (!is_implicit[i] && !is_zero(p.row(i))) active.push_back(i);

  // Drop rows one at a time; a row is redundant iff it is implied by the
  // rows still active.
  for (std::size_t pos = 0; pos < active.size();) {
    const std::size_t i = active[pos];
    std::vector<std::size_t> others;
    others.reserve(active.size() - 1);
    for (auto j : active)
      if (j != i) others.push_back(j);
    LpResult r = solve_lp(subsystem(p, others, out.equalities), p.row(i));
    if (r.status == LpStatus::optimal && r.value <= p.rhs(i)) {
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      ++pos;
    }
  }
  out.inequalities = std::move(active);
  out.system = subsystem(p, out.inequalities, out.equalities);
  return out;
}

std::vector<std::size_t> redundant_points(const std::vector<Vector>& points) {
  std::vector<std::size_t> out;
  if (points.empty()) return out;
  const std::size_t n = points.front().size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool repeated = false;
    for (std::size_t j = 0; j < i && !repeated; ++j) repeated = points[j] == points[i];
    if (repeated) {
      out.push_back(i);
      continue;
    }
    // x_i is a vertex iff some (a, beta) has a.x_j <= beta for j != i and
    // a.x_i >= beta + 1.
    HPolyhedron sep(n + 1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i || points[j] == points[i]) continue;
      Vector row = points[j];
      row.push_back(-1);
      sep.add_row(std::move(row), 0);
    }
    Vector row = scale(points[i], -1);
    row.push_back(1);
    sep.add_row(std::move(row), -1);
    if (!feasible_point(sep)) out.push_back(i);
  }
  return out;
}

}  // namespace sympoly
