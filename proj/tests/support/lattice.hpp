#pragma once

// Bounding-box enumeration and symmetric random instances.  The enumeration
// only uses per-axis LP bounds and membership tests, nothing from latcount.

#include "sympoly/dd.hpp"
#include "sympoly/lp.hpp"
#include "sympoly/perm_group.hpp"

#include "fixtures.hpp"

namespace sympoly::testing {

inline std::vector<IntVector> brute_force_integer_points(const HPolyhedron& p) {
  const std::size_t n = p.dimension();
  IntVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto up = solve_lp(p, unit_vector(n, i));
    if (up.status == LpStatus::infeasible) return {};
    if (up.status != LpStatus::optimal) throw std::runtime_error("brute force needs a bounded polytope");
    hi[i] = floor(up.value);
    lo[i] = ceil(minimize_lp(p, unit_vector(n, i)).value);
    if (lo[i] > hi[i]) return {};
  }
  std::vector<IntVector> out;
  IntVector cur = lo;
  for (;;) {
    if (p.contains(to_rational(cur))) out.push_back(cur);
    std::size_t i = 0;
    while (i < n && cur[i] == hi[i]) cur[i] = lo[i], ++i;
    if (i == n) break;
    cur[i] += 1;
  }
  return out;
}

inline Integer brute_force_count(const HPolyhedron& p) {
  return static_cast<unsigned long>(brute_force_integer_points(p).size());
}

/// Random polytope invariant under g: the box [-r, r]^n plus the full
/// orbits of `cuts` random integer rows.
inline HPolyhedron random_invariant_polytope(std::mt19937& rng, const PermutationGroup& g, std::size_t cuts,
                                             long box, long coef_range, long rhs_lo, long rhs_hi) {
  const std::size_t n = g.degree();
  HPolyhedron p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_row(unit_vector(n, i), box);
    p.add_row(scale(unit_vector(n, i), -1), box);
  }
  const auto elements = g.elements();
  std::uniform_int_distribution<long> coef(-coef_range, coef_range);
  std::uniform_int_distribution<long> rhs(rhs_lo, rhs_hi);
  for (std::size_t c = 0; c < cuts; ++c) {
    Vector a(n);
    for (auto& x : a) x = coef(rng);
    if (is_zero(a)) a[0] = 1;
    Rational b = rhs(rng);
    b /= 2;
    std::set<Vector> images;
    for (const auto& e : elements) {
      Vector img(n);
      for (std::size_t i = 0; i < n; ++i) img[e[i]] = a[i];
      images.insert(img);
    }
    for (const auto& img : images) p.add_row(img, b);
  }
  return p;
}

/// Birkhoff polytope B_3: 3x3 doubly stochastic matrices, row-major.
inline HPolyhedron birkhoff3() {
  HPolyhedron p(9);
  for (std::size_t i = 0; i < 9; ++i) p.add_row(scale(unit_vector(9, i), -1), 0);
  for (std::size_t r = 0; r < 3; ++r) {
    Vector row = zero_vector(9), col = zero_vector(9);
    for (std::size_t c = 0; c < 3; ++c) {
      row[3 * r + c] = 1;
      col[3 * c + r] = 1;
    }
    p.add_row(row, 1);
    p.add_row(scale(row, -1), -1);
    p.add_row(col, 1);
    p.add_row(scale(col, -1), -1);
  }
  return p;
}

/// conv of random points with coordinates in (1/den) Z inside [0, 1]^n.
inline HPolyhedron random_rational_polytope(std::mt19937& rng, std::size_t n, long den) {
  std::uniform_int_distribution<long> coord(0, den);
  for (;;) {
    VPolyhedron v;
    std::set<Vector> seen;
    while (v.vertices.size() < n + 3) {
      Vector x(n);
      for (auto& c : x) c = make_rational(coord(rng), den);
      if (seen.insert(x).second) v.vertices.push_back(x);
    }
    if (affine_hull(v.vertices).dimension != n) continue;
    return convert_dd(v).system;
  }
}

}  // namespace sympoly::testing
