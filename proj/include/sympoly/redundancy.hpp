#pragma once

#include "sympoly/polyhedron.hpp"

namespace sympoly {

/// Result of redundancy removal.  Row indices refer to the input system.
struct IrredundantSystem {
  bool empty = false;
  std::vector<std::size_t> inequalities;  // kept, each a supporting non-implicit row
  std::vector<std::size_t> equalities;    // linearly independent implicit equalities
  HPolyhedron system;                     // kept inequalities, then each equality as a <= / >= pair
};

/// Irredundant subsystem defining the same set, decided by one exact LP per
/// row.  Implicit equalities are detected and reported separately.
IrredundantSystem remove_redundancy(const HPolyhedron& p);

/// Rows of P that hold with equality on all of P (P must be nonempty).
std::vector<std::size_t> implicit_equalities(const HPolyhedron& p);

/// Indices of points lying in the convex hull of the other points (for
/// repeated points, every copy after the first).  One LP per point.
std::vector<std::size_t> redundant_points(const std::vector<Vector>& points);

}  // namespace sympoly
