#pragma once

#include "sympoly/polyhedron.hpp"

namespace sympoly {

struct ExtremeRay {
  IntVector direction;  // primitive
  FaceIndexSet tight;   // rows r with r . direction == 0
};

/// Extreme rays of the pointed cone {y : r . y <= 0 for every row r} by the
/// double description method, adding rows in input order.  Rays come back
/// sorted by their tight sets.  Throws InputError when the rows do not span
/// (the cone is not pointed).
std::vector<ExtremeRay> extreme_rays(const std::vector<IntVector>& rows);

/// Generator side of a conversion.
struct VRepresentation {
  bool empty = false;
  VPolyhedron v;
  /// Per vertex, then per ray: indices of the input rows it is tight on.
  std::vector<FaceIndexSet> incidence;
};

/// Inequality side of a conversion.  Rows listed in `linearity` are
/// equations (a x == b), the rest are facets a x <= b in primitive integer
/// scaling.
struct HRepresentation {
  HPolyhedron system{std::size_t{1}};
  std::vector<std::size_t> linearity;
  /// Per row: indices of the input generators (vertices, then rays) on it.
  std::vector<FaceIndexSet> incidence;
};

/// Vertices and extreme rays of a pointed H-polyhedron.  Implicit
/// equalities are detected and eliminated first.  An empty input yields
/// `empty == true`; a polyhedron containing a line is an InputError.
VRepresentation convert_dd(const HPolyhedron& p);

/// Facets and affine-hull equations of a V-polyhedron.
HRepresentation convert_dd(const VPolyhedron& v);

/// Facets of conv(points) as sets of point indices, by double description
/// on the dual cone.  A single point has one facet, the empty set.
std::vector<FaceIndexSet> facets_dd(const std::vector<Vector>& points);

}  // namespace sympoly
