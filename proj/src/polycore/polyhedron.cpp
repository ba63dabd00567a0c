#include "sympoly/polyhedron.hpp"

#include "sympoly/linalg.hpp"

#include <algorithm>
#include <set>

namespace sympoly {

HPolyhedron::HPolyhedron(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) throw InputError("HPolyhedron: A and b have different row counts");
  if (a_.empty()) throw InputError("HPolyhedron: use HPolyhedron(n) for an empty system");
  n_ = a_[0].size();
  if (n_ == 0) throw InputError("HPolyhedron: dimension must be at least 1");
  for (const auto& row : a_)
    if (row.size() != n_) throw InputError("HPolyhedron: ragged constraint matrix");
}

HPolyhedron::HPolyhedron(std::size_t n) : n_(n) {
  if (n_ == 0) throw InputError("HPolyhedron: dimension must be at least 1");
}

bool HPolyhedron::trivially_empty() const {
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (is_zero(a_[i]) && sgn(b_[i]) < 0) return true;
  return false;
}

bool HPolyhedron::contains(const Vector& x) const {
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (dot(a_[i], x) > b_[i]) return false;
  return true;
}

void HPolyhedron::add_row(Vector a, Rational b) {
  if (a.size() != n_) throw InputError("HPolyhedron::add_row: dimension mismatch");
  a_.push_back(std::move(a));
  b_.push_back(std::move(b));
}

HPolyhedron HPolyhedron::dilate(const Rational& lambda) const {
  HPolyhedron out = *this;
  for (auto& x : out.b_) x *= lambda;
  return out;
}

std::size_t VPolyhedron::dimension() const {
  if (!vertices.empty()) return vertices[0].size();
  if (!rays.empty()) return rays[0].size();
  return 0;
}

void VPolyhedron::validate() const {
  const std::size_t n = dimension();
  std::set<Vector, decltype([](const Vector& a, const Vector& b) { return lex_less(a, b); })> seen;
  for (const auto& v : vertices) {
    if (v.size() != n) throw InputError("VPolyhedron: ragged vertex list");
    if (!seen.insert(v).second) throw InputError("VPolyhedron: duplicate vertex " + to_string(v));
  }
  for (const auto& r : rays) {
    if (r.size() != n) throw InputError("VPolyhedron: ragged ray list");
    if (is_zero(r)) throw InputError("VPolyhedron: zero ray");
  }
}

bool is_valid_face_set(const FaceIndexSet& s, std::size_t universe) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= universe) return false;
    if (i && s[i - 1] >= s[i]) return false;
  }
  return true;
}

IncidenceMatrix incidence(const HPolyhedron& p, const VPolyhedron& v) {
  if (v.dimension() != p.dimension() && !(v.vertices.empty() && v.rays.empty()))
    throw InputError("incidence: dimension mismatch");
  const std::size_t k = v.vertices.size();
  IncidenceMatrix inc(p.rows(), std::vector<bool>(k + v.rays.size(), false));
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) inc[i][j] = dot(p.row(i), v.vertices[j]) == p.rhs(i);
    for (std::size_t j = 0; j < v.rays.size(); ++j) inc[i][k + j] = sgn(dot(p.row(i), v.rays[j])) == 0;
  }
  return inc;
}

AffineHull affine_hull(const std::vector<Vector>& points) {
  if (points.empty()) throw InputError("affine_hull: empty point set");
  AffineHull hull;
  hull.origin = points[0];
  Matrix diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(subtract(points[i], points[0]));
  for (auto i : independent_rows(diffs)) hull.basis.push_back(diffs[i]);
  hull.dimension = hull.basis.size();
  return hull;
}

Matrix hull_left_inverse(const AffineHull& hull) {
  const std::size_t n = hull.origin.size();
  const std::size_t d = hull.dimension;
  Matrix c = zero_matrix(d, n);
  if (d == 0) return c;
  // d independent coordinates of the basis give an invertible d x d block.
  const Matrix bt = transpose(hull.basis);
  const auto coords = independent_rows(bt);
  Matrix square;
  for (auto j : coords) square.push_back(bt[j]);
  const auto inv = inverse(square);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s) c[r][coords[s]] = (*inv)[r][s];
  return c;
}

std::vector<std::pair<Vector, Rational>> hull_equations(const AffineHull& hull) {
  const std::size_t n = hull.origin.size();
  std::vector<std::pair<Vector, Rational>> out;
  for (auto& e : nullspace(hull.basis, n)) {
    Rational rhs = dot(e, hull.origin);
    out.emplace_back(std::move(e), std::move(rhs));
  }
  return out;
}

std::vector<Vector> hull_coordinates(const AffineHull& hull, const std::vector<Vector>& points) {
  const Matrix c = hull_left_inverse(hull);
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    const Vector diff = subtract(p, hull.origin);
    Vector z = multiply(c, diff);
    Vector back = zero_vector(diff.size());
    for (std::size_t k = 0; k < z.size(); ++k) back = add(back, scale(hull.basis[k], z[k]));
    if (back != diff) throw InputError("hull_coordinates: point outside the affine hull");
    out.push_back(std::move(z));
  }
  return out;
}

NormalizedRow normalize_row(const Vector& a, const Rational& b) {
  Vector full = a;
  full.push_back(b);
  IntVector z = primitive_integer(full);
  NormalizedRow r;
  r.b = z.back();
  z.pop_back();
  r.a = std::move(z);
  return r;
}

}  // namespace sympoly
