#pragma once

#include "sympoly/rational.hpp"

#include <cstddef>
#include <vector>

namespace sympoly {

/// {x in R^n : A x <= b}.
class HPolyhedron {
 public:
  HPolyhedron() = default;
  HPolyhedron(Matrix a, Vector b);
  /// Empty system (the whole space) in dimension n.
  explicit HPolyhedron(std::size_t n);

  std::size_t dimension() const { return n_; }
  std::size_t rows() const { return a_.size(); }
  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  const Vector& row(std::size_t i) const { return a_[i]; }
  const Rational& rhs(std::size_t i) const { return b_[i]; }

  /// True when some row reads 0 <= b_i with b_i < 0.
  bool trivially_empty() const;
  bool contains(const Vector& x) const;
  Rational slack(std::size_t i, const Vector& x) const { return b_[i] - dot(a_[i], x); }

  void add_row(Vector a, Rational b);
  HPolyhedron dilate(const Rational& lambda) const;

  friend bool operator==(const HPolyhedron&, const HPolyhedron&) = default;

 private:
  Matrix a_;
  Vector b_;
  std::size_t n_ = 0;
};

/// Convex hull of `vertices` plus the cone of `rays`.
struct VPolyhedron {
  std::vector<Vector> vertices;
  std::vector<Vector> rays;

  std::size_t dimension() const;
  bool bounded() const { return rays.empty(); }
  /// Throws InputError on malformed input such as duplicate vertices.
  void validate() const;

  friend bool operator==(const VPolyhedron&, const VPolyhedron&) = default;
};

/// Sorted, duplicate-free set of indices into an input list.  Stored 0-based;
/// every text interface prints them 1-based.
using FaceIndexSet = std::vector<std::size_t>;

bool is_valid_face_set(const FaceIndexSet& s, std::size_t universe);

/// incidence[i][j]: generator j (vertices first, then rays) is tight on row i.
using IncidenceMatrix = std::vector<std::vector<bool>>;
IncidenceMatrix incidence(const HPolyhedron& p, const VPolyhedron& v);

struct AffineHull {
  std::size_t dimension = 0;
  Vector origin;  // first input point
  Matrix basis;   // rows span the direction space
};

/// Affine hull of a nonempty point set.
AffineHull affine_hull(const std::vector<Vector>& points);

/// Coordinates of `points` in the frame (hull.origin, hull.basis); throws
/// InputError for a point off the hull.
std::vector<Vector> hull_coordinates(const AffineHull& hull, const std::vector<Vector>& points);

/// C with C * basis^T = I, so z = C (x - origin) on the hull.
Matrix hull_left_inverse(const AffineHull& hull);

/// Equations e.x = f whose common solutions are exactly the affine hull.
std::vector<std::pair<Vector, Rational>> hull_equations(const AffineHull& hull);

/// Normalizes an inequality a x <= b to primitive integer form
/// (scaled by a positive factor only).
struct NormalizedRow {
  IntVector a;
  Integer b;
  friend bool operator==(const NormalizedRow&, const NormalizedRow&) = default;
  friend bool operator<(const NormalizedRow& x, const NormalizedRow& y) {
    if (x.a != y.a) return lex_less(x.a, y.a);
    return x.b < y.b;
  }
};
NormalizedRow normalize_row(const Vector& a, const Rational& b);

}  // namespace sympoly
