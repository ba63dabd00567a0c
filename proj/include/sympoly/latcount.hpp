#pragma once

#include "sympoly/symilp.hpp"

#include <functional>

namespace sympoly {

/// p(lambda) = components[lambda mod period](lambda); coefficients are listed
/// constant term first.
struct QuasiPolynomial {
  std::size_t period = 1;
  std::size_t degree = 0;
  std::vector<std::vector<Rational>> components;

  Rational operator()(const Integer& lambda) const;
};

/// Number of integral points of a bounded polyhedron.  Throws InputError for
/// unbounded input.
Integer count_lattice_points(const HPolyhedron& p);

/// Counts integral points of the dilates lambda P for many lambda.  The affine
/// hull is parametrized once by a lattice basis and the projections onto
/// coordinate prefixes are computed once, then scaled.
class DilateCounter {
 public:
  explicit DilateCounter(const HPolyhedron& p);

  bool empty() const { return empty_; }
  std::size_t dimension() const { return d_; }
  Integer count(const Integer& lambda) const;
  /// Calls f for every integral point of lambda P in lexicographic order of
  /// lattice coordinates.  With `first` set, only points whose first lattice
  /// coordinate equals it are visited.
  void for_each(const Integer& lambda, const std::function<void(const IntVector&)>& f,
                const std::optional<Integer>& first = std::nullopt) const;
  /// Range of the first lattice coordinate over lambda P (nullopt when there
  /// are no integral points or the lattice dimension is 0).
  std::optional<std::pair<Integer, Integer>> first_range(const Integer& lambda) const;

 private:
  struct Level {
    Matrix a;  // rows over y_0..y_level
    Vector b;
  };
  bool empty_ = false;
  std::size_t n_ = 0, d_ = 0;
  Vector origin_;               // x = lambda * origin + basis * y
  std::vector<IntVector> basis_;  // n-vectors
  Matrix hermite_inverse_;      // integrality test for the equality part
  Vector equality_rhs_;
  std::vector<Level> levels_;

  bool lattice_nonempty(const Integer& lambda) const;
  template <class Leaf>
  void walk(const Integer& lambda, std::vector<Integer>& y, std::size_t level, Leaf&& leaf,
            const std::optional<Integer>& first = std::nullopt) const;
  std::optional<std::pair<Integer, Integer>> bounds(const Integer& lambda, const std::vector<Integer>& y,
                                                    std::size_t level) const;
};

/// Ehrhart quasi-polynomial with period the lcm of the vertex denominators.
/// Throws InputError when that period exceeds `period_bound`, and
/// VerificationError if an extra dilate per residue class disagrees.
QuasiPolynomial ehrhart(const HPolyhedron& p, std::size_t period_bound = 64);

/// Volume relative to the lattice of the affine hull, from a triangulation
/// fanned out from an interior point.  seed 0 uses the vertex barycenter as
/// apex; any other seed picks a random strictly positive vertex combination.
Rational volume(const HPolyhedron& p, unsigned seed = 0);

struct FiberSlice {
  IntVector sums;        // integral block sums, identifies the fiber
  Vector anchor;         // barycenter of the fiber, a point of P on the invariant subspace
  Integer orbit_size;    // size of the anchor orbit under the induced action
  Matrix basis;          // rational basis of the fiber direction space
  HPolyhedron polytope;  // P intersected with the fiber, in coordinates x = anchor + basis^T w
  Integer points;        // integral points of P in this fiber
};

struct SliceDecomposition {
  HPolyhedron invariant_slice;  // P on the invariant subspace, in block-mean coordinates
  std::vector<FiberSlice> fibers;
};

/// Decomposes a block-invariant polytope into fibers over the barycenter
/// lattice.  Points of a fiber are counted by enumerating block-sorted points
/// and weighting each by its orbit size.
SliceDecomposition slice_decomposition(const HPolyhedron& p, const Blocks& blocks, std::size_t jobs = 1);

/// Sum over fiber orbits of orbit size times points per fiber.
Integer count_with_symmetry(const HPolyhedron& p, const Blocks& blocks, std::size_t jobs = 1);

}  // namespace sympoly
