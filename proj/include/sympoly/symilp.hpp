#pragma once

#include "sympoly/lp.hpp"
#include "sympoly/perm_group.hpp"

namespace sympoly {

struct LinearProgram {
  HPolyhedron p;
  Vector c;  // maximize c.x
};

/// Fixed space of a linear group together with the orthogonal projector onto it.
struct InvariantSubspace {
  Matrix basis;      // columns of B, stored as a list of n-vectors
  Matrix projector;  // n x n

  std::size_t dimension() const { return basis.size(); }
};

/// Matrix M with (M x)[perm[i]] = x[i].
Matrix permutation_matrix(const Permutation& perm);

/// Intersection of the kernels of g - id over the generators.  With no
/// generators this is the whole space R^n.
InvariantSubspace invariant_subspace(const std::vector<Matrix>& generators, std::size_t n);
InvariantSubspace invariant_subspace(const PermutationGroup& g);

/// Every generator maps the inequality system onto itself (rows compared in
/// primitive integer form) and leaves the objective unchanged: c.(g x) = c.x.
bool check_invariance(const LinearProgram& lp, const std::vector<Matrix>& generators);
bool check_invariance(const LinearProgram& lp, const PermutationGroup& g);

/// Solves max c.x over P intersected with the invariant subspace, written as
/// x = B y, and maps the optimum back.  For an invariant LP the optimal value
/// equals the one of the full problem.
LpResult solve_lp_reduced(const LinearProgram& lp, const InvariantSubspace& fixed);

/// Orbit of a vector under a group permuting coordinates, sorted.  Returns
/// nullopt when more than `budget` vectors would be produced.
std::optional<std::vector<Vector>> vector_orbit(const PermutationGroup& g, const Vector& z, std::size_t budget = 100000);

/// Average of the orbit of z.  Throws InputError when the orbit exceeds the budget.
Vector orbit_barycenter(const PermutationGroup& g, const Vector& z, std::size_t budget = 100000);

/// Direct product of symmetric groups acting on consecutive coordinate
/// blocks of the given sizes.
struct Blocks {
  std::vector<std::size_t> sizes;

  std::size_t dimension() const;
  std::size_t block_of(std::size_t coordinate) const;
  std::size_t start(std::size_t block) const;
  PermutationGroup group() const;
  /// Integer block sums of x.
  IntVector sums(const IntVector& x) const;
};

/// Block structure of g, if g is exactly the product of the symmetric
/// groups on its orbits and every orbit is a run of consecutive coordinates.
std::optional<Blocks> detect_blocks(const PermutationGroup& g);

/// Barycenters of integral points: per block j the common coordinate ranges
/// over (1/n_j) Z.  `anchor` is the barycenter for given block sums.
struct BarycenterLattice {
  Blocks blocks;
  std::vector<Vector> generators;  // (1/n_j) times the indicator of block j

  Vector anchor(const IntVector& sums) const;
};
BarycenterLattice fiber_barycenter_lattice(const Blocks& blocks);

struct CorePoint {
  IntVector z;
  Integer orbit_size;
};

/// The balanced integral point with the given block sums: within a block of
/// size n with sum s, (s mod n) entries equal ceil(s/n) followed by floor(s/n).
CorePoint canonical_core_point(const Blocks& blocks, const IntVector& sums);

enum class CoreStatus { core, not_core, unknown };

/// Whether conv(Gz) contains no integral point outside Gz.  `unknown` when the
/// orbit has more than `budget` elements.
CoreStatus is_core_point(const PermutationGroup& g, const IntVector& z, std::size_t budget = 5000);

enum class IlpStatus { feasible, infeasible, unbounded };

struct IlpResult {
  IlpStatus status = IlpStatus::infeasible;
  IntVector point;            // when feasible
  std::size_t fibers_tested = 0;
  std::optional<Rational> value;  // objective value when optimizing
};

/// Optional user bounds on the block sums, used when P projects to an
/// unbounded set.
struct SumBounds {
  IntVector lower, upper;
};

/// Integral feasibility of a polyhedron invariant under a block group.
/// Fibers (integral block sums) are tried in order of distance from the
/// projected LP relaxation point; each fiber is decided by its balanced point.
IlpResult symmetric_ilp_feasible(const HPolyhedron& p, const Blocks& blocks,
                                 const std::optional<SumBounds>& bounds = std::nullopt);

/// max c.x over integral points of P, with c constant on every block.
IlpResult symmetric_ilp_maximize(const HPolyhedron& p, const Vector& c, const Blocks& blocks,
                                 const std::optional<SumBounds>& bounds = std::nullopt);

}  // namespace sympoly
