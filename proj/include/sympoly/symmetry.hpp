#pragma once

#include "sympoly/perm_group.hpp"
#include "sympoly/polyhedron.hpp"

namespace sympoly {

/// Edge-colored complete graph on k nodes whose edge colors are the values
/// of the invariant bilinear form y_i^T Q^-1 y_j.
struct SymmetryGraph {
  std::size_t k = 0;
  Matrix gram;
  /// color[i * k + j]; diagonal and off-diagonal colors use disjoint ids.
  std::vector<std::uint32_t> color;
  std::uint32_t num_colors = 0;

  std::uint32_t at(std::size_t i, std::size_t j) const { return color[i * k + j]; }
  /// Number of distinct gram values (diagonal included).
  std::size_t distinct_values() const;
};

/// Graph of a point set: points are centered at their barycenter and
/// written in a basis of their span before Q is formed.
SymmetryGraph build_symmetry_graph(const VPolyhedron& v);

/// Graph of a spanning vector family (no centering).  `node_class` gives
/// every node an extra color that automorphisms must preserve; pass an
/// empty vector for none.
SymmetryGraph build_vector_graph(const std::vector<Vector>& vectors, const std::vector<std::uint32_t>& node_class = {});

/// Generators of the automorphism group of the colored graph, found by
/// equitable refinement and individualization.  Deterministic.
std::vector<Permutation> graph_automorphisms(const SymmetryGraph& graph);

struct AffineMap {
  Matrix linear;
  Vector translation;

  Vector operator()(const Vector& x) const;
};

struct AffineSymmetryGroup {
  PermutationGroup group;                // acts on vertex indices
  std::vector<AffineMap> realizations;   // one per group.generators() entry
  std::size_t discarded = 0;             // graph automorphisms without an affine realization
};

/// Affine symmetries of a bounded vertex set.  Every generator is realized
/// by an exact affine map checked on all vertices.
AffineSymmetryGroup affine_symmetry_group(const VPolyhedron& v);

/// Affine map sending points[i] to points[perm[i]] for all i, if one exists.
std::optional<AffineMap> realize_permutation(const std::vector<Vector>& points, const Permutation& perm);

/// Symmetries of an irredundant, bounded, full-dimensional inequality
/// system acting on its rows.  Rows are compared after scaling to primitive
/// integer form, so only symmetries that respect that scaling are found.
PermutationGroup restricted_symmetries_H(const HPolyhedron& p);

/// Whether some linear map fixing e0 sends each homogenized primitive row
/// (b_i, -a_i) to row perm[i]; rows must span.
bool is_row_symmetry(const HPolyhedron& p, const Permutation& perm);

}  // namespace sympoly
