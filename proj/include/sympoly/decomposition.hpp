#pragma once

#include "sympoly/dd.hpp"
#include "sympoly/orbits.hpp"

#include <map>
#include <string>

namespace sympoly {

enum class Method { dd, adm, idm };

/// Recursion policy in the style of `--idm-adm-level L1 L2`: depth < L1
/// uses incidence decomposition, depth < L2 adjacency decomposition, and
/// anything deeper plain double description.  Depth 0 is the input itself.
struct Levels {
  std::size_t idm_below = 0;
  std::size_t adm_below = 1;

  Method at(std::size_t depth) const {
    if (depth < idm_below) return Method::idm;
    if (depth < adm_below) return Method::adm;
    return Method::dd;
  }
};

struct DecompositionOptions {
  Levels levels;
  std::size_t jobs = 1;
};

struct FacetOrbit {
  FaceIndexSet representative;  // lexicographically least member
  Integer size;
};

/// Facet orbits keyed by canonical representative, in discovery order.
class OrbitLedger {
 public:
  /// Index of the orbit and whether it was new.
  std::pair<std::size_t, bool> insert(const FaceIndexSet& key, const Integer& size);
  std::optional<std::size_t> find(const FaceIndexSet& key) const;
  const std::vector<FacetOrbit>& orbits() const { return orbits_; }
  std::size_t size() const { return orbits_.size(); }
  Integer total() const;

 private:
  std::map<FaceIndexSet, std::size_t> index_;
  std::vector<FacetOrbit> orbits_;
};

struct FacetOrbits {
  OrbitLedger ledger;
  /// Per orbit, sorted indices of orbits containing an adjacent facet.
  /// Filled by adjacency decomposition only.
  std::optional<std::vector<std::vector<std::size_t>>> neighbors;
};

/// Facet orbits of conv(points) under g, where g permutes point indices and
/// maps faces to faces.  Every point must be a vertex.  The top-level
/// method is options.levels.at(0).
FacetOrbits facet_orbits(const std::vector<Vector>& points, const PermutationGroup& g,
                         const DecompositionOptions& options = {});

/// Top level forced to adjacency decomposition: start from one facet, find
/// the neighbours of each new orbit representative across its ridges.
FacetOrbits adjacency_decomposition(const std::vector<Vector>& points, const PermutationGroup& g,
                                    const DecompositionOptions& options = {});

/// Top level forced to incidence decomposition: for each vertex orbit,
/// enumerate the facets through its representative.
FacetOrbits incidence_decomposition(const std::vector<Vector>& points, const PermutationGroup& g,
                                    const DecompositionOptions& options = {});

struct AdjacencyGraph {
  std::vector<FacetOrbit> nodes;                        // ledger order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i <= j, sorted, unique
};

AdjacencyGraph adjacency_graph(const std::vector<Vector>& points, const PermutationGroup& g,
                               const FacetOrbits& orbits, const DecompositionOptions& options = {});

/// Graphviz text: nodes o1.. in ledger order labelled with orbit sizes.
std::string to_dot(const AdjacencyGraph& graph);

/// Breadth-first distance between nodes u and v (0-based); nullopt when
/// unreachable.  Throws InputError for an unknown node.
std::optional<std::size_t> shortest_path(const AdjacencyGraph& graph, std::size_t u, std::size_t v);

/// Every member of every orbit (sorted).
std::vector<FaceIndexSet> expand_orbits(const OrbitLedger& ledger, const PermutationGroup& g);

// Conversions up to symmetry.  Results list one row/vertex per orbit in
// ledger order together with the orbits; `expand` replaces that with the
// full list.

struct SymmetricHResult {
  FacetOrbits orbits;
  HRepresentation h;   // incidence refers to vertex indices
};

/// Facets of a bounded V-polytope whose vertices are permuted by g (checked:
/// each generator must be realized by an affine map).
SymmetricHResult facets_up_to_symmetry(const VPolyhedron& v, const PermutationGroup& g,
                                       const DecompositionOptions& options = {}, bool expand = false);

struct SymmetricVResult {
  FacetOrbits orbits;  // keys are sets of row indices
  VRepresentation v;
};

/// Vertices of an irredundant, bounded H-polytope whose rows are permuted
/// by g (checked against the primitive-integer row form).  Works on the
/// polar point configuration, so vertex orbits appear as facet orbits there.
SymmetricVResult vertices_up_to_symmetry(const HPolyhedron& p, const PermutationGroup& g,
                                         const DecompositionOptions& options = {}, bool expand = false);

/// Polar points a_i / (b_i - a_i c) of the rows of an irredundant, bounded,
/// full-dimensional polytope around an interior point c.  Facets of their
/// convex hull correspond to vertices of P (same row indices).
std::vector<Vector> polar_points(const HPolyhedron& p);

}  // namespace sympoly
