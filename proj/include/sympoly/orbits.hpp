#pragma once

#include "sympoly/perm_group.hpp"

#include <optional>

namespace sympoly {

/// Orbit of an index set under the set-wise action.
struct Orbit {
  FaceIndexSet representative;  // lexicographically least element of the orbit
  Integer size;
  /// Present when the orbit was expanded within budget.
  std::optional<std::vector<FaceIndexSet>> elements;
  /// transporters[i] maps the input set onto elements[i] (when requested).
  std::optional<std::vector<Permutation>> transporters;
};

inline constexpr std::size_t kDefaultOrbitBudget = 100000;

/// Expands the orbit of `s` if it has at most `budget` elements; otherwise
/// only the representative and the exact size (|G| / |Stab(s)|) are kept.
Orbit orbit_of_set(const PermutationGroup& g, const FaceIndexSet& s,
                   std::size_t budget = kDefaultOrbitBudget, bool with_transporters = false);

/// Some g with g(s) == t, found by a backtrack over a stabilizer chain whose
/// base starts with s.  nullopt when s and t lie in different orbits.
std::optional<Permutation> is_equivalent(const PermutationGroup& g, const FaceIndexSet& s,
                                         const FaceIndexSet& t);

/// {g : g(s) == s}; the returned chain has s (sorted) as its base prefix.
PermutationGroup set_stabilizer(const PermutationGroup& g, const FaceIndexSet& s);

/// Lexicographically least image of index sets, using a chain whose base
/// lists every point in increasing order.  Build once, reuse for many sets.
class SetCanonicalizer {
 public:
  explicit SetCanonicalizer(const PermutationGroup& g);
  FaceIndexSet canonical(const FaceIndexSet& s) const;
  const PermutationGroup& group() const { return chain_; }

 private:
  PermutationGroup chain_;
};

FaceIndexSet canonical_representative(const PermutationGroup& g, const FaceIndexSet& s);

}  // namespace sympoly
