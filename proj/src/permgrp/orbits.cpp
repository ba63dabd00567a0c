#include "sympoly/orbits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace sympoly {
namespace {

std::vector<Point> as_points(const FaceIndexSet& s) {
  return std::vector<Point>(s.begin(), s.end());
}

std::vector<bool> indicator(const FaceIndexSet& s, std::size_t n) {
  std::vector<bool> in(n, false);
  for (auto i : s) in[i] = true;
  return in;
}

void check_set(const PermutationGroup& g, const FaceIndexSet& s) {
  if (!is_valid_face_set(s, g.degree())) throw InputError("index set is unsorted or out of range");
}

}  // namespace

Orbit orbit_of_set(const PermutationGroup& g, const FaceIndexSet& s, std::size_t budget,
                   bool with_transporters) {
  check_set(g, s);
  std::map<FaceIndexSet, std::size_t> seen;
  std::vector<FaceIndexSet> elements{s};
  std::vector<Permutation> transporters{Permutation(g.degree())};
  seen.emplace(s, 0);
  bool truncated = false;
  for (std::size_t k = 0; k < elements.size() && !truncated; ++k) {
    for (const auto& gen : g.generators()) {
      FaceIndexSet img = gen.apply(elements[k]);
      if (seen.count(img)) continue;
      if (elements.size() >= budget) {
        truncated = true;
        break;
      }
      seen.emplace(img, elements.size());
      elements.push_back(std::move(img));
      if (with_transporters) transporters.push_back(gen * transporters[k]);
    }
  }

  Orbit orbit;
  if (truncated) {
    orbit.size = g.order() / set_stabilizer(g, s).order();
    orbit.representative = canonical_representative(g, s);
    return orbit;
  }
  orbit.size = static_cast<unsigned long>(elements.size());
  std::vector<std::size_t> order(elements.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return elements[a] < elements[b]; });
  std::vector<FaceIndexSet> sorted;
  std::vector<Permutation> sorted_transporters;
  for (auto i : order) {
    sorted.push_back(elements[i]);
    if (with_transporters) sorted_transporters.push_back(transporters[i]);
  }
  orbit.representative = sorted.front();
  orbit.elements = std::move(sorted);
  if (with_transporters) orbit.transporters = std::move(sorted_transporters);
  return orbit;
}

std::optional<Permutation> is_equivalent(const PermutationGroup& g, const FaceIndexSet& s,
                                         const FaceIndexSet& t) {
  check_set(g, s);
  check_set(g, t);
  if (s.size() != t.size()) return std::nullopt;
  if (s == t) return Permutation(g.degree());

  // Cheap necessary condition: point orbits must be hit equally often.
  {
    std::vector<std::int64_t> orbit_id(g.degree(), -1);
    std::int64_t next = 0;
    for (Point p = 0; p < g.degree(); ++p) {
      if (orbit_id[p] >= 0) continue;
      for (Point q : g.orbit(p)) orbit_id[q] = next;
      ++next;
    }
    std::vector<std::int64_t> a, b;
    for (auto i : s) a.push_back(orbit_id[i]);
    for (auto i : t) b.push_back(orbit_id[i]);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  const auto prefix = as_points(s);
  const PermutationGroup chain = g.with_base_prefix(prefix);
  const auto in_t = indicator(t, g.degree());

  // Level l fixes the image of base point s[l]; an element is
  // p * u_y * ..., so the image of s[l] is p(y).
  auto search = [&](auto&& self, std::size_t level, const Permutation& p) -> std::optional<Permutation> {
    if (level == s.size()) return p;
    for (Point y : chain.basic_orbit(level)) {
      if (!in_t[p[y]]) continue;
      if (auto found = self(self, level + 1, p * chain.transversal(level, y))) return found;
    }
    return std::nullopt;
  };
  auto witness = search(search, 0, Permutation(g.degree()));
  if (witness && witness->apply(s) != t) throw VerificationError("is_equivalent: witness does not map S to T");
  return witness;
}

PermutationGroup set_stabilizer(const PermutationGroup& g, const FaceIndexSet& s) {
  check_set(g, s);
  const auto prefix = as_points(s);
  PermutationGroup chain = g.with_base_prefix(prefix);
  if (s.empty() || s.size() == g.degree() || chain.is_trivial()) return chain;

  const auto in_s = indicator(s, g.degree());
  std::vector<Permutation> found = chain.level_generators(s.size());
  PermutationGroup stab(g.degree(), found, prefix);

  auto search = [&](auto&& self, std::size_t level, const Permutation& p, bool identity_path) -> void {
    if (level == s.size()) {
      if (!stab.contains(p)) {
        found.push_back(p);
        stab = PermutationGroup(g.degree(), found, prefix);
      }
      return;
    }
    std::vector<Point> explored;
    for (Point y : chain.basic_orbit(level)) {
      if (!in_s[p[y]]) continue;
      if (identity_path && !explored.empty()) {
        // y in the orbit of an explored image under the part of the known
        // stabilizer fixing earlier base points: the subtree adds nothing.
        const auto orb = orbit_under(stab.level_generators(level), y, g.degree());
        const bool covered = std::any_of(explored.begin(), explored.end(), [&](Point e) {
          return std::binary_search(orb.begin(), orb.end(), e);
        });
        if (covered) continue;
      }
      explored.push_back(y);
      self(self, level + 1, p * chain.transversal(level, y), identity_path && y == prefix[level]);
    }
  };
  search(search, 0, Permutation(g.degree()), true);
  return stab;
}

SetCanonicalizer::SetCanonicalizer(const PermutationGroup& g) {
  std::vector<Point> all(g.degree());
  std::iota(all.begin(), all.end(), Point{0});
  chain_ = g.with_base_prefix(all);
}

FaceIndexSet SetCanonicalizer::canonical(const FaceIndexSet& s) const {
  check_set(chain_, s);
  const std::size_t n = chain_.degree();
  if (s.empty() || s.size() == n || chain_.is_trivial()) return s;

  // Candidates are images k(s) for k ranging over coset representatives of
  // the stabilizer of {0..l-1}; at level l we keep those that contain l if
  // any can.  Images are deduplicated since equal images share a future.
  std::vector<std::vector<bool>> cands{indicator(s, n)};
  for (std::size_t l = 0; l < chain_.levels(); ++l) {
    const auto& orbit = chain_.basic_orbit(l);
    if (orbit.size() > 1) {
      bool any_in = false;
      for (const auto& c : cands)
        any_in = any_in || std::any_of(orbit.begin(), orbit.end(), [&](Point y) { return c[y]; });
      std::set<std::vector<bool>> next;
      for (const auto& c : cands) {
        for (Point y : orbit) {
          if (any_in && !c[y]) continue;
          const Permutation& u = chain_.transversal_inverse(l, y);
          std::vector<bool> img(n, false);
          for (std::size_t p = 0; p < n; ++p)
            if (c[p]) img[u[p]] = true;
          next.insert(std::move(img));
        }
      }
      cands.assign(next.begin(), next.end());
    }
    // Point l is settled now: later levels fix it.
    if (std::any_of(cands.begin(), cands.end(), [&](const auto& c) { return c[l]; }))
      std::erase_if(cands, [&](const auto& c) { return !c[l]; });
  }
  FaceIndexSet out;
  for (std::size_t p = 0; p < n; ++p)
    if (cands.front()[p]) out.push_back(p);
  return out;
}

FaceIndexSet canonical_representative(const PermutationGroup& g, const FaceIndexSet& s) {
  return SetCanonicalizer(g).canonical(s);
}

}  // namespace sympoly
