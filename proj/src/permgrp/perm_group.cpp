#include "sympoly/perm_group.hpp"

#include <algorithm>
#include <random>

namespace sympoly {
namespace {

constexpr std::uint32_t kRandomSeed = 0x5eed5eedu;
constexpr int kRandomStreak = 16;

std::size_t first_moved_point(const Permutation& g) {
  for (std::size_t i = 0; i < g.degree(); ++i)
    if (g[i] != i) return i;
  return g.degree();
}

}  // namespace

PermutationGroup::PermutationGroup(std::size_t degree) : degree_(degree) {}

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                                   std::span<const Point> base_prefix,
                                   const std::optional<Integer>& known_order)
    : degree_(degree) {
  for (auto& g : generators) {
    if (g.degree() != degree) throw InputError("PermutationGroup: generator degree mismatch");
    if (!g.is_identity()) generators_.push_back(std::move(g));
  }
  for (Point p : base_prefix) {
    if (p >= degree) throw InputError("PermutationGroup: base point out of range");
    add_level(p);
  }
  for (const auto& g : generators_) {
    auto [r, level] = sift(g);
    if (!r.is_identity()) insert(r, level);
  }
  if (generators_.empty()) return;
  random_phase(known_order);
  if (known_order && order() == *known_order) return;
  deterministic_closure();
  if (known_order && order() != *known_order)
    throw VerificationError("PermutationGroup: chain order disagrees with the known order");
}

void PermutationGroup::add_level(Point p) {
  Level level;
  level.point = p;
  level.position.assign(degree_, -1);
  level.position[p] = 0;
  level.orbit.push_back(p);
  level.transversal.emplace_back(degree_);
  level.inverse.emplace_back(degree_);
  levels_.push_back(std::move(level));
}

void PermutationGroup::insert(const Permutation& r, std::size_t level) {
  if (level == levels_.size()) {
    const std::size_t p = first_moved_point(r);
    add_level(static_cast<Point>(p));
  }
  strong_.push_back(r);
  for (std::size_t l = 0; l <= level; ++l) {
    levels_[l].gens.push_back(strong_.size() - 1);
    extend_orbit(l);
  }
}

void PermutationGroup::extend_orbit(std::size_t l) {
  Level& level = levels_[l];
  for (std::size_t k = 0; k < level.orbit.size(); ++k) {
    const Point x = level.orbit[k];
    for (std::size_t gi : level.gens) {
      const Permutation& s = strong_[gi];
      const Point y = s[x];
      if (level.position[y] >= 0) continue;
      level.position[y] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(y);
      Permutation u = s * level.transversal[k];
      level.inverse.push_back(u.inverse());
      level.transversal.push_back(std::move(u));
    }
  }
}

std::pair<Permutation, std::size_t> PermutationGroup::sift(Permutation g, std::size_t from_level) const {
  for (std::size_t l = from_level; l < levels_.size(); ++l) {
    const Point x = g[levels_[l].point];
    const std::int32_t pos = levels_[l].position[x];
    if (pos < 0) return {std::move(g), l};
    g = levels_[l].inverse[static_cast<std::size_t>(pos)] * g;
  }
  return {std::move(g), levels_.size()};
}

void PermutationGroup::random_phase(const std::optional<Integer>& known_order) {
  // Product replacement over a padded copy of the generators.
  std::vector<Permutation> state = generators_;
  while (state.size() < 10) state.push_back(state[state.size() % generators_.size()]);
  Permutation acc(degree_);
  std::mt19937 rng(kRandomSeed);
  std::uniform_int_distribution<std::size_t> pick(0, state.size() - 1);
  auto next = [&] {
    std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    while (b == a) b = pick(rng);
    state[a] = (rng() & 1) ? state[a] * state[b] : state[a] * state[b].inverse();
    acc = acc * state[a];
    return acc;
  };
  for (int i = 0; i < 40; ++i) next();
  int streak = 0;
  while (streak < kRandomStreak) {
    if (known_order && order() == *known_order) return;
    auto [r, level] = sift(next());
    if (r.is_identity()) {
      ++streak;
    } else {
      insert(r, level);
      streak = 0;
    }
  }
}

void PermutationGroup::deterministic_closure() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = levels_.size(); i-- > 0;) {
      // Orbit of level i cannot grow here: every inserted residue already
      // lies in the group generated at level i.
      for (std::size_t xi = 0; xi < levels_[i].orbit.size(); ++xi) {
        for (std::size_t si = 0; si < levels_[i].gens.size(); ++si) {
          if (xi < levels_[i].done_orbit && si < levels_[i].done_gens) continue;
          const Level& level = levels_[i];
          const Permutation& s = strong_[level.gens[si]];
          const Point y = s[level.orbit[xi]];
          const auto ypos = static_cast<std::size_t>(level.position[y]);
          Permutation h = level.inverse[ypos] * s * level.transversal[xi];
          auto [r, stop] = sift(std::move(h), i + 1);
          if (!r.is_identity()) {
            insert(r, stop);
            changed = true;
          }
        }
      }
      levels_[i].done_orbit = levels_[i].orbit.size();
      levels_[i].done_gens = levels_[i].gens.size();
    }
  }
}

std::vector<Point> PermutationGroup::base() const {
  std::vector<Point> out;
  for (const auto& l : levels_) out.push_back(l.point);
  return out;
}

Integer PermutationGroup::order() const {
  Integer n = 1;
  for (const auto& l : levels_) n *= static_cast<unsigned long>(l.orbit.size());
  return n;
}

bool PermutationGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  return sift(g).first.is_identity();
}

const Permutation& PermutationGroup::transversal(std::size_t level, Point p) const {
  const std::int32_t pos = levels_[level].position[p];
  if (pos < 0) throw InputError("PermutationGroup::transversal: point not in basic orbit");
  return levels_[level].transversal[static_cast<std::size_t>(pos)];
}

const Permutation& PermutationGroup::transversal_inverse(std::size_t level, Point p) const {
  const std::int32_t pos = levels_[level].position[p];
  if (pos < 0) throw InputError("PermutationGroup::transversal_inverse: point not in basic orbit");
  return levels_[level].inverse[static_cast<std::size_t>(pos)];
}

std::vector<Permutation> PermutationGroup::level_generators(std::size_t level) const {
  if (level >= levels_.size()) return {};
  std::vector<Permutation> out;
  for (auto gi : levels_[level].gens) out.push_back(strong_[gi]);
  return out;
}

PermutationGroup PermutationGroup::with_base_prefix(std::span<const Point> prefix) const {
  std::vector<Permutation> gens = strong_.empty() ? generators_ : strong_;
  PermutationGroup g(degree_, std::move(gens), prefix, order());
  g.generators_ = generators_;
  return g;
}

std::vector<Point> orbit_under(const std::vector<Permutation>& gens, Point p, std::size_t degree) {
  std::vector<bool> seen(degree, false);
  std::vector<Point> out{p};
  seen[p] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& g : gens) {
      const Point y = g[out[k]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> PermutationGroup::orbit(Point p) const { return orbit_under(generators_, p, degree_); }

std::vector<Permutation> PermutationGroup::elements(std::size_t limit) const {
  if (order() > static_cast<unsigned long>(limit)) throw InputError("PermutationGroup::elements: group too large");
  std::vector<Permutation> out{Permutation(degree_)};
  for (std::size_t l = levels_.size(); l-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * levels_[l].transversal.size());
    for (const auto& u : levels_[l].transversal)
      for (const auto& g : out) next.push_back(u * g);
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sympoly
