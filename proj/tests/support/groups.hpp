#pragma once

// Small permutation groups and a closure oracle used across test suites.

#include "sympoly/perm_group.hpp"

#include <random>
#include <set>

namespace sympoly::testing {

/// Hyperoctahedral group acting on cube vertex indices in binary order
/// (bit i of the index set means coordinate i is -1).
inline std::vector<Permutation> cube_vertex_generators(std::size_t n) {
  const std::size_t m = std::size_t{1} << n;
  std::vector<Permutation> gens;
  std::vector<Point> flip(m);
  for (std::size_t v = 0; v < m; ++v) flip[v] = static_cast<Point>(v ^ 1u);
  gens.emplace_back(flip);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<Point> swap(m);
    for (std::size_t v = 0; v < m; ++v) {
      const std::size_t a = v >> i & 1, b = v >> (i + 1) & 1;
      std::size_t w = v & ~((std::size_t{3}) << i);
      w |= b << i | a << (i + 1);
      swap[v] = static_cast<Point>(w);
    }
    gens.emplace_back(swap);
  }
  return gens;
}

/// Symmetric group on `degree` points via a transposition and a long cycle.
inline std::vector<Permutation> symmetric_generators(std::size_t degree) {
  std::vector<Permutation> gens;
  if (degree < 2) return gens;
  std::vector<Point> t(degree), c(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    t[i] = static_cast<Point>(i);
    c[i] = static_cast<Point>((i + 1) % degree);
  }
  std::swap(t[0], t[1]);
  gens.emplace_back(t);
  gens.emplace_back(c);
  return gens;
}

inline Permutation random_permutation(std::mt19937& rng, std::size_t degree) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(images);
}

/// Every element of <gens>, by closure under right multiplication.
inline std::set<Permutation> brute_force_closure(const std::vector<Permutation>& gens, std::size_t degree) {
  std::set<Permutation> seen{Permutation(degree)};
  std::vector<Permutation> queue{Permutation(degree)};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : gens) {
      Permutation h = queue[k] * g;
      if (seen.insert(h).second) queue.push_back(h);
    }
  return seen;
}

}  // namespace sympoly::testing
