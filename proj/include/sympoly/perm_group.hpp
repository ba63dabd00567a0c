#pragma once

#include "sympoly/permutation.hpp"

#include <optional>
#include <span>
#include <utility>

namespace sympoly {

/// Permutation group stored as a base and strong generating set.
///
/// The stabilizer chain is computed once at construction (randomized
/// Schreier-Sims with a fixed seed, followed by a deterministic pass that
/// sifts every Schreier generator) and is immutable afterwards, so a group
/// may be shared freely between threads.
class PermutationGroup {
 public:
  /// Trivial group of the given degree.
  explicit PermutationGroup(std::size_t degree = 0);

  /// `base_prefix` forces the first base points (in order).  When the order
  /// is already known, passing it lets construction stop as soon as the
  /// chain reaches that order.
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                   std::span<const Point> base_prefix = {},
                   const std::optional<Integer>& known_order = std::nullopt);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& strong_generators() const { return strong_; }
  std::vector<Point> base() const;
  std::size_t levels() const { return levels_.size(); }

  Integer order() const;
  bool is_trivial() const { return order() == 1; }
  bool contains(const Permutation& g) const;

  const std::vector<Point>& basic_orbit(std::size_t level) const { return levels_[level].orbit; }
  bool in_basic_orbit(std::size_t level, Point p) const { return levels_[level].position[p] >= 0; }
  /// u with u(base[level]) == p; p must lie in the basic orbit.
  const Permutation& transversal(std::size_t level, Point p) const;
  const Permutation& transversal_inverse(std::size_t level, Point p) const;
  /// Strong generators fixing the first `level` base points.
  std::vector<Permutation> level_generators(std::size_t level) const;

  /// Residue of sifting g from `from_level` and the level where sifting stopped.
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from_level = 0) const;

  /// Same group with a new chain whose base starts with `prefix`.
  PermutationGroup with_base_prefix(std::span<const Point> prefix) const;

  /// Orbit of a point, sorted ascending.
  std::vector<Point> orbit(Point p) const;

  /// All elements; throws InputError if the order exceeds `limit`.
  std::vector<Permutation> elements(std::size_t limit = 100000) const;

 private:
  struct Level {
    Point point = 0;
    std::vector<std::size_t> gens;       // indices into strong_
    std::vector<Point> orbit;
    std::vector<std::int32_t> position;  // point -> index in orbit, -1 if absent
    std::vector<Permutation> transversal;
    std::vector<Permutation> inverse;
    std::size_t done_orbit = 0;          // Schreier generators already sifted:
    std::size_t done_gens = 0;           // orbit[< done_orbit] x gens[< done_gens]
  };

  void add_level(Point p);
  void insert(const Permutation& r, std::size_t level);
  void extend_orbit(std::size_t level);
  void random_phase(const std::optional<Integer>& known_order);
  void deterministic_closure();

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> strong_;
  std::vector<Level> levels_;
};

/// Orbit of a point under an explicit generator list (sorted).
std::vector<Point> orbit_under(const std::vector<Permutation>& gens, Point p, std::size_t degree);

}  // namespace sympoly
