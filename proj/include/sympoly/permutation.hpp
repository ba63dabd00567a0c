#pragma once

#include "sympoly/polyhedron.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sympoly {

using Point = std::uint32_t;

/// Bijection of {0, ..., N-1}.  Composition `a * b` applies b first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);  // identity
  /// Throws InputError if `images` is not a bijection.
  explicit Permutation(std::vector<Point> images);

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  Point operator()(std::size_t i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;

  /// Sorted image of an index set.
  FaceIndexSet apply(const FaceIndexSet& s) const;

  /// Cycle notation over 1-based points, e.g. "(1 2)(3 4)"; identity is "()".
  std::string to_cycles() const;
  /// Parses cycle notation (1-based) into a permutation of the given degree.
  static std::optional<Permutation> from_cycles(std::string_view text, std::size_t degree);

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

}  // namespace sympoly
