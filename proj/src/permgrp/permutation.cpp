#include "sympoly/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace sympoly {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) throw InputError("Permutation: images do not form a bijection");
    seen[p] = true;
  }
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = images_[rhs.images_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

FaceIndexSet Permutation::apply(const FaceIndexSet& s) const {
  FaceIndexSet out;
  out.reserve(s.size());
  for (auto i : s) out.push_back(images_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
      x = images_[x];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::optional<Permutation> Permutation::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') return std::nullopt;
    ++i;
    std::vector<std::size_t> cycle;
    for (;;) {
      skip_space();
      if (i >= text.size()) return std::nullopt;
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t value = 0;
      std::size_t digits = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        ++i;
        ++digits;
      }
      if (digits == 0 || value == 0 || value > degree) return std::nullopt;
      if (used[value - 1]) return std::nullopt;
      used[value - 1] = true;
      cycle.push_back(value - 1);
      if (i < text.size() && text[i] == ',') ++i;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      images[cycle[k]] = static_cast<Point>(cycle[(k + 1) % cycle.size()]);
    skip_space();
  }
  return Permutation(std::move(images));
}

}  // namespace sympoly
