#pragma once

#include "sympoly/polyhedron.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace sympoly {

// Text format for polyhedra, one file per representation:
//
//   * free comment lines start with an asterisk
//   H-representation                (or V-representation)
//   linearity 2 1 4                 optional: count, then 1-based row numbers
//   blocks: 2 3                     optional: block sizes of a block group
//   begin
//   4 3 rational                    rows, columns (n + 1), number type
//   1 -1 0                          H rows: b -a_1 ... -a_n, meaning b - a.x >= 0
//   ...                             V rows: 1 x_1 ... x_n (vertex) or 0 r_1 ... r_n (ray)
//   end
//   maximize                        optional, H files only
//   0 1 1                           constant term, then c_1 ... c_n
//
// Linearity rows of an H file are equations.  The writer emits exactly this
// layout, so writing a parsed file reproduces it whenever the input was
// already in canonical form.

enum class PolyKind { h, v };
enum class Sense { maximize, minimize };

struct Objective {
  Sense sense = Sense::maximize;
  Vector coefficients;  // constant term first
  friend bool operator==(const Objective&, const Objective&) = default;
};

struct PolyFile {
  std::vector<std::string> comments;  // text after the leading asterisk
  PolyKind kind = PolyKind::h;
  std::size_t columns = 1;
  std::vector<Vector> rows;
  std::vector<std::size_t> linearity;  // 0-based, sorted, unique
  std::optional<std::vector<std::size_t>> blocks;
  std::optional<Objective> objective;

  std::size_t dimension() const { return columns - 1; }
  friend bool operator==(const PolyFile&, const PolyFile&) = default;
};

/// Raised for malformed files; the message names the offending line.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

PolyFile parse_polyfile(std::string_view text);
PolyFile read_polyfile(const std::string& path);
std::string write_polyfile(const PolyFile& file);

/// Inequality system of an H file.  Each linearity row contributes a <= and a
/// >= row; `source` maps every produced row back to its file row.
struct FileSystem {
  HPolyhedron system;
  std::vector<std::size_t> source;
};
FileSystem to_hpolyhedron(const PolyFile& file);

/// Points and rays of a V file.  Linearity (lines) is rejected.
VPolyhedron to_vpolyhedron(const PolyFile& file);

PolyFile from_hpolyhedron(const HPolyhedron& p, const std::vector<std::size_t>& linearity = {});
PolyFile from_vpolyhedron(const VPolyhedron& v);

}  // namespace sympoly
