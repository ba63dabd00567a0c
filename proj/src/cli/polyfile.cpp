#include "sympoly/polyfile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sympoly {

ParseError::ParseError(std::size_t line, const std::string& what)
    : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::string text;  // trimmed
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::size_t parse_count(const std::string& token, std::size_t line, const char* what) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      token.size() > 9)
    throw ParseError(line, std::string("expected ") + what + ", got '" + token + "'");
  return std::stoul(token);
}

Vector parse_row(const Line& l, std::size_t columns) {
  const auto t = tokens(l.text);
  if (t.size() != columns)
    throw ParseError(l.number, "expected " + std::to_string(columns) + " entries, found " + std::to_string(t.size()));
  Vector row;
  row.reserve(columns);
  for (const auto& tok : t) {
    auto q = parse_rational(tok);
    if (!q) throw ParseError(l.number, "not a rational number: '" + tok + "'");
    row.push_back(std::move(*q));
  }
  return row;
}

std::vector<std::size_t> parse_linearity(const Line& l) {
  const auto t = tokens(l.text);
  if (t.size() < 2) throw ParseError(l.number, "linearity needs a count and row numbers");
  const std::size_t k = parse_count(t[1], l.number, "a row count");
  if (t.size() != k + 2) throw ParseError(l.number, "linearity count does not match the listed rows");
  std::vector<std::size_t> out;
  for (std::size_t i = 2; i < t.size(); ++i) {
    const std::size_t r = parse_count(t[i], l.number, "a row number");
    if (r == 0) throw ParseError(l.number, "row numbers start at 1");
    out.push_back(r - 1);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ParseError(l.number, "repeated linearity row");
  return out;
}

std::vector<std::size_t> parse_blocks(const Line& l) {
  const auto t = tokens(l.text.substr(l.text.find(':') + 1));
  if (t.empty()) throw ParseError(l.number, "blocks: needs at least one block size");
  std::vector<std::size_t> out;
  for (const auto& tok : t) {
    const std::size_t s = parse_count(tok, l.number, "a block size");
    if (s == 0) throw ParseError(l.number, "block sizes must be positive");
    out.push_back(s);
  }
  return out;
}

}  // namespace

PolyFile parse_polyfile(std::string_view text) {
  std::vector<Line> lines;
  PolyFile file;
  {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
      ++number;
      std::string t = trim(raw);
      if (!t.empty() && t[0] == '*') {
        file.comments.push_back(trim(std::string_view(t).substr(1)));
      } else if (!t.empty()) {
        lines.push_back({number, std::move(t)});
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  std::size_t i = 0;
  const std::size_t last_line = lines.empty() ? 1 : lines.back().number;
  auto next = [&](const char* expected) -> const Line& {
    if (i >= lines.size()) throw ParseError(last_line, std::string("unexpected end of file, expected ") + expected);
    return lines[i++];
  };

  bool have_kind = false;
  std::optional<std::size_t> linearity_line;
  std::vector<std::size_t> linearity;
  std::optional<std::size_t> blocks_line;
  for (;;) {
    const Line& l = next("'begin'");
    if (l.text == "H-representation" || l.text == "V-representation") {
      if (have_kind) throw ParseError(l.number, "representation declared twice");
      file.kind = l.text[0] == 'H' ? PolyKind::h : PolyKind::v;
      have_kind = true;
    } else if (l.text.rfind("linearity", 0) == 0) {
      if (linearity_line) throw ParseError(l.number, "linearity declared twice");
      linearity = parse_linearity(l);
      linearity_line = l.number;
    } else if (l.text.rfind("blocks:", 0) == 0) {
      if (blocks_line) throw ParseError(l.number, "blocks declared twice");
      file.blocks = parse_blocks(l);
      blocks_line = l.number;
    } else if (l.text == "begin") {
      break;
    } else {
      throw ParseError(l.number, "unexpected line '" + l.text + "' before 'begin'");
    }
  }
  if (!have_kind) throw ParseError(lines[i - 1].number, "missing H-representation or V-representation line");

  const Line& header = next("the size line");
  const auto h = tokens(header.text);
  if (h.size() != 3) throw ParseError(header.number, "size line must read '<rows> <columns> rational'");
  const std::size_t m = parse_count(h[0], header.number, "a row count");
  file.columns = parse_count(h[1], header.number, "a column count");
  if (file.columns == 0) throw ParseError(header.number, "at least one column is required");
  if (h[2] != "rational" && h[2] != "integer") throw ParseError(header.number, "number type must be rational or integer");

  for (std::size_t r = 0; r < m; ++r) {
    const Line& l = next("a data row");
    if (l.text == "end") throw ParseError(l.number, "expected " + std::to_string(m) + " rows, found " + std::to_string(r));
    file.rows.push_back(parse_row(l, file.columns));
    if (file.kind == PolyKind::v && file.rows.back()[0] != 0 && file.rows.back()[0] != 1)
      throw ParseError(l.number, "V rows must start with 1 (vertex) or 0 (ray)");
  }
  {
    const Line& l = next("'end'");
    if (l.text != "end") throw ParseError(l.number, "expected 'end' after " + std::to_string(m) + " rows");
  }

  while (i < lines.size()) {
    const Line& l = lines[i++];
    if (l.text == "maximize" || l.text == "minimize") {
      if (file.objective) throw ParseError(l.number, "objective declared twice");
      if (file.kind != PolyKind::h) throw ParseError(l.number, "objectives are only allowed in H files");
      const Line& row = next("objective coefficients");
      file.objective = Objective{l.text == "maximize" ? Sense::maximize : Sense::minimize, parse_row(row, file.columns)};
    } else if (l.text.rfind("linearity", 0) == 0) {
      if (linearity_line) throw ParseError(l.number, "linearity declared twice");
      linearity = parse_linearity(l);
      linearity_line = l.number;
    } else {
      throw ParseError(l.number, "unexpected line '" + l.text + "' after 'end'");
    }
  }

  if (linearity_line) {
    if (!linearity.empty() && linearity.back() >= m)
      throw ParseError(*linearity_line, "linearity row " + std::to_string(linearity.back() + 1) + " does not exist");
    file.linearity = std::move(linearity);
  }
  if (blocks_line) {
    std::size_t total = 0;
    for (auto s : *file.blocks) total += s;
    if (total != file.dimension())
      throw ParseError(*blocks_line, "block sizes add up to " + std::to_string(total) + " but the dimension is " +
                                         std::to_string(file.dimension()));
  }
  return file;
}

PolyFile read_polyfile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_polyfile(text.str());
}

std::string write_polyfile(const PolyFile& file) {
  std::string out;
  auto write_row = [&](const Vector& row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += to_string(row[j]);
    }
    out += '\n';
  };
  for (const auto& c : file.comments) out += c.empty() ? "*\n" : "* " + c + "\n";
  out += file.kind == PolyKind::h ? "H-representation\n" : "V-representation\n";
  if (!file.linearity.empty()) {
    out += "linearity " + std::to_string(file.linearity.size());
    for (auto r : file.linearity) out += ' ' + std::to_string(r + 1);
    out += '\n';
  }
  if (file.blocks) {
    out += "blocks:";
    for (auto s : *file.blocks) out += ' ' + std::to_string(s);
    out += '\n';
  }
  out += "begin\n" + std::to_string(file.rows.size()) + ' ' + std::to_string(file.columns) + " rational\n";
  for (const auto& row : file.rows) write_row(row);
  out += "end\n";
  if (file.objective) {
    out += file.objective->sense == Sense::maximize ? "maximize\n" : "minimize\n";
    write_row(file.objective->coefficients);
  }
  return out;
}

FileSystem to_hpolyhedron(const PolyFile& file) {
  if (file.kind != PolyKind::h) throw InputError("expected an H-representation");
  const std::size_t n = file.dimension();
  FileSystem out{HPolyhedron(n), {}};
  for (std::size_t r = 0; r < file.rows.size(); ++r) {
    // b - a.x >= 0 is stored as (b, -a).
    Vector a(file.rows[r].begin() + 1, file.rows[r].end());
    for (auto& x : a) x = -x;
    const Rational& b = file.rows[r][0];
    out.system.add_row(a, b);
    out.source.push_back(r);
    if (std::binary_search(file.linearity.begin(), file.linearity.end(), r)) {
      out.system.add_row(scale(a, -1), -b);
      out.source.push_back(r);
    }
  }
  return out;
}

VPolyhedron to_vpolyhedron(const PolyFile& file) {
  if (file.kind != PolyKind::v) throw InputError("expected a V-representation");
  if (!file.linearity.empty()) throw InputError("lines (linearity in a V file) are not supported");
  VPolyhedron v;
  for (const auto& row : file.rows) {
    Vector x(row.begin() + 1, row.end());
    (row[0] == 1 ? v.vertices : v.rays).push_back(std::move(x));
  }
  return v;
}

PolyFile from_hpolyhedron(const HPolyhedron& p, const std::vector<std::size_t>& linearity) {
  PolyFile f;
  f.kind = PolyKind::h;
  f.columns = p.dimension() + 1;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Vector row{p.rhs(i)};
    for (const auto& x : p.row(i)) row.push_back(-x);
    f.rows.push_back(std::move(row));
  }
  f.linearity = linearity;
  std::sort(f.linearity.begin(), f.linearity.end());
  return f;
}

PolyFile from_vpolyhedron(const VPolyhedron& v) {
  PolyFile f;
  f.kind = PolyKind::v;
  f.columns = v.dimension() + 1;
  for (const auto& x : v.vertices) {
    Vector row{Rational(1)};
    row.insert(row.end(), x.begin(), x.end());
    f.rows.push_back(std::move(row));
  }
  for (const auto& r : v.rays) {
    Vector row{Rational(0)};
    row.insert(row.end(), r.begin(), r.end());
    f.rows.push_back(std::move(row));
  }
  return f;
}

}  // namespace sympoly
