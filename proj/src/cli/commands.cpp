#include "sympoly/cli.hpp"

#include "sympoly/latcount.hpp"
#include "sympoly/linalg.hpp"
#include "sympoly/redundancy.hpp"
#include "sympoly/symmetry.hpp"

#include <algorithm>
#include <sstream>

namespace sympoly {

namespace {

std::string row_numbers(const std::vector<std::size_t>& rows) {
  std::string out;
  for (auto r : rows) out += (out.empty() ? "" : " ") + std::to_string(r + 1);
  return out;
}

std::string join(const IntVector& x) {
  std::string out;
  for (const auto& v : x) out += (out.empty() ? "" : " ") + to_string(v);
  return out;
}

/// Vertices of a V file with non-vertex points removed.
struct VertexInput {
  VPolyhedron v;
  std::vector<std::size_t> rows;     // file row of each vertex
  std::vector<std::size_t> dropped;  // file rows that are not vertices
};

VertexInput vertex_input(const PolyFile& file) {
  auto all = to_vpolyhedron(file);
  if (!all.rays.empty()) throw InputError("unbounded V-input: rays are not supported for this command");
  if (all.vertices.empty()) throw InputError("V-input lists no points");
  const auto redundant = redundant_points(all.vertices);
  VertexInput out;
  for (std::size_t i = 0; i < all.vertices.size(); ++i) {
    if (std::binary_search(redundant.begin(), redundant.end(), i)) {
      out.dropped.push_back(i);
    } else {
      out.v.vertices.push_back(all.vertices[i]);
      out.rows.push_back(i);
    }
  }
  return out;
}

/// An H file reduced to a full-dimensional irredundant system in
/// coordinates z of its affine hull, x = origin + sum_k z_k basis[k].
struct FacetInput {
  HPolyhedron z;
  std::vector<std::size_t> rows;  // file row of each row of z
  Vector origin;
  Matrix basis;
  std::vector<std::size_t> dropped;  // redundant file rows or equations
};

std::optional<FacetInput> facet_input(const PolyFile& file) {
  const auto fs = to_hpolyhedron(file);
  const auto irr = remove_redundancy(fs.system);
  if (irr.empty) return std::nullopt;
  const std::size_t n = file.dimension();
  FacetInput out;
  if (irr.equalities.empty()) {
    out.origin = zero_vector(n);
    out.basis = identity_matrix(n);
  } else {
    Matrix e;
    Vector rhs;
    for (auto i : irr.equalities) {
      e.push_back(fs.system.row(i));
      rhs.push_back(fs.system.rhs(i));
    }
    out.origin = *solve(e, rhs);
    out.basis = nullspace(e, n);
  }
  out.z = HPolyhedron(out.basis.size());
  for (auto i : irr.inequalities) {
    const Vector& a = fs.system.row(i);
    Vector az;
    for (const auto& b : out.basis) az.push_back(dot(a, b));
    out.z.add_row(std::move(az), fs.system.rhs(i) - dot(a, out.origin));
    out.rows.push_back(fs.source[i]);
  }
  for (std::size_t r = 0; r < file.rows.size(); ++r)
    if (std::find(out.rows.begin(), out.rows.end(), r) == out.rows.end()) out.dropped.push_back(r);
  return out;
}

/// Extends permutations of a subset of file rows to all file rows.
Permutation lift(const Permutation& p, const std::vector<std::size_t>& rows, std::size_t total) {
  std::vector<Point> images(total);
  for (std::size_t i = 0; i < total; ++i) images[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < rows.size(); ++i) images[rows[i]] = static_cast<Point>(rows[p[i]]);
  return Permutation(std::move(images));
}

FaceIndexSet to_local(const FaceIndexSet& file_rows, const std::vector<std::size_t>& rows) {
  FaceIndexSet out;
  for (auto r : file_rows) {
    const auto it = std::find(rows.begin(), rows.end(), r);
    if (it == rows.end()) throw InputError("row " + std::to_string(r + 1) + " is not part of the reduced input");
    out.push_back(static_cast<std::size_t>(it - rows.begin()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FaceIndexSet to_file(const FaceIndexSet& local, const std::vector<std::size_t>& rows) {
  FaceIndexSet out;
  for (auto i : local) out.push_back(rows[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string group_report(const PermutationGroup& g, const std::vector<std::size_t>& rows, std::size_t total) {
  std::string out = "order " + to_string(g.order()) + "\n";
  std::vector<Permutation> gens;
  for (const auto& gen : g.generators())
    if (!gen.is_identity()) gens.push_back(lift(gen, rows, total));
  out += "generators " + std::to_string(gens.size()) + "\n";
  for (const auto& gen : gens) out += gen.to_cycles() + "\n";
  return out;
}

/// Bounded H-description of a file of either kind, for counting.
HPolyhedron counting_system(const PolyFile& file) {
  if (file.kind == PolyKind::h) return to_hpolyhedron(file).system;
  const auto v = to_vpolyhedron(file);
  if (!v.rays.empty()) throw InputError("polyhedron is unbounded");
  if (v.vertices.empty()) throw InputError("V-input lists no points");
  const auto h = convert_dd(v);
  HPolyhedron p = h.system;
  for (auto i : h.linearity) p.add_row(scale(h.system.row(i), -1), -h.system.rhs(i));
  return p;
}

void add_orbit_comments(PolyFile& out, const PermutationGroup& g, const OrbitLedger& ledger,
                        const std::vector<FaceIndexSet>& incidence, bool expanded, const char* what) {
  out.comments.push_back("group order " + to_string(g.order()));
  out.comments.push_back(std::to_string(ledger.size()) + " orbit(s), " + to_string(ledger.total()) + " " + what +
                         " in total" + (expanded ? ", all listed" : ", one representative per orbit"));
  for (std::size_t i = 0; i < ledger.size(); ++i)
    out.comments.push_back("orbit " + std::to_string(i + 1) + " size " + to_string(ledger.orbits()[i].size) +
                           " incidence " + row_numbers(incidence[i]));
}

CommandResult convert_v_to_h(const PolyFile& file, const ConvertOptions& options) {
  const auto in = vertex_input(file);
  if (affine_hull(in.v.vertices).dimension == 0) throw InputError("polytope is a single point");
  PermutationGroup g = affine_symmetry_group(in.v).group;
  if (options.stabilize) g = set_stabilizer(g, to_local(*options.stabilize, in.rows));
  const DecompositionOptions dopt{options.levels, options.jobs};
  const auto res = facets_up_to_symmetry(in.v, g, dopt, options.expand);

  HPolyhedron rows(file.dimension());
  std::vector<std::size_t> linearity;
  for (std::size_t i = 0; i < res.h.system.rows(); ++i) {
    const auto norm = normalize_row(res.h.system.row(i), res.h.system.rhs(i));
    if (std::binary_search(res.h.linearity.begin(), res.h.linearity.end(), i)) linearity.push_back(i);
    rows.add_row(to_rational(norm.a), Rational(norm.b));
  }
  CommandResult result;
  PolyFile out = from_hpolyhedron(rows, linearity);
  std::vector<FaceIndexSet> incidence;
  for (const auto& o : res.orbits.ledger.orbits()) incidence.push_back(to_file(o.representative, in.rows));
  add_orbit_comments(out, g, res.orbits.ledger, incidence, options.expand, "facets");
  result.report = write_polyfile(out);
  if (!in.dropped.empty()) result.warnings += "ignored rows that are not vertices: " + row_numbers(in.dropped) + "\n";
  if (options.adjacencies) result.dot = to_dot(adjacency_graph(in.v.vertices, g, res.orbits, dopt));
  return result;
}

CommandResult convert_h_to_v(const PolyFile& file, const ConvertOptions& options) {
  const auto in = facet_input(file);
  if (!in) return {exit_empty, "empty\n", {}, {}};
  if (in->z.dimension() == 0) throw InputError("polytope is a single point");
  PermutationGroup g = restricted_symmetries_H(in->z);
  if (options.stabilize) g = set_stabilizer(g, to_local(*options.stabilize, in->rows));
  const DecompositionOptions dopt{options.levels, options.jobs};
  const auto res = vertices_up_to_symmetry(in->z, g, dopt, options.expand);

  VPolyhedron v;
  for (const auto& z : res.v.v.vertices) {
    Vector x = in->origin;
    for (std::size_t k = 0; k < z.size(); ++k) x = add(x, scale(in->basis[k], z[k]));
    v.vertices.push_back(std::move(x));
  }
  if (v.vertices.empty()) v.vertices.push_back(in->origin);  // keeps the column count
  CommandResult result;
  PolyFile out = from_vpolyhedron(v);
  out.columns = file.columns;
  std::vector<FaceIndexSet> incidence;
  for (const auto& o : res.orbits.ledger.orbits()) incidence.push_back(to_file(o.representative, in->rows));
  add_orbit_comments(out, g, res.orbits.ledger, incidence, options.expand, "vertices");
  result.report = write_polyfile(out);
  if (!in->dropped.empty())
    result.warnings += "rows not used as facets (redundant or equations): " + row_numbers(in->dropped) + "\n";
  if (options.adjacencies) result.dot = to_dot(adjacency_graph(polar_points(in->z), g, res.orbits, dopt));
  return result;
}

}  // namespace

FaceIndexSet parse_row_list(std::string_view text) {
  FaceIndexSet out;
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    const auto dash = item.find('-');
    auto number = [&](const std::string& s) -> std::size_t {
      if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InputError("malformed row list entry '" + item + "'");
      const std::size_t r = std::stoul(s);
      if (r == 0) throw InputError("row numbers start at 1");
      return r - 1;
    };
    const std::size_t lo = number(item.substr(0, dash));
    const std::size_t hi = dash == std::string::npos ? lo : number(item.substr(dash + 1));
    if (hi < lo) throw InputError("empty row range '" + item + "'");
    for (std::size_t r = lo; r <= hi; ++r) out.push_back(r);
    item.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ') {
      flush();
    } else {
      item += c;
    }
  }
  flush();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CommandResult cmd_automorphisms(const PolyFile& input) {
  CommandResult result;
  if (input.kind == PolyKind::v) {
    const auto in = vertex_input(input);
    const auto sym = affine_symmetry_group(in.v);
    result.report = group_report(sym.group, in.rows, input.rows.size());
    if (!in.dropped.empty())
      result.warnings += "rows that are not vertices are fixed: " + row_numbers(in.dropped) + "\n";
    return result;
  }
  const auto in = facet_input(input);
  if (!in) return {exit_empty, "empty\n", {}, {}};
  if (in->z.rows() == 0) throw InputError("the system has no proper inequalities");
  result.report = group_report(restricted_symmetries_H(in->z), in->rows, input.rows.size());
  if (!in->dropped.empty())
    result.warnings += "redundant rows and equations are fixed: " + row_numbers(in->dropped) + "\n";
  return result;
}

CommandResult cmd_convert(const PolyFile& input, const ConvertOptions& options) {
  if (options.levels.idm_below > options.levels.adm_below)
    throw InputError("--idm-adm-level: the IDM level must not exceed the ADM level");
  return input.kind == PolyKind::v ? convert_v_to_h(input, options) : convert_h_to_v(input, options);
}

CommandResult cmd_count(const PolyFile& input, bool symmetric, std::size_t jobs) {
  const HPolyhedron p = counting_system(input);
  Integer count;
  if (symmetric) {
    if (!input.blocks) throw InputError("--symmetric needs a 'blocks:' header in the input file");
    count = count_with_symmetry(p, Blocks{*input.blocks}, jobs);
  } else {
    count = count_lattice_points(p);
  }
  return {count == 0 ? exit_empty : exit_ok, "count " + to_string(count) + "\n", {}, {}};
}

CommandResult cmd_ehrhart(const PolyFile& input, std::size_t period_bound) {
  const HPolyhedron p = counting_system(input);
  if (remove_redundancy(p).empty) return {exit_empty, "empty\n", {}, {}};
  const auto e = ehrhart(p, period_bound);
  std::string out = "period " + std::to_string(e.period) + "\ndegree " + std::to_string(e.degree) + "\n";
  for (std::size_t r = 0; r < e.components.size(); ++r) {
    out += "residue " + std::to_string(r) + ":";
    for (const auto& c : e.components[r]) out += " " + to_string(c);
    out += "\n";
  }
  return {exit_ok, out, {}, {}};
}

CommandResult cmd_volume(const PolyFile& input) {
  const HPolyhedron p = counting_system(input);
  if (remove_redundancy(p).empty) return {exit_empty, "empty\n", {}, {}};
  return {exit_ok, "volume " + to_string(volume(p)) + "\n", {}, {}};
}

CommandResult cmd_ilp(const PolyFile& input, std::size_t enumeration_limit) {
  if (input.kind != PolyKind::h) throw InputError("ilp expects an H-representation");
  const HPolyhedron p = to_hpolyhedron(input).system;
  const std::size_t n = p.dimension();
  Vector c = zero_vector(n);
  if (input.objective) {
    c.assign(input.objective->coefficients.begin() + 1, input.objective->coefficients.end());
    if (input.objective->sense == Sense::minimize) c = scale(c, -1);
  }
  auto value_of = [&](const IntVector& x) -> Rational {
    return input.objective->coefficients[0] + dot(Vector(input.objective->coefficients.begin() + 1,
                                                          input.objective->coefficients.end()),
                                                   to_rational(x));
  };
  auto feasible_report = [&](const IntVector& x) {
    if (!p.contains(to_rational(x))) throw VerificationError("reported point violates an inequality");
    std::string out = "feasible\npoint " + join(x) + "\n";
    if (input.objective) out += "value " + to_string(value_of(x)) + "\n";
    return out;
  };

  CommandResult result;
  if (input.blocks) {
    const Blocks blocks{*input.blocks};
    const auto r = input.objective ? symmetric_ilp_maximize(p, c, blocks) : symmetric_ilp_feasible(p, blocks);
    if (r.status == IlpStatus::unbounded)
      throw InputError("block sums are unbounded, refusing to search infinitely many fibers; add bounding inequalities");
    const std::string fibers = "fibers tested " + std::to_string(r.fibers_tested) + "\n";
    if (r.status == IlpStatus::infeasible) return {exit_empty, "infeasible\n" + fibers, {}, {}};
    result.report = feasible_report(r.point) + fibers;
    return result;
  }

  result.warnings = "no 'blocks:' header, falling back to brute-force enumeration\n";
  const DilateCounter counter(p);
  const Integer total = counter.count(1);
  if (total > Integer(static_cast<unsigned long>(enumeration_limit)))
    throw InputError("refusing to enumerate " + to_string(total) + " integral points (limit " +
                     std::to_string(enumeration_limit) + ")");
  std::optional<IntVector> best;
  std::optional<Rational> best_value;
  counter.for_each(1, [&](const IntVector& x) {
    const Rational v = dot(c, to_rational(x));
    if (!best || v > *best_value) best = x, best_value = v;
  });
  const std::string enumerated = "points enumerated " + to_string(total) + "\n";
  if (!best) {
    result.exit_code = exit_empty;
    result.report = "infeasible\n" + enumerated;
    return result;
  }
  result.report = feasible_report(*best) + enumerated;
  return result;
}

}  // namespace sympoly
