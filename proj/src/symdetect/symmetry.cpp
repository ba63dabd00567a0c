#include "sympoly/symmetry.hpp"

#include "sympoly/linalg.hpp"
#include "sympoly/lp.hpp"
#include "sympoly/redundancy.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sympoly {
namespace {

/// Gram matrix y_i^T Q^-1 y_j with Q = sum y y^T; the y must span their
/// coordinate space.
Matrix gram_matrix(const std::vector<Vector>& y) {
  const std::size_t k = y.size();
  const std::size_t d = k ? y.front().size() : 0;
  Matrix gram = zero_matrix(k, k);
  if (d == 0) return gram;
  Matrix q = zero_matrix(d, d);
  for (const auto& v : y)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) q[a][b] += v[a] * v[b];
  auto qinv = inverse(q);
  if (!qinv) throw VerificationError("symmetry graph: Q is singular on the projected space");
  std::vector<Vector> u;
  u.reserve(k);
  for (const auto& v : y) u.push_back(multiply(*qinv, v));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) gram[i][j] = gram[j][i] = dot(y[i], u[j]);
  return gram;
}

SymmetryGraph color_graph(Matrix gram, const std::vector<std::uint32_t>& node_class) {
  SymmetryGraph g;
  g.k = gram.size();
  std::map<std::pair<std::uint32_t, Rational>, std::uint32_t> diag;
  std::map<Rational, std::uint32_t> off;
  for (std::size_t i = 0; i < g.k; ++i) {
    const std::uint32_t cls = node_class.empty() ? 0 : node_class[i];
    diag.emplace(std::make_pair(cls, gram[i][i]), 0);
    for (std::size_t j = 0; j < g.k; ++j)
      if (i != j) off.emplace(gram[i][j], 0);
  }
  std::uint32_t next = 0;
  for (auto& [key, id] : diag) id = next++;
  for (auto& [key, id] : off) id = next++;
  g.num_colors = next;
  g.color.resize(g.k * g.k);
  for (std::size_t i = 0; i < g.k; ++i)
    for (std::size_t j = 0; j < g.k; ++j)
      g.color[i * g.k + j] = i == j ? diag.at({node_class.empty() ? 0 : node_class[i], gram[i][i]}) : off.at(gram[i][j]);
  g.gram = std::move(gram);
  return g;
}

using Cells = std::vector<std::vector<Point>>;

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const SymmetryGraph& g) : g_(g) {}

  std::vector<Permutation> run() {
    if (g_.k == 0) return {};
    Cells all(1);
    for (Point v = 0; v < g_.k; ++v) all[0].push_back(v);
    first_path(0, refine(std::move(all)));
    return gens_;
  }

 private:
  // Splits cells by each vertex's own color and the multiset of
  // (cell, color) pairs it sees, until the partition is stable.  Cell order
  // depends only on colors, never on vertex labels.
  Cells refine(Cells cells) const {
    std::vector<std::uint32_t> cell_of(g_.k);
    for (;;) {
      for (std::uint32_t c = 0; c < cells.size(); ++c)
        for (Point v : cells[c]) cell_of[v] = c;
      Cells next;
      for (const auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::map<std::vector<std::uint64_t>, std::vector<Point>> groups;
        for (Point v : cell) {
          std::vector<std::uint64_t> sig;
          sig.reserve(g_.k + 1);
          sig.push_back(g_.at(v, v));
          for (Point w = 0; w < g_.k; ++w)
            if (w != v) sig.push_back(std::uint64_t{cell_of[w]} << 32 | g_.at(v, w));
          std::sort(sig.begin() + 1, sig.end());
          groups[std::move(sig)].push_back(v);
        }
        for (auto& [sig, members] : groups) next.push_back(std::move(members));
      }
      const bool stable = next.size() == cells.size();
      cells = std::move(next);
      if (stable) return cells;
    }
  }

  static std::ptrdiff_t target_cell(const Cells& cells) {
    std::ptrdiff_t best = -1;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (cells[c].size() > 1 && (best < 0 || cells[c].size() < cells[static_cast<std::size_t>(best)].size()))
        best = static_cast<std::ptrdiff_t>(c);
    return best;
  }

  static Cells individualize(const Cells& cells, std::size_t c, Point v) {
    Cells out;
    out.reserve(cells.size() + 1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != c) {
        out.push_back(cells[i]);
        continue;
      }
      out.push_back({v});
      std::vector<Point> rest;
      for (Point w : cells[i])
        if (w != v) rest.push_back(w);
      out.push_back(std::move(rest));
    }
    return out;
  }

  static std::vector<std::size_t> shape(const Cells& cells) {
    std::vector<std::size_t> s;
    for (const auto& c : cells) s.push_back(c.size());
    return s;
  }

  void first_path(std::size_t level, const Cells& cells) {
    shapes_.push_back(shape(cells));
    const auto t = target_cell(cells);
    if (t < 0) {
      for (const auto& c : cells) leaf_.push_back(c.front());
      return;
    }
    const auto& cell = cells[static_cast<std::size_t>(t)];
    prefix_.push_back(cell.front());
    first_path(level + 1, refine(individualize(cells, static_cast<std::size_t>(t), cell.front())));

    std::vector<Point> tried{cell.front()};
    for (std::size_t i = 1; i < cell.size(); ++i) {
      const Point v = cell[i];
      // Known automorphisms fixing the path above this node.
      std::vector<Permutation> fixing;
      for (const auto& g : gens_) {
        bool fixes = true;
        for (std::size_t l = 0; l < level && fixes; ++l) fixes = g[prefix_[l]] == prefix_[l];
        if (fixes) fixing.push_back(g);
      }
      const auto orb = orbit_under(fixing, v, g_.k);
      const bool covered = std::any_of(tried.begin(), tried.end(), [&](Point w) {
        return std::binary_search(orb.begin(), orb.end(), w);
      });
      if (covered) continue;
      tried.push_back(v);
      equivalent(level + 1, refine(individualize(cells, static_cast<std::size_t>(t), v)));
    }
  }

  bool equivalent(std::size_t level, const Cells& cells) {
    if (level >= shapes_.size() || shape(cells) != shapes_[level]) return false;
    const auto t = target_cell(cells);
    if (t < 0) {
      std::vector<Point> images(g_.k);
      for (std::size_t i = 0; i < cells.size(); ++i) images[leaf_[i]] = cells[i].front();
      Permutation p(std::move(images));
      if (!is_automorphism(p)) return false;
      gens_.push_back(std::move(p));
      return true;
    }
    for (Point v : cells[static_cast<std::size_t>(t)])
      if (equivalent(level + 1, refine(individualize(cells, static_cast<std::size_t>(t), v)))) return true;
    return false;
  }

  bool is_automorphism(const Permutation& p) const {
    for (std::size_t u = 0; u < g_.k; ++u)
      for (std::size_t v = 0; v < g_.k; ++v)
        if (g_.at(p[u], p[v]) != g_.at(u, v)) return false;
    return true;
  }

  const SymmetryGraph& g_;
  std::vector<std::vector<std::size_t>> shapes_;
  std::vector<Point> prefix_;
  std::vector<Point> leaf_;
  std::vector<Permutation> gens_;
};

/// M with M src[i] == dst[i] for all i; src must span the whole space.
std::optional<Matrix> linear_map(const std::vector<Vector>& src, const std::vector<Vector>& dst) {
  const std::size_t m = src.front().size();
  const auto basis = independent_rows(src);
  if (basis.size() != m) throw VerificationError("linear_map: source vectors do not span");
  Matrix s, d;
  for (auto i : basis) {
    s.push_back(src[i]);
    d.push_back(dst[i]);
  }
  auto sinv = inverse(s);
  Matrix map = transpose(multiply(*sinv, d));
  for (std::size_t i = 0; i < src.size(); ++i)
    if (multiply(map, src[i]) != dst[i]) return std::nullopt;
  return map;
}

std::vector<Vector> homogenized_rows(const HPolyhedron& p) {
  std::vector<Vector> w;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const auto row = normalize_row(p.row(i), p.rhs(i));
    Vector h{Rational(row.b)};
    for (const auto& x : row.a) h.emplace_back(-x);
    w.push_back(std::move(h));
  }
  w.push_back(unit_vector(p.dimension() + 1, 0));
  return w;
}

}  // namespace

bool is_row_symmetry(const HPolyhedron& p, const Permutation& perm) {
  if (perm.degree() != p.rows()) return false;
  const auto w = homogenized_rows(p);
  std::vector<Vector> dst;
  for (std::size_t i = 0; i < p.rows(); ++i) dst.push_back(w[perm[i]]);
  dst.push_back(w.back());
  return linear_map(w, dst).has_value();
}

std::size_t SymmetryGraph::distinct_values() const {
  std::set<Rational> values;
  for (const auto& row : gram) values.insert(row.begin(), row.end());
  return values.size();
}

SymmetryGraph build_symmetry_graph(const VPolyhedron& v) {
  if (v.vertices.empty()) throw InputError("build_symmetry_graph: no vertices");
  if (!v.rays.empty()) throw InputError("build_symmetry_graph: unbounded input is not supported");
  const auto hull = affine_hull(v.vertices);
  auto z = hull_coordinates(hull, v.vertices);
  Vector bary = zero_vector(hull.dimension);
  for (const auto& p : z) bary = add(bary, p);
  bary = scale(bary, Rational(1, static_cast<unsigned long>(z.size())));
  for (auto& p : z) p = subtract(p, bary);
  return color_graph(gram_matrix(z), {});
}

SymmetryGraph build_vector_graph(const std::vector<Vector>& vectors, const std::vector<std::uint32_t>& node_class) {
  if (vectors.empty()) return color_graph({}, {});
  if (!node_class.empty() && node_class.size() != vectors.size())
    throw InputError("build_vector_graph: node_class size mismatch");
  std::vector<Vector> with_origin{zero_vector(vectors.front().size())};
  with_origin.insert(with_origin.end(), vectors.begin(), vectors.end());
  const auto hull = affine_hull(with_origin);
  return color_graph(gram_matrix(hull_coordinates(hull, vectors)), node_class);
}

std::vector<Permutation> graph_automorphisms(const SymmetryGraph& graph) {
  return AutomorphismSearch(graph).run();
}

Vector AffineMap::operator()(const Vector& x) const { return add(multiply(linear, x), translation); }

std::optional<AffineMap> realize_permutation(const std::vector<Vector>& points, const Permutation& perm) {
  const std::size_t n = points.front().size();
  const auto hull = affine_hull(points);
  const std::size_t d = hull.dimension;
  const auto z = hull_coordinates(hull, points);

  // Affine map in hull coordinates, solved as a linear map on (1, z).
  std::vector<Vector> src, dst;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Vector h{Rational(1)};
    h.insert(h.end(), z[i].begin(), z[i].end());
    src.push_back(std::move(h));
  }
  for (std::size_t i = 0; i < points.size(); ++i) dst.push_back(src[perm[i]]);
  auto m = linear_map(src, dst);
  if (!m) return std::nullopt;

  // Lift: x = o + B^T z on the hull, identity on a complement.  C is a
  // left inverse of B^T built from d independent coordinates.
  const Matrix bt = hull.basis.empty() ? zero_matrix(n, 0) : transpose(hull.basis);
  Matrix c = zero_matrix(d, n);
  if (d > 0) {
    const auto coords = independent_rows(bt);
    Matrix square;
    for (auto j : coords) square.push_back(bt[j]);
    auto inv = inverse(square);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t s = 0; s < d; ++s) c[r][coords[s]] = (*inv)[r][s];
  }
  Matrix l = zero_matrix(d, d);
  Vector t = zero_vector(d);
  for (std::size_t r = 0; r < d; ++r) {
    t[r] = (*m)[r + 1][0];
    for (std::size_t s = 0; s < d; ++s) l[r][s] = (*m)[r + 1][s + 1];
  }
  AffineMap map;
  map.linear = identity_matrix(n);
  if (d > 0) {
    const Matrix btc = multiply(bt, c);
    const Matrix btlc = multiply(bt, multiply(l, c));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) map.linear[r][s] += btlc[r][s] - btc[r][s];
  }
  const Vector shift = d > 0 ? multiply(bt, t) : zero_vector(n);
  map.translation = subtract(add(hull.origin, shift), multiply(map.linear, hull.origin));
  for (std::size_t i = 0; i < points.size(); ++i)
    if (map(points[i]) != points[perm[i]]) return std::nullopt;
  return map;
}

AffineSymmetryGroup affine_symmetry_group(const VPolyhedron& v) {
  const auto graph = build_symmetry_graph(v);
  AffineSymmetryGroup out;
  std::vector<Permutation> gens;
  for (auto& g : graph_automorphisms(graph)) {
    auto map = realize_permutation(v.vertices, g);
    if (!map) {
      ++out.discarded;
      continue;
    }
    gens.push_back(std::move(g));
    out.realizations.push_back(std::move(*map));
  }
  out.group = PermutationGroup(v.vertices.size(), gens);
  return out;
}

PermutationGroup restricted_symmetries_H(const HPolyhedron& p) {
  const auto irr = remove_redundancy(p);
  if (irr.empty) throw InputError("restricted_symmetries_H: polyhedron is empty");
  if (!irr.equalities.empty()) throw InputError("restricted_symmetries_H: polyhedron is not full-dimensional");
  if (irr.inequalities.size() != p.rows()) throw InputError("restricted_symmetries_H: system has redundant rows");
  const std::size_t n = p.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    if (solve_lp(p, unit_vector(n, i)).status != LpStatus::optimal ||
        minimize_lp(p, unit_vector(n, i)).status != LpStatus::optimal)
      throw InputError("restricted_symmetries_H: polyhedron is unbounded");
  }

  // Row (b, -a) in primitive integer form; e0 is added as a distinguished
  // node so every automorphism corresponds to a map fixing e0, i.e. an
  // affine map of the original space.
  const std::size_t m = p.rows();
  std::vector<Vector> w = homogenized_rows(p);
  std::vector<std::uint32_t> cls(m, 0);
  cls.push_back(1);

  std::vector<Permutation> gens;
  for (const auto& g : graph_automorphisms(build_vector_graph(w, cls))) {
    std::vector<Point> images(m);
    for (std::size_t i = 0; i < m; ++i) images[i] = g[i];
    std::vector<Vector> dst;
    for (std::size_t i = 0; i <= m; ++i) dst.push_back(w[g[i]]);
    if (g[m] != m || !linear_map(w, dst)) continue;
    gens.emplace_back(std::move(images));
  }
  return PermutationGroup(m, gens);
}

}  // namespace sympoly
