#include "sympoly/decomposition.hpp"

#include "sympoly/linalg.hpp"
#include "sympoly/lp.hpp"
#include "sympoly/parallel.hpp"
#include "sympoly/redundancy.hpp"
#include "sympoly/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace sympoly {

std::pair<std::size_t, bool> OrbitLedger::insert(const FaceIndexSet& key, const Integer& size) {
  auto [it, fresh] = index_.emplace(key, orbits_.size());
  if (fresh) orbits_.push_back({key, size});
  return {it->second, fresh};
}

std::optional<std::size_t> OrbitLedger::find(const FaceIndexSet& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Integer OrbitLedger::total() const {
  Integer t = 0;
  for (const auto& o : orbits_) t += o.size;
  return t;
}

namespace {

/// A point configuration in coordinates of its own affine hull, with the
/// polar description around the barycenter: the facet F corresponds to the
/// vertex a of {a : a.q_i <= 1} with a.q_i == 1 exactly for i in F.
class Configuration {
 public:
  explicit Configuration(const std::vector<Vector>& points) {
    const auto hull = affine_hull(points);
    d_ = hull.dimension;
    z_ = hull_coordinates(hull, points);
    Vector bary = zero_vector(d_);
    for (const auto& p : z_) bary = add(bary, p);
    bary = scale(bary, Rational(1, static_cast<unsigned long>(z_.size())));
    for (const auto& p : z_) q_.push_back(subtract(p, bary));
  }

  std::size_t dimension() const { return d_; }
  std::size_t size() const { return z_.size(); }
  const Vector& point(std::size_t i) const { return z_[i]; }

  std::vector<Vector> points(const FaceIndexSet& f) const {
    std::vector<Vector> out;
    for (auto i : f) out.push_back(z_[i]);
    return out;
  }

  FaceIndexSet tight(const Vector& a) const {
    FaceIndexSet f;
    for (std::size_t i = 0; i < q_.size(); ++i)
      if (dot(a, q_[i]) == 1) f.push_back(i);
    return f;
  }

  Vector polar(const FaceIndexSet& f) const {
    Matrix rows;
    for (auto i : f) rows.push_back(q_[i]);
    auto a = solve(rows, Vector(f.size(), Rational(1)));
    if (!a || rank(rows) != d_) throw VerificationError("index set is not a facet");
    return *a;
  }

  /// One facet: optimize over the polar, then move inside the optimal face
  /// until the tight rows have full rank.
  FaceIndexSet initial_facet() const {
    HPolyhedron polar_body(d_);
    for (const auto& q : q_) polar_body.add_row(q, 1);
    Vector objective(d_);
    for (std::size_t k = 0; k < d_; ++k) objective[k] = static_cast<unsigned long>(k + 1);
    auto lp = solve_lp(polar_body, objective);
    if (lp.status != LpStatus::optimal) throw VerificationError("initial facet LP did not reach an optimum");
    Vector a = lp.point;
    for (;;) {
      FaceIndexSet t = tight(a);
      Matrix rows;
      for (auto i : t) rows.push_back(q_[i]);
      const auto null = nullspace(rows, d_);
      if (null.empty()) return t;
      const Vector& u = null.front();
      auto step = ratio_test(a, u);
      a = step ? add(a, scale(u, *step)) : add(a, scale(u, -*ratio_test(a, scale(u, -1))));
    }
  }

  /// Facet on the other side of `ridge` (a facet of `facet`).
  FaceIndexSet rotate(const FaceIndexSet& facet, const FaceIndexSet& ridge) const {
    const Vector a = polar(facet);
    Matrix rows;
    for (auto i : ridge) rows.push_back(q_[i]);
    const auto null = nullspace(rows, d_);
    if (null.size() != 1) throw VerificationError("ridge does not have codimension one");
    Vector u = null.front();
    // Leave the facet: some point of facet \ ridge must become slack.
    for (auto j : facet) {
      if (std::binary_search(ridge.begin(), ridge.end(), j)) continue;
      if (dot(q_[j], u) > 0) u = scale(u, -1);
      break;
    }
    auto step = ratio_test(a, u);
    if (!step) throw VerificationError("ridge rotation found no neighbouring facet");
    return tight(add(a, scale(u, *step)));
  }

 private:
  std::optional<Rational> ratio_test(const Vector& a, const Vector& u) const {
    std::optional<Rational> best;
    for (const auto& q : q_) {
      const Rational rate = dot(q, u);
      if (rate <= 0) continue;
      const Rational t = (1 - dot(a, q)) / rate;
      if (!best || t < *best) best = t;
    }
    return best;
  }

  std::size_t d_ = 0;
  std::vector<Vector> z_;
  std::vector<Vector> q_;
};

/// Generators of a set stabilizer acting on the positions of the set.
PermutationGroup restrict_to(const PermutationGroup& stab, const FaceIndexSet& f) {
  std::vector<Permutation> gens;
  for (const auto& s : stab.generators()) {
    std::vector<Point> images(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      auto it = std::lower_bound(f.begin(), f.end(), static_cast<std::size_t>(s[f[j]]));
      images[j] = static_cast<Point>(it - f.begin());
    }
    gens.emplace_back(std::move(images));
  }
  return PermutationGroup(f.size(), gens);
}

class Engine {
 public:
  Engine(const std::vector<Vector>& points, const PermutationGroup& g, const Levels& levels, std::size_t depth,
         std::size_t jobs)
      : cfg_(points), g_(g), canon_(g), levels_(levels), depth_(depth), jobs_(jobs) {
    if (g.degree() != points.size()) throw InputError("group degree does not match the number of points");
  }

  FacetOrbits run(Method m) {
    if (cfg_.dimension() == 0) {
      FacetOrbits out;
      out.ledger.insert({}, 1);
      out.neighbors.emplace(1);
      return out;
    }
    switch (m) {
      case Method::dd: return run_dd();
      case Method::adm: return run_adm();
      case Method::idm: return run_idm();
    }
    return {};
  }

  /// Canonical keys of the facets adjacent to `facet` across each of its
  /// ridges up to the stabilizer.
  std::vector<FaceIndexSet> neighbor_keys(const FaceIndexSet& facet, const PermutationGroup& stab) const {
    std::vector<FaceIndexSet> out;
    for (const auto& ridge : ridges(facet, stab)) out.push_back(canon_.canonical(cfg_.rotate(facet, ridge)));
    return out;
  }

  Integer orbit_size(const FaceIndexSet& key) const { return g_.order() / set_stabilizer(g_, key).order(); }

 private:
  std::vector<FaceIndexSet> ridges(const FaceIndexSet& facet, const PermutationGroup& stab) const {
    const auto sub = cfg_.points(facet);
    const Method m = levels_.at(depth_ + 1);
    std::vector<FaceIndexSet> local;
    if (m == Method::dd) {
      local = facets_dd(sub);
    } else {
      const auto local_group = restrict_to(stab, facet);
      Engine inner(sub, local_group, levels_, depth_ + 1, 1);
      const auto found = inner.run(m);
      for (const auto& o : found.ledger.orbits()) local.push_back(o.representative);
    }
    for (auto& r : local)
      for (auto& i : r) i = facet[i];
    return local;
  }

  FacetOrbits run_dd() {
    const auto all = facets_dd(points_all());
    std::vector<FaceIndexSet> keys(all.size());
    parallel_for(all.size(), jobs_, [&](std::size_t i) { keys[i] = canon_.canonical(all[i]); });
    FacetOrbits out;
    std::vector<Integer> counts;
    for (const auto& k : keys) {
      auto [idx, fresh] = out.ledger.insert(k, 0);
      if (fresh) counts.emplace_back(0);
      counts[idx] += 1;
    }
    FacetOrbits result;
    for (std::size_t i = 0; i < out.ledger.size(); ++i) result.ledger.insert(out.ledger.orbits()[i].representative, counts[i]);
    return result;
  }

  FacetOrbits run_adm() {
    FacetOrbits out;
    auto& ledger = out.ledger;
    auto& neighbors = out.neighbors.emplace();
    std::vector<std::optional<PermutationGroup>> stabs;
    std::vector<Integer> sizes;

    auto settle = [&](const std::vector<std::size_t>& fresh) {
      std::vector<PermutationGroup> found(fresh.size());
      parallel_for(fresh.size(), jobs_, [&](std::size_t i) {
        found[i] = set_stabilizer(g_, ledger.orbits()[fresh[i]].representative);
      });
      for (std::size_t i = 0; i < fresh.size(); ++i) {
        sizes[fresh[i]] = g_.order() / found[i].order();
        stabs[fresh[i]] = std::move(found[i]);
      }
    };
    auto add = [&](const FaceIndexSet& key, std::vector<std::size_t>& fresh) {
      auto [idx, is_new] = ledger.insert(key, 0);
      if (is_new) {
        fresh.push_back(idx);
        stabs.emplace_back();
        sizes.emplace_back(0);
        neighbors.emplace_back();
      }
      return idx;
    };

    std::vector<std::size_t> frontier;
    add(canon_.canonical(cfg_.initial_facet()), frontier);
    settle(frontier);
    while (!frontier.empty()) {
      std::vector<FaceIndexSet> reps;
      for (auto idx : frontier) reps.push_back(ledger.orbits()[idx].representative);
      std::vector<std::vector<FaceIndexSet>> found(frontier.size());
      parallel_for(frontier.size(), jobs_, [&](std::size_t i) { found[i] = neighbor_keys(reps[i], *stabs[frontier[i]]); });
      std::vector<std::size_t> fresh;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        for (const auto& key : found[i]) {
          const auto idx = add(key, fresh);
          neighbors[frontier[i]].push_back(idx);
          neighbors[idx].push_back(frontier[i]);
        }
        stabs[frontier[i]].reset();
      }
      settle(fresh);
      frontier = std::move(fresh);
    }
    for (auto& list : neighbors) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return with_sizes(ledger, sizes, std::move(out.neighbors));
  }

  FacetOrbits run_idm() {
    std::vector<std::size_t> reps;
    for (std::size_t p = 0; p < cfg_.size(); ++p)
      if (g_.orbit(static_cast<Point>(p)).front() == p) reps.push_back(p);

    std::vector<std::vector<FaceIndexSet>> found(reps.size());
    parallel_for(reps.size(), jobs_, [&](std::size_t r) {
      const std::size_t i = reps[r];
      std::vector<IntVector> rows;
      std::vector<std::size_t> index;
      for (std::size_t j = 0; j < cfg_.size(); ++j) {
        if (j == i) continue;
        rows.push_back(primitive_integer(subtract(cfg_.point(j), cfg_.point(i))));
        index.push_back(j);
      }
      // Facets through x_i are the facets of the cone spanned by x_j - x_i.
      for (const auto& ray : extreme_rays(rows)) {
        FaceIndexSet f{i};
        for (auto t : ray.tight) f.push_back(index[t]);
        std::sort(f.begin(), f.end());
        found[r].push_back(canon_.canonical(f));
      }
    });

    OrbitLedger ledger;
    std::vector<std::size_t> fresh;
    for (const auto& list : found)
      for (const auto& key : list)
        if (ledger.insert(key, 0).second) fresh.push_back(fresh.size());
    std::vector<Integer> sizes(ledger.size());
    parallel_for(ledger.size(), jobs_, [&](std::size_t i) { sizes[i] = orbit_size(ledger.orbits()[i].representative); });
    return with_sizes(ledger, sizes, std::nullopt);
  }

  static FacetOrbits with_sizes(const OrbitLedger& ledger, const std::vector<Integer>& sizes,
                                std::optional<std::vector<std::vector<std::size_t>>> neighbors) {
    FacetOrbits out;
    for (std::size_t i = 0; i < ledger.size(); ++i) out.ledger.insert(ledger.orbits()[i].representative, sizes[i]);
    out.neighbors = std::move(neighbors);
    return out;
  }

  std::vector<Vector> points_all() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < cfg_.size(); ++i) out.push_back(cfg_.point(i));
    return out;
  }

  Configuration cfg_;
  const PermutationGroup& g_;
  SetCanonicalizer canon_;
  Levels levels_;
  std::size_t depth_;
  std::size_t jobs_;
};

FacetOrbits run_top(const std::vector<Vector>& points, const PermutationGroup& g, const DecompositionOptions& options,
                    Method m) {
  if (points.empty()) throw InputError("no points");
  return Engine(points, g, options.levels, 0, options.jobs).run(m);
}

}  // namespace

FacetOrbits facet_orbits(const std::vector<Vector>& points, const PermutationGroup& g,
                         const DecompositionOptions& options) {
  return run_top(points, g, options, options.levels.at(0));
}

FacetOrbits adjacency_decomposition(const std::vector<Vector>& points, const PermutationGroup& g,
                                    const DecompositionOptions& options) {
  return run_top(points, g, options, Method::adm);
}

FacetOrbits incidence_decomposition(const std::vector<Vector>& points, const PermutationGroup& g,
                                    const DecompositionOptions& options) {
  return run_top(points, g, options, Method::idm);
}

AdjacencyGraph adjacency_graph(const std::vector<Vector>& points, const PermutationGroup& g,
                               const FacetOrbits& orbits, const DecompositionOptions& options) {
  const auto& ledger = orbits.ledger;
  std::vector<std::vector<std::size_t>> neighbors;
  if (orbits.neighbors) {
    neighbors = *orbits.neighbors;
  } else {
    Engine engine(points, g, options.levels, 0, options.jobs);
    neighbors.resize(ledger.size());
    parallel_for(ledger.size(), options.jobs, [&](std::size_t i) {
      const auto& rep = ledger.orbits()[i].representative;
      if (rep.empty()) return;
      for (const auto& key : engine.neighbor_keys(rep, set_stabilizer(g, rep))) {
        auto j = ledger.find(key);
        if (!j) throw VerificationError("adjacency_graph: neighbouring facet missing from the ledger");
        neighbors[i].push_back(*j);
      }
    });
  }
  AdjacencyGraph graph;
  graph.nodes = ledger.orbits();
  for (std::size_t i = 0; i < neighbors.size(); ++i)
    for (auto j : neighbors[i]) graph.edges.emplace_back(std::min(i, j), std::max(i, j));
  std::sort(graph.edges.begin(), graph.edges.end());
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
  return graph;
}

std::string to_dot(const AdjacencyGraph& graph) {
  std::ostringstream out;
  out << "graph adjacency {\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    out << "  o" << i + 1 << " [label=\"orbit " << i + 1 << " (size " << graph.nodes[i].size << ")\"];\n";
  for (const auto& [a, b] : graph.edges) out << "  o" << a + 1 << " -- o" << b + 1 << ";\n";
  out << "}\n";
  return out.str();
}

std::optional<std::size_t> shortest_path(const AdjacencyGraph& graph, std::size_t u, std::size_t v) {
  const std::size_t n = graph.nodes.size();
  if (u >= n || v >= n) throw InputError("shortest_path: unknown node");
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : graph.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::deque<std::size_t> queue{u};
  dist[u] = 0;
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    if (x == v) return dist[x];
    for (auto y : adj[x])
      if (dist[y] == SIZE_MAX) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return std::nullopt;
}

std::vector<FaceIndexSet> expand_orbits(const OrbitLedger& ledger, const PermutationGroup& g) {
  std::vector<FaceIndexSet> out;
  for (const auto& o : ledger.orbits()) {
    auto orbit = orbit_of_set(g, o.representative);
    if (!orbit.elements) throw InputError("expand_orbits: orbit exceeds the expansion budget");
    out.insert(out.end(), orbit.elements->begin(), orbit.elements->end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vector> polar_points(const HPolyhedron& p) {
  const auto irr = remove_redundancy(p);
  if (irr.empty) throw InputError("polyhedron is empty");
  if (!irr.equalities.empty()) throw InputError("polyhedron is not full-dimensional");
  if (irr.inequalities.size() != p.rows()) throw InputError("inequality system has redundant rows");
  const std::size_t n = p.dimension();
  for (std::size_t i = 0; i < n; ++i)
    if (solve_lp(p, unit_vector(n, i)).status != LpStatus::optimal ||
        minimize_lp(p, unit_vector(n, i)).status != LpStatus::optimal)
      throw InputError("symmetric conversion needs a bounded polytope");

  // Interior point: maximize t subject to a_i x + t <= b_i, t <= 1.
  HPolyhedron slack(n + 1);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Vector row = p.row(i);
    row.push_back(1);
    slack.add_row(std::move(row), p.rhs(i));
  }
  slack.add_row(unit_vector(n + 1, n), 1);
  const auto lp = solve_lp(slack, unit_vector(n + 1, n));
  Vector c(lp.point.begin(), lp.point.end() - 1);

  std::vector<Vector> out;
  for (std::size_t i = 0; i < p.rows(); ++i) out.push_back(scale(p.row(i), 1 / (p.rhs(i) - dot(p.row(i), c))));
  return out;
}

SymmetricHResult facets_up_to_symmetry(const VPolyhedron& v, const PermutationGroup& g,
                                       const DecompositionOptions& options, bool expand) {
  if (!v.rays.empty()) throw InputError("symmetric conversion needs a bounded polytope");
  if (v.vertices.empty()) throw InputError("no vertices");
  v.validate();
  if (g.degree() != v.vertices.size()) throw InputError("group degree does not match the vertex count");
  if (!redundant_points(v.vertices).empty()) throw InputError("input lists points that are not vertices");
  for (const auto& gen : g.generators())
    if (!realize_permutation(v.vertices, gen)) throw InputError("group element " + gen.to_cycles() + " is not an affine symmetry");

  SymmetricHResult out;
  out.orbits = facet_orbits(v.vertices, g, options);
  const std::vector<FaceIndexSet> sets = expand ? expand_orbits(out.orbits.ledger, g) : [&] {
    std::vector<FaceIndexSet> reps;
    for (const auto& o : out.orbits.ledger.orbits()) reps.push_back(o.representative);
    return reps;
  }();

  const std::size_t n = v.dimension();
  const auto hull = affine_hull(v.vertices);
  const std::size_t d = hull.dimension;
  const auto z = hull_coordinates(hull, v.vertices);
  const Matrix c = hull_left_inverse(hull);
  out.h.system = HPolyhedron(n);
  if (d > 0) {
    for (const auto& f : sets) {
      Matrix rows;
      for (auto i : f) {
        Vector r = z[i];
        r.push_back(-1);
        rows.push_back(std::move(r));
      }
      const auto null = nullspace(rows, d + 1);
      if (null.size() != 1) throw VerificationError("facet incidence does not determine a hyperplane");
      Vector az(null.front().begin(), null.front().end() - 1);
      Rational beta = null.front().back();
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (std::binary_search(f.begin(), f.end(), j)) continue;
        if (dot(az, z[j]) > beta) {
          az = scale(az, -1);
          beta = -beta;
        }
        break;
      }
      const Vector a = multiply(transpose(c), az);
      const auto row = normalize_row(a, beta + dot(a, hull.origin));
      out.h.system.add_row(to_rational(row.a), Rational(row.b));
      out.h.incidence.push_back(f);
    }
  }
  for (const auto& [e, rhs] : hull_equations(hull)) {
    const auto row = normalize_row(e, rhs);
    out.h.linearity.push_back(out.h.system.rows());
    out.h.system.add_row(to_rational(row.a), Rational(row.b));
    FaceIndexSet all(v.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    out.h.incidence.push_back(std::move(all));
  }
  return out;
}

SymmetricVResult vertices_up_to_symmetry(const HPolyhedron& p, const PermutationGroup& g,
                                         const DecompositionOptions& options, bool expand) {
  if (g.degree() != p.rows()) throw InputError("group degree does not match the row count");
  const auto points = polar_points(p);
  for (const auto& gen : g.generators())
    if (!is_row_symmetry(p, gen)) throw InputError("group element " + gen.to_cycles() + " does not permute the rows");

  SymmetricVResult out;
  out.orbits = facet_orbits(points, g, options);
  std::vector<FaceIndexSet> sets;
  if (expand) {
    sets = expand_orbits(out.orbits.ledger, g);
  } else {
    for (const auto& o : out.orbits.ledger.orbits()) sets.push_back(o.representative);
  }
  for (const auto& f : sets) {
    Matrix rows;
    Vector rhs;
    for (auto i : f) {
      rows.push_back(p.row(i));
      rhs.push_back(p.rhs(i));
    }
    auto x = solve(rows, rhs);
    if (!x || rank(rows) != p.dimension()) throw VerificationError("row set does not determine a vertex");
    FaceIndexSet tight;
    for (std::size_t i = 0; i < p.rows(); ++i)
      if (dot(p.row(i), *x) == p.rhs(i)) tight.push_back(i);
    if (tight != f) throw VerificationError("vertex incidence disagrees with its polar facet");
    out.v.v.vertices.push_back(std::move(*x));
    out.v.incidence.push_back(f);
  }
  return out;
}

}  // namespace sympoly
