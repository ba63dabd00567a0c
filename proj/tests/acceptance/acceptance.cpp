// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.

#include "sympoly/decomposition.hpp"
#include "sympoly/latcount.hpp"
#include "sympoly/linalg.hpp"
#include "sympoly/symilp.hpp"
#include "sympoly/symmetry.hpp"

#include "../support/cli.hpp"
#include "../support/fixtures.hpp"
#include "../support/groups.hpp"
#include "../support/lattice.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace sympoly;
using namespace sympoly::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

Blocks random_blocks(std::mt19937& rng, std::size_t n, std::size_t max_block) {
  Blocks b;
  for (std::size_t left = n; left > 0;) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, std::min(left, max_block))(rng);
    b.sizes.push_back(m);
    left -= m;
  }
  return b;
}

template <class T>
std::set<T> as_set(const std::vector<T>& v) {
  return {v.begin(), v.end()};
}

Outcome symmetry_detection() {
  Outcome o;
  std::mt19937 rng(101);
  Integer expected = 2;
  for (std::size_t n = 2; n <= 5; ++n) {
    expected *= static_cast<unsigned long>(2 * n);
    const auto cube = cube_v(n);
    const Integer order = affine_symmetry_group(cube).group.order();
    o.require(order == expected, "cube " + std::to_string(n) + " has order " + to_string(order));
    for (int t = 0; t < 5; ++t) {
      const auto [m, shift] = random_affine(rng, n);
      const Integer moved = affine_symmetry_group(transform(cube, m, shift)).group.order();
      o.require(moved == expected, "affine image of cube " + std::to_string(n) + " has order " + to_string(moved));
    }
  }
  if (o.pass) o.detail = "orders 2^n n! for n = 2..5, unchanged under 20 random affine maps";
  return o;
}

Outcome conversion_up_to_symmetry() {
  Outcome o;
  for (std::size_t n = 2; n <= 5; ++n) {
    for (bool cube : {true, false}) {
      const std::string name = std::string(cube ? "cube " : "cross-polytope ") + std::to_string(n);
      const VPolyhedron v = cube ? cube_v(n) : cross_v(n);
      const HPolyhedron h = cube ? cube_h(n) : cross_h(n);
      const auto gv = affine_symmetry_group(v).group;
      const auto gh = restricted_symmetries_H(h);
      const auto all_facets = as_set(facets_dd(v.vertices));
      const auto all_vertices = as_set(convert_dd(h).v.vertices);
      for (const auto& [method, levels] : {std::pair{"ADM", Levels{0, 1}}, std::pair{"IDM", Levels{1, 1}}}) {
        const auto facets = facet_orbits(v.vertices, gv, {levels, 1});
        o.require(facets.ledger.size() == 1, std::string(method) + " finds " + std::to_string(facets.ledger.size()) +
                                                 " facet orbits of the " + name);
        o.require(as_set(expand_orbits(facets.ledger, gv)) == all_facets,
                  std::string(method) + " facet expansion differs from DD for the " + name);
        const auto verts = vertices_up_to_symmetry(h, gh, {levels, 1}, true);
        o.require(verts.orbits.ledger.size() == 1, std::string(method) + " finds " +
                                                       std::to_string(verts.orbits.ledger.size()) +
                                                       " vertex orbits of the " + name);
        o.require(as_set(verts.v.v.vertices) == all_vertices,
                  std::string(method) + " vertex expansion differs from DD for the " + name);
      }
    }
  }
  if (o.pass) o.detail = "cubes and cross-polytopes n <= 5: one facet and one vertex orbit, expansions equal DD";
  return o;
}

Outcome santos_distance() {
  Outcome o;
  const auto dir = temp_dir();
  const std::string out = (dir / "santos.ine").string(), dot = (dir / "santos.dot").string();
  const auto r = run_sympoly(
      {"convert", data_path("santos.ext"), "--stabilize", "1-24", "--adjacencies", "--dot", dot, "-o", out});
  o.require(r.code == exit_ok, "convert failed: " + r.err);
  if (!o.pass) return o;
  const auto h = read_polyfile(out);
  const auto ends = base_facet_orbits(h);
  o.require(ends.first != 0 && ends.second != 0, "base facets not found among the orbit representatives");
  const long d = dot_distance(read_text(dot), ends);
  o.require(d == 6, "base facets are at distance " + std::to_string(d));
  std::filesystem::remove_all(dir);
  if (o.pass) o.detail = "DOT graph written, base facets at distance 6";
  return o;
}

Outcome lp_reduction() {
  Outcome o;
  std::mt19937 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const auto blocks = random_blocks(rng, n, 4);
    const auto g = blocks.group();
    const auto p = random_invariant_polytope(rng, g, 2, 3, 3, 1, 12);
    std::vector<long> per_block(blocks.sizes.size());
    for (auto& c : per_block) c = std::uniform_int_distribution<long>(-3, 3)(rng);
    Vector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = per_block[blocks.block_of(i)];
    const auto full = solve_lp(p, c);
    const auto reduced = solve_lp_reduced({p, c}, invariant_subspace(g));
    o.require(full.status == reduced.status, "status differs on instance " + std::to_string(trial));
    o.require(full.status != LpStatus::optimal || full.value == reduced.value,
              "optimum differs on instance " + std::to_string(trial));
  }
  if (o.pass) o.detail = "50 random block-invariant LPs, dim <= 10, identical exact optima";
  return o;
}

Outcome core_points() {
  Outcome o;
  for (std::size_t n = 1; n <= 6; ++n) {
    const Blocks blocks{{n}};
    const auto g = blocks.group();
    for (long s = -20; s <= 20; ++s) {
      const auto core = canonical_core_point(blocks, IntVector{Integer(s)});
      o.require(is_core_point(g, core.z) == CoreStatus::core,
                "n = " + std::to_string(n) + ", s = " + std::to_string(s) + " is not a core point");
    }
  }
  std::mt19937 rng(2024);
  int feasible = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto blocks = random_blocks(rng, n, 3);
    const auto p = random_invariant_polytope(rng, blocks.group(), 2, n <= 5 ? 2 : 1, 4, -3, 2);
    const bool oracle = !brute_force_integer_points(p).empty();
    const auto r = symmetric_ilp_feasible(p, blocks);
    o.require((r.status == IlpStatus::feasible) == oracle, "ILP disagrees with enumeration on instance " +
                                                                std::to_string(trial));
    if (r.status == IlpStatus::feasible) {
      ++feasible;
      o.require(p.contains(to_rational(r.point)), "ILP point violates the system on instance " + std::to_string(trial));
    }
  }
  if (o.pass)
    o.detail = "core points for n <= 6, |s| <= 20; 50 random ILPs (" + std::to_string(feasible) +
               " feasible) match enumeration";
  return o;
}

Outcome ehrhart_polynomials() {
  Outcome o;
  const std::vector<std::vector<Rational>> cube_coeffs{{1, 4, 4}, {1, 6, 12, 8}};
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto e = ehrhart(cube_h(n));
    o.require(e.period == 1 && e.components[0] == cube_coeffs[n - 2],
              "cube " + std::to_string(n) + " polynomial is not (2x+1)^n");
  }
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const auto p = random_rational_polytope(rng, d, d <= 2 ? 3 : 2);
    const auto e = ehrhart(p);
    const std::size_t top = 2 * e.period * (d + 1);
    for (std::size_t lambda = 1; lambda <= top; ++lambda) {
      const unsigned long l = static_cast<unsigned long>(lambda);
      o.require(e(l) == Rational(brute_force_count(p.dilate(l))),
                "instance " + std::to_string(trial) + " differs at dilate " + std::to_string(lambda));
    }
    const Rational vol = volume(p);
    for (const auto& comp : e.components)
      o.require(comp.back() == vol, "leading coefficient differs from the volume on instance " + std::to_string(trial));
  }
  if (o.pass) o.detail = "cubes exact; 10 random rational polytopes match enumeration, leading coefficient = volume";
  return o;
}

Outcome symmetric_counting() {
  Outcome o;
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto blocks = random_blocks(rng, n, 3);
    const auto p = random_invariant_polytope(rng, blocks.group(), 2, 2, 3, 1, 8);
    const Integer plain = count_lattice_points(p);
    o.require(count_with_symmetry(p, blocks) == plain, "symmetric count differs on instance " + std::to_string(trial));
    o.require(plain == brute_force_count(p), "plain count differs from enumeration on instance " + std::to_string(trial));
  }
  const auto b3 = birkhoff3();
  const Rational by_ehrhart = ehrhart(b3).components[0].back();
  const Rational by_triangulation = volume(b3);
  o.require(by_ehrhart == by_triangulation,
            "B3 volumes differ: " + to_string(by_ehrhart) + " vs " + to_string(by_triangulation));
  if (o.pass) o.detail = "30 random symmetric polytopes agree; B3 volume " + to_string(by_triangulation) + " both ways";
  return o;
}

Outcome determinism() {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& args : fixture_pipelines()) {
    std::string line;
    for (const auto& a : args) line += a + " ";
    o.require(pipeline_output(args, 1) == pipeline_output(args, 8), "outputs differ for: " + line);
    ++runs;
  }
  if (o.pass) o.detail = std::to_string(runs) + " pipelines byte-identical with --jobs 1 and --jobs 8";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;  // 0: no limit
  };
  const std::vector<Criterion> criteria{
      {"symmetry detection", symmetry_detection, 30},
      {"conversion up to symmetry", conversion_up_to_symmetry, 0},
      {"Santos prismatoid", santos_distance, 300},
      {"LP reduction", lp_reduction, 0},
      {"core points", core_points, 0},
      {"Ehrhart", ehrhart_polynomials, 0},
      {"symmetric counting", symmetric_counting, 0},
      {"determinism", determinism, 0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && criteria[i].limit_seconds > 0 && seconds > criteria[i].limit_seconds) {
      o.pass = false;
      o.detail = "exceeded the time limit of " + std::to_string(static_cast<int>(criteria[i].limit_seconds)) + " s";
    }
    if (!o.pass) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1f s", seconds);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].name << "): " << o.detail
              << " [" << timing << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
