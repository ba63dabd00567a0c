#include "sympoly/decomposition.hpp"
#include "sympoly/linalg.hpp"
#include "sympoly/symmetry.hpp"

#include "../support/fixtures.hpp"
#include "../support/groups.hpp"

#include <doctest.h>

using namespace sympoly;
using namespace sympoly::testing;

namespace {

PermutationGroup full_group(const VPolyhedron& v) { return affine_symmetry_group(v).group; }

FaceIndexSet range_set(std::size_t lo, std::size_t hi) {
  FaceIndexSet f;
  for (std::size_t i = lo; i < hi; ++i) f.push_back(i);
  return f;
}

}  // namespace

TEST_CASE("extreme_rays of the nonnegative orthant and a square cone") {
  // -x <= 0, -y <= 0
  std::vector<IntVector> orthant{{Integer(-1), Integer(0)}, {Integer(0), Integer(-1)}};
  const auto rays = extreme_rays(orthant);
  REQUIRE(rays.size() == 2);
  CHECK(rays[0].tight == FaceIndexSet{0});
  CHECK(rays[1].tight == FaceIndexSet{1});

  // Cone over the square |x| <= z, |y| <= z has four extreme rays.
  std::vector<IntVector> cone;
  for (long sx : {-1, 1}) cone.push_back({Integer(sx), Integer(0), Integer(-1)});
  for (long sy : {-1, 1}) cone.push_back({Integer(0), Integer(sy), Integer(-1)});
  CHECK(extreme_rays(cone).size() == 4);
}

TEST_CASE("double description on textbook polytopes") {
  const auto cube = convert_dd(cube_h(3));
  CHECK_FALSE(cube.empty);
  CHECK(cube.v.vertices.size() == 8);
  for (const auto& f : cube.incidence) CHECK(f.size() == 3);

  CHECK(convert_dd(simplex_v(3)).system.rows() == 4);
  CHECK(convert_dd(cross_v(3)).system.rows() == 8);
  CHECK(normalized_rows(convert_dd(cross_v(3)).system) == normalized_rows(cross_h(3)));
  CHECK(normalized_rows(convert_dd(cube_v(4)).system) == normalized_rows(cube_h(4)));

  HPolyhedron empty(2);
  empty.add_row(vec({1, 0}), -1);
  empty.add_row(vec({-1, 0}), -1);
  CHECK(convert_dd(empty).empty);
}

TEST_CASE("double description handles unbounded and lower-dimensional input") {
  HPolyhedron quadrant(2);
  quadrant.add_row(vec({-1, 0}), 0);
  quadrant.add_row(vec({0, -1}), 0);
  const auto q = convert_dd(quadrant);
  CHECK(q.v.vertices == std::vector<Vector>{vec({0, 0})});
  CHECK(q.v.rays.size() == 2);

  HPolyhedron strip(2);
  strip.add_row(vec({0, 1}), 1);
  strip.add_row(vec({0, -1}), 1);
  CHECK_THROWS_AS(convert_dd(strip), InputError);

  // A square embedded in the plane z = 2 of R^3.
  VPolyhedron sq;
  for (long x : {0, 1})
    for (long y : {0, 1}) sq.vertices.push_back(vec({x, y, 2}));
  const auto h = convert_dd(sq);
  CHECK(h.linearity.size() == 1);
  CHECK(h.system.rows() == 5);
  const auto back = convert_dd(h.system);
  CHECK(back.v.vertices.size() == 4);
}

TEST_CASE("double description agrees with brute force on random polytopes") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto p = random_polytope(rng, n, 3 + trial % 4);
    auto expected = brute_force_vertices(p);
    std::sort(expected.begin(), expected.end());
    const auto got = convert_dd(p);
    CHECK(got.v.vertices == expected);

    // Round trip back to H and compare vertex sets again.
    const auto h = convert_dd(got.v);
    auto again = brute_force_vertices(h.system);
    std::sort(again.begin(), again.end());
    CHECK(again == expected);
  }
}

TEST_CASE("adjacency and incidence decomposition on the cube and cross-polytope") {
  for (const auto& poly : {cube_v(3), cross_v(3), cube_v(4)}) {
    const auto g = full_group(poly);
    const auto all = facets_dd(poly.vertices);
    for (auto method : {Method::dd, Method::adm, Method::idm}) {
      DecompositionOptions opt;
      opt.levels = method == Method::dd ? Levels{0, 0} : method == Method::adm ? Levels{0, 1} : Levels{1, 1};
      const auto orbits = facet_orbits(poly.vertices, g, opt);
      CHECK(orbits.ledger.size() == 1);
      CHECK(orbits.ledger.total() == static_cast<unsigned long>(all.size()));
      CHECK(expand_orbits(orbits.ledger, g) == all);
    }
  }
}

TEST_CASE("trivial group gives one orbit per facet") {
  const auto cube = cube_v(3);
  const PermutationGroup trivial(cube.vertices.size());
  for (auto m : {Levels{0, 1}, Levels{1, 1}, Levels{0, 0}}) {
    const auto orbits = facet_orbits(cube.vertices, trivial, {m, 1});
    CHECK(orbits.ledger.size() == 6);
    for (const auto& o : orbits.ledger.orbits()) CHECK(o.size == 1);
  }
}

TEST_CASE("recursive adjacency decomposition matches plain DD") {
  const auto cube = cube_v(4);
  const auto g = full_group(cube);
  const auto deep = facet_orbits(cube.vertices, g, {Levels{0, 3}, 1});
  CHECK(expand_orbits(deep.ledger, g) == facets_dd(cube.vertices));
  const auto mixed = facet_orbits(cube.vertices, g, {Levels{1, 2}, 1});
  CHECK(expand_orbits(mixed.ledger, g) == facets_dd(cube.vertices));
}

TEST_CASE("adjacency graph of facet orbits") {
  const auto cube = cube_v(3);
  const auto g = full_group(cube);
  const auto orbits = adjacency_decomposition(cube.vertices, g);
  const auto graph = adjacency_graph(cube.vertices, g, orbits);
  REQUIRE(graph.nodes.size() == 1);
  CHECK(graph.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
  CHECK(to_dot(graph).find("o1 -- o1") != std::string::npos);

  // With the trivial group the graph is the facet graph of the cube, which
  // is the octahedron: 6 nodes, 12 edges, diameter 2.
  const PermutationGroup trivial(cube.vertices.size());
  for (auto levels : {Levels{0, 1}, Levels{1, 1}}) {
    const auto t = facet_orbits(cube.vertices, trivial, {levels, 1});
    const auto tg = adjacency_graph(cube.vertices, trivial, t);
    CHECK(tg.nodes.size() == 6);
    CHECK(tg.edges.size() == 12);
    std::size_t diameter = 0;
    for (std::size_t u = 0; u < 6; ++u)
      for (std::size_t v = 0; v < 6; ++v) diameter = std::max(diameter, *shortest_path(tg, u, v));
    CHECK(diameter == 2);
  }
  CHECK_THROWS_AS(shortest_path(graph, 0, 3), InputError);
}

TEST_CASE("parallel runs are deterministic") {
  const auto cube = cube_v(4);
  const auto g = full_group(cube);
  for (auto levels : {Levels{0, 1}, Levels{1, 1}, Levels{0, 0}}) {
    const auto one = facet_orbits(cube.vertices, g, {levels, 1});
    const auto many = facet_orbits(cube.vertices, g, {levels, 8});
    REQUIRE(one.ledger.size() == many.ledger.size());
    for (std::size_t i = 0; i < one.ledger.size(); ++i) {
      CHECK(one.ledger.orbits()[i].representative == many.ledger.orbits()[i].representative);
      CHECK(one.ledger.orbits()[i].size == many.ledger.orbits()[i].size);
    }
    CHECK(one.neighbors == many.neighbors);
  }
}

TEST_CASE("symmetric V to H and H to V conversions") {
  const auto cube = cube_v(3);
  const auto g = full_group(cube);
  const auto h = facets_up_to_symmetry(cube, g, {}, true);
  CHECK(normalized_rows(h.h.system) == normalized_rows(cube_h(3)));
  CHECK(facets_up_to_symmetry(cube, g).h.system.rows() == 1);

  const auto p = cross_h(3);
  const auto rg = restricted_symmetries_H(p);
  CHECK(rg.order() == 48);
  const auto v = vertices_up_to_symmetry(p, rg, {}, true);
  auto verts = v.v.v.vertices;
  std::sort(verts.begin(), verts.end());
  auto expected = cross_v(3).vertices;
  std::sort(expected.begin(), expected.end());
  CHECK(verts == expected);
  CHECK(vertices_up_to_symmetry(p, rg).orbits.ledger.size() == 1);

  // Swapping two adjacent square vertices while fixing the others is not affine.
  const PermutationGroup bad(4, {Permutation({1, 0, 2, 3})});
  CHECK_THROWS_AS(facets_up_to_symmetry(cube_v(2), bad), InputError);
}

TEST_CASE("polar points reject unsuitable systems") {
  HPolyhedron quadrant(2);
  quadrant.add_row(vec({-1, 0}), 0);
  quadrant.add_row(vec({0, -1}), 0);
  CHECK_THROWS_AS(polar_points(quadrant), InputError);
  auto redundant = cube_h(2);
  redundant.add_row(vec({1, 1}), 5);
  CHECK_THROWS_AS(polar_points(redundant), InputError);
  CHECK(polar_points(cube_h(3)).size() == 6);
}

TEST_CASE("Santos prismatoid: facets and base-facet distance") {
  const auto p = santos_prismatoid();
  const auto g = full_group(p);
  const auto all = facets_dd(p.vertices);
  CHECK(all.size() == 322);

  const auto orbits = facet_orbits(p.vertices, g);
  CHECK(orbits.ledger.total() == 322);
  CHECK(expand_orbits(orbits.ledger, g) == all);

  // The full group swaps the two bases, so measure the distance under the
  // stabilizer of one base.
  const auto top = range_set(0, 24), bottom = range_set(24, 48);
  const auto stab = set_stabilizer(g, top);
  const auto sub = facet_orbits(p.vertices, stab);
  const auto graph = adjacency_graph(p.vertices, stab, sub);
  const auto a = sub.ledger.find(canonical_representative(stab, top));
  const auto b = sub.ledger.find(canonical_representative(stab, bottom));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(shortest_path(graph, *a, *b) == 6u);
}
