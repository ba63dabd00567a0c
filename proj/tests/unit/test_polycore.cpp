#include <doctest.h>

#include "../support/fixtures.hpp"
#include "sympoly/linalg.hpp"
#include "sympoly/lp.hpp"
#include "sympoly/redundancy.hpp"

using namespace sympoly;
using namespace sympoly::testing;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("+7/1") == Rational(7));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("1.5"));
  CHECK_FALSE(parse_rational("/3"));
  CHECK(to_string(make_rational(-6, 4)) == "-3/2");
  CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("rational arithmetic is closed and exact") {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    Rational a = random_rational(rng, -50, 50, 97);
    Rational b = random_rational(rng, -50, 50, 89);
    CHECK((a + b) - b == a);
    if (sgn(b) != 0) CHECK((a * b) / b == a);
  }
}

TEST_CASE("floor, ceil and primitive integer form") {
  CHECK(sympoly::floor(Rational(-7, 2)) == -4);
  CHECK(sympoly::ceil(Rational(-7, 2)) == -3);
  CHECK(sympoly::floor(Rational(6, 3)) == 2);
  auto p = primitive_integer(Vector{Rational(1, 2), Rational(-3, 4), Rational(0)});
  CHECK(p == IntVector{2, -3, 0});
}

TEST_CASE("rank") {
  CHECK(rank(identity_matrix(3)) == 3);
  CHECK(rank(zero_matrix(2, 4)) == 0);
  CHECK(rank(Matrix{vec({1, 1}), vec({2, 2}), vec({0, 1})}) == 2);
  CHECK(rank(Matrix{}) == 0);
  // Bareiss agrees with rational elimination on random matrices.
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    Matrix m(4, Vector(5));
    for (auto& row : m)
      for (auto& x : row) x = random_rational(rng, -2, 2, 3);
    m.push_back(add(m[0], m[1]));
    CHECK(rank(m) == reduced_echelon(m).pivots.size());
  }
}

TEST_CASE("nullspace, inverse, determinant") {
  Matrix m{vec({1, 2, 3}), vec({2, 4, 6})};
  auto ns = nullspace(m, 3);
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) CHECK(is_zero(multiply(m, v)));

  Matrix a{vec({2, 1}), vec({1, 1})};
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK(multiply(a, *inv) == identity_matrix(2));
  CHECK(determinant(a) == 1);
  CHECK_FALSE(inverse(Matrix{vec({1, 2}), vec({2, 4})}));
}

TEST_CASE("column hermite decomposition") {
  std::vector<IntVector> e{{1, 1, 1, 0}, {0, 1, -1, 1}};
  auto h = column_hermite(e);
  // E U = [H | 0] and det U = +-1.
  Matrix u;
  for (const auto& row : h.unimodular) u.push_back(to_rational(row));
  Matrix er{to_rational(e[0]), to_rational(e[1])};
  Matrix eu = multiply(er, u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 2; j < 4; ++j) CHECK(eu[i][j] == 0);
  CHECK(abs(determinant(u)) == 1);
}

TEST_CASE("solve_lp examples") {
  SUBCASE("cube corner") {
    auto r = solve_lp(cube_h(2), vec({1, 1}));
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == 2);
    CHECK(r.point == vec({1, 1}));
  }
  SUBCASE("unbounded") {
    HPolyhedron p(1);
    p.add_row(vec({-1}), 0);
    CHECK(solve_lp(p, vec({1})).status == LpStatus::unbounded);
  }
  SUBCASE("infeasible") {
    HPolyhedron p(1);
    p.add_row(vec({1}), 0);
    p.add_row(vec({-1}), -1);
    CHECK(solve_lp(p, vec({1})).status == LpStatus::infeasible);
  }
  SUBCASE("no constraints") {
    HPolyhedron p(2);
    CHECK(solve_lp(p, vec({0, 0})).status == LpStatus::optimal);
    CHECK(solve_lp(p, vec({0, 1})).status == LpStatus::unbounded);
  }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(solve_lp(cube_h(2), vec({1})), InputError); }
}

TEST_CASE("solve_lp optimum is attained and matches vertex enumeration") {
  std::mt19937 rng(21);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 3;
    HPolyhedron p = random_polytope(rng, n, 4);
    Vector c(n);
    for (auto& x : c) x = random_rational(rng, -3, 3, 4);
    auto r = solve_lp(p, c);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(p.contains(r.point));
    CHECK(dot(c, r.point) == r.value);
    Rational best = dot(c, brute_force_vertices(p).front());
    for (const auto& v : brute_force_vertices(p)) best = std::max(best, dot(c, v));
    CHECK(best == r.value);
  }
}

TEST_CASE("incidence") {
  SUBCASE("square") {
    auto inc = incidence(cube_h(2), cube_v(2));
    for (std::size_t j = 0; j < 4; ++j) {
      int count = 0;
      for (std::size_t i = 0; i < 4; ++i) count += inc[i][j];
      CHECK(count == 2);
    }
  }
  SUBCASE("simplex") {
    for (std::size_t n = 2; n <= 5; ++n) {
      auto inc = incidence(simplex_h(n), simplex_v(n));
      for (std::size_t j = 0; j <= n; ++j) {
        int count = 0;
        for (std::size_t i = 0; i <= n; ++i) count += inc[i][j];
        CHECK(count == static_cast<int>(n));
      }
    }
  }
  SUBCASE("3-cube") {
    auto inc = incidence(cube_h(3), cube_v(3));
    REQUIRE(inc.size() == 6);
    for (std::size_t j = 0; j < 8; ++j) {
      int count = 0;
      for (std::size_t i = 0; i < 6; ++i) count += inc[i][j];
      CHECK(count == 3);
    }
    // +x_1 <= 1 holds with equality exactly at vertices whose bit 0 is clear.
    for (std::size_t j = 0; j < 8; ++j) CHECK(inc[0][j] == ((j & 1) == 0));
  }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(incidence(cube_h(2), cube_v(3)), InputError); }
  SUBCASE("random polytopes") {
    std::mt19937 rng(5);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 2 + t % 2;
      HPolyhedron p = random_polytope(rng, n, 3);
      VPolyhedron v{brute_force_vertices(p), {}};
      auto inc = incidence(p, v);
      for (std::size_t j = 0; j < v.vertices.size(); ++j) {
        Matrix tight;
        for (std::size_t i = 0; i < p.rows(); ++i) {
          CHECK(inc[i][j] == (p.slack(i, v.vertices[j]) == 0));
          if (inc[i][j]) tight.push_back(p.row(i));
        }
        CHECK(rank(tight) == n);  // every vertex is determined by its tight rows
      }
    }
  }
}

TEST_CASE("affine_hull") {
  CHECK(affine_hull({vec({1, 2, 3})}).dimension == 0);
  CHECK(affine_hull({vec({0, 0, 0}), vec({1, 1, 1}), vec({2, 2, 2})}).dimension == 1);
  CHECK(affine_hull(santos_prismatoid().vertices).dimension == 5);
  CHECK(santos_prismatoid().vertices.size() == 48);
  auto hull = affine_hull({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  CHECK(hull.dimension == 2);
  auto coords = hull_coordinates(hull, {vec({1, 0, 0}), vec({0, 1, 0})});
  CHECK(coords[0] == vec({0, 0}));
  CHECK_THROWS_AS(hull_coordinates(hull, {vec({1, 1, 1})}), InputError);
}

TEST_CASE("remove_redundancy examples") {
  SUBCASE("dominated row") {
    HPolyhedron p(1);
    p.add_row(vec({1}), 1);
    p.add_row(vec({1}), 2);
    p.add_row(vec({-1}), 0);
    auto r = remove_redundancy(p);
    CHECK(r.inequalities == std::vector<std::size_t>{0, 2});
  }
  SUBCASE("irredundant cube unchanged") {
    auto r = remove_redundancy(cube_h(3));
    CHECK(r.inequalities.size() == 6);
    CHECK(r.equalities.empty());
    CHECK(r.system == cube_h(3));
  }
  SUBCASE("duplicate row dropped") {
    HPolyhedron p = cube_h(3);
    p.add_row(p.row(2), p.rhs(2));
    auto r = remove_redundancy(p);
    CHECK(r.inequalities.size() == 6);
    CHECK(normalized_rows(r.system) == normalized_rows(cube_h(3)));
  }
  SUBCASE("implicit equalities recorded separately") {
    HPolyhedron p(2);
    p.add_row(vec({1, 1}), 1);
    p.add_row(vec({-1, -1}), -1);
    p.add_row(vec({-1, 0}), 0);
    p.add_row(vec({0, -1}), 0);
    auto r = remove_redundancy(p);
    CHECK(r.equalities.size() == 1);
    CHECK(r.inequalities == std::vector<std::size_t>{2, 3});
  }
  SUBCASE("empty polyhedron flagged") {
    HPolyhedron p(1);
    p.add_row(vec({1}), 0);
    p.add_row(vec({-1}), -1);
    CHECK(remove_redundancy(p).empty);
  }
}

TEST_CASE("remove_redundancy keeps exactly the supporting rows") {
  std::mt19937 rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 2;
    HPolyhedron p = random_polytope(rng, n, 5);
    auto r = remove_redundancy(p);
    REQUIRE_FALSE(r.empty);
    std::vector<bool> kept(p.rows(), false);
    for (auto i : r.inequalities) kept[i] = true;
    for (std::size_t i = 0; i < p.rows(); ++i) {
      auto lp = solve_lp(r.system, p.row(i));
      REQUIRE(lp.status == LpStatus::optimal);
      CHECK(lp.value <= p.rhs(i));  // every row, dropped or not, is implied
      if (kept[i]) {
        // supporting: removing it changes the set
        HPolyhedron others(n);
        for (auto j : r.inequalities)
          if (j != i) others.add_row(p.row(j), p.rhs(j));
        auto loose = solve_lp(others, p.row(i));
        CHECK((loose.status == LpStatus::unbounded || loose.value > p.rhs(i)));
      }
    }
  }
}
