#include "sympoly/dd.hpp"

#include "sympoly/linalg.hpp"
#include "sympoly/lp.hpp"
#include "sympoly/redundancy.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>

namespace sympoly {
namespace {

using Bits = boost::dynamic_bitset<>;

struct WorkRay {
  IntVector y;
  Bits tight;
};

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector integer_row(const Vector& v) { return primitive_integer(v); }

}  // namespace

std::vector<ExtremeRay> extreme_rays(const std::vector<IntVector>& rows) {
  if (rows.empty()) throw InputError("extreme_rays: no rows");
  const std::size_t dim = rows.front().size();
  const std::size_t m = rows.size();
  Matrix rational_rows;
  for (const auto& r : rows) {
    if (r.size() != dim) throw InputError("extreme_rays: ragged rows");
    rational_rows.push_back(to_rational(r));
  }
  const auto basis = independent_rows(rational_rows);
  if (basis.size() != dim) throw InputError("extreme_rays: cone is not pointed");

  // Start from the simplicial cone of `dim` independent rows: its rays are
  // the negated columns of the inverse.
  Matrix square;
  for (auto i : basis) square.push_back(rational_rows[i]);
  const Matrix inv = *inverse(square);
  std::vector<WorkRay> rays;
  Bits used(m);
  for (auto i : basis) used.set(i);
  for (std::size_t j = 0; j < dim; ++j) {
    Vector col(dim);
    for (std::size_t r = 0; r < dim; ++r) col[r] = -inv[r][j];
    WorkRay w{integer_row(col), Bits(m)};
    for (std::size_t k = 0; k < dim; ++k)
      if (k != j) w.tight.set(basis[k]);
    rays.push_back(std::move(w));
  }

  for (std::size_t r = 0; r < m; ++r) {
    if (used.test(r)) continue;
    used.set(r);
    const IntVector& row = rows[r];
    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      value[i] = dot(row, rays[i].y);
      const int s = sgn(value[i]);
      if (s > 0) pos.push_back(i);
      else if (s < 0) neg.push_back(i);
      else rays[i].tight.set(r);
    }
    if (pos.empty()) continue;

    std::vector<WorkRay> next;
    next.reserve(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (sgn(value[i]) <= 0) next.push_back(rays[i]);
    for (auto p : pos) {
      for (auto n : neg) {
        Bits common = rays[p].tight & rays[n].tight;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t)
          if (t != p && t != n && common.is_subset_of(rays[t].tight)) adjacent = false;
        if (!adjacent) continue;
        IntVector y(dim);
        for (std::size_t k = 0; k < dim; ++k) y[k] = value[p] * rays[n].y[k] - value[n] * rays[p].y[k];
        common.set(r);
        next.push_back({primitive_integer(y), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  std::vector<ExtremeRay> out;
  out.reserve(rays.size());
  for (auto& w : rays) {
    ExtremeRay e;
    e.direction = std::move(w.y);
    for (auto i = w.tight.find_first(); i != Bits::npos; i = w.tight.find_next(i)) e.tight.push_back(i);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const ExtremeRay& a, const ExtremeRay& b) { return a.tight < b.tight; });
  return out;
}

VRepresentation convert_dd(const HPolyhedron& p) {
  VRepresentation out;
  const std::size_t n = p.dimension();
  const auto irr = remove_redundancy(p);
  if (irr.empty) {
    out.empty = true;
    return out;
  }

  // Parametrize the affine span of P as x = x0 + sum z_k N_k.
  Matrix eq_a;
  Vector eq_b;
  for (auto i : irr.equalities) {
    eq_a.push_back(p.row(i));
    eq_b.push_back(p.rhs(i));
  }
  const Vector x0 = eq_a.empty() ? zero_vector(n) : *solve(eq_a, eq_b);
  const Matrix null = nullspace(eq_a, n);
  const std::size_t dz = null.size();

  std::vector<Vector> verts, dirs;
  if (dz == 0) {
    verts.push_back(x0);
  } else {
    // Homogenized cone over (t, z): t >= 0 and b' t - a' z >= 0.
    std::vector<IntVector> rows;
    for (auto i : irr.inequalities) {
      Vector row(dz + 1);
      row[0] = -(p.rhs(i) - sympoly::dot(p.row(i), x0));
      for (std::size_t k = 0; k < dz; ++k) row[k + 1] = sympoly::dot(p.row(i), null[k]);
      rows.push_back(integer_row(row));
    }
    Vector t_row = zero_vector(dz + 1);
    t_row[0] = -1;
    rows.push_back(integer_row(t_row));
    Matrix check;
    for (const auto& r : rows) check.push_back(to_rational(r));
    if (rank(check) != dz + 1) throw InputError("convert_dd: polyhedron contains a line");
    for (const auto& ray : extreme_rays(rows)) {
      const Rational t = ray.direction[0];
      Vector x = t > 0 ? x0 : zero_vector(n);
      for (std::size_t k = 0; k < dz; ++k) {
        Rational c = t > 0 ? Rational(ray.direction[k + 1]) / t : Rational(ray.direction[k + 1]);
        x = add(x, scale(null[k], c));
      }
      (t > 0 ? verts : dirs).push_back(std::move(x));
    }
  }
  std::sort(verts.begin(), verts.end());
  for (auto& d : dirs) d = to_rational(primitive_integer(d));
  std::sort(dirs.begin(), dirs.end());
  out.v.vertices = std::move(verts);
  out.v.rays = std::move(dirs);
  for (const auto& x : out.v.vertices) {
    FaceIndexSet f;
    for (std::size_t i = 0; i < p.rows(); ++i)
      if (sympoly::dot(p.row(i), x) == p.rhs(i)) f.push_back(i);
    out.incidence.push_back(std::move(f));
  }
  for (const auto& r : out.v.rays) {
    FaceIndexSet f;
    for (std::size_t i = 0; i < p.rows(); ++i)
      if (sympoly::dot(p.row(i), r) == 0) f.push_back(i);
    out.incidence.push_back(std::move(f));
  }
  return out;
}

HRepresentation convert_dd(const VPolyhedron& v) {
  if (v.vertices.empty()) throw InputError("convert_dd: V-polyhedron has no vertices");
  v.validate();
  const std::size_t n = v.dimension();
  std::vector<Vector> spanning = v.vertices;
  for (const auto& r : v.rays) spanning.push_back(add(v.vertices.front(), r));
  const auto hull = affine_hull(spanning);
  const std::size_t d = hull.dimension;
  const Matrix c = hull_left_inverse(hull);

  HRepresentation out;
  out.system = HPolyhedron(n);
  auto incident = [&](const Vector& a, const Rational& b) {
    FaceIndexSet f;
    for (std::size_t i = 0; i < v.vertices.size(); ++i)
      if (sympoly::dot(a, v.vertices[i]) == b) f.push_back(i);
    for (std::size_t j = 0; j < v.rays.size(); ++j)
      if (sympoly::dot(a, v.rays[j]) == 0) f.push_back(v.vertices.size() + j);
    return f;
  };

  if (d > 0) {
    const auto z = hull_coordinates(hull, v.vertices);
    std::vector<IntVector> rows;
    for (const auto& zi : z) {
      Vector row{Rational(-1)};
      row.insert(row.end(), zi.begin(), zi.end());
      rows.push_back(integer_row(row));
    }
    for (const auto& r : v.rays) {
      Vector row{Rational(0)};
      const auto w = multiply(c, r);
      row.insert(row.end(), w.begin(), w.end());
      rows.push_back(integer_row(row));
    }
    if (!v.rays.empty()) {
      // A line among the rays makes the dual cone lower-dimensional.
      HPolyhedron strict(d);
      for (const auto& r : v.rays) strict.add_row(multiply(c, r), -1);
      if (!feasible_point(strict)) throw InputError("convert_dd: V-polyhedron contains a line");
    }
    for (const auto& ray : extreme_rays(rows)) {
      Vector a_z(d);
      bool zero = true;
      for (std::size_t k = 0; k < d; ++k) {
        a_z[k] = ray.direction[k + 1];
        zero = zero && a_z[k] == 0;
      }
      if (zero) continue;  // 0 <= beta: the face at infinity
      // a_z . C (x - o) <= beta
      const Vector a = multiply(transpose(c), a_z);
      const Rational b = Rational(ray.direction[0]) + sympoly::dot(a, hull.origin);
      const auto row = normalize_row(a, b);
      out.system.add_row(to_rational(row.a), Rational(row.b));
      out.incidence.push_back(incident(out.system.row(out.system.rows() - 1), out.system.rhs(out.system.rows() - 1)));
    }
  }
  for (const auto& [e, f] : hull_equations(hull)) {
    const auto row = normalize_row(e, f);
    out.linearity.push_back(out.system.rows());
    out.system.add_row(to_rational(row.a), Rational(row.b));
    out.incidence.push_back(incident(out.system.row(out.system.rows() - 1), out.system.rhs(out.system.rows() - 1)));
  }
  return out;
}

std::vector<FaceIndexSet> facets_dd(const std::vector<Vector>& points) {
  if (points.empty()) throw InputError("facets_dd: no points");
  const auto hull = affine_hull(points);
  if (hull.dimension == 0) return {FaceIndexSet{}};
  const auto z = hull_coordinates(hull, points);
  std::vector<IntVector> rows;
  for (const auto& zi : z) {
    Vector row{Rational(-1)};
    row.insert(row.end(), zi.begin(), zi.end());
    rows.push_back(integer_row(row));
  }
  std::vector<FaceIndexSet> out;
  for (auto& ray : extreme_rays(rows)) out.push_back(std::move(ray.tight));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sympoly
