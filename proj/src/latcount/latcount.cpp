#include "sympoly/latcount.hpp"

#include "sympoly/dd.hpp"
#include "sympoly/linalg.hpp"
#include "sympoly/parallel.hpp"
#include "sympoly/redundancy.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace sympoly {

Rational QuasiPolynomial::operator()(const Integer& lambda) const {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), lambda.get_mpz_t(), period);
  const auto& coeffs = components.at(r.get_ui());
  Rational value = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) value = value * Rational(lambda) + coeffs[i];
  return value;
}

namespace {

void require_bounded(const HPolyhedron& p) {
  for (std::size_t i = 0; i < p.dimension(); ++i)
    if (solve_lp(p, unit_vector(p.dimension(), i)).status == LpStatus::unbounded ||
        minimize_lp(p, unit_vector(p.dimension(), i)).status == LpStatus::unbounded)
      throw InputError("polyhedron is unbounded");
}

}  // namespace

DilateCounter::DilateCounter(const HPolyhedron& p) : n_(p.dimension()) {
  const auto irr = remove_redundancy(p);
  if (irr.empty) {
    empty_ = true;
    return;
  }
  require_bounded(p);

  std::vector<IntVector> e;
  Vector f;
  for (auto i : irr.equalities) {
    const auto row = normalize_row(p.row(i), p.rhs(i));
    e.push_back(row.a);
    f.push_back(Rational(row.b));
  }
  const std::size_t r = e.size();
  d_ = n_ - r;
  std::vector<IntVector> u(n_, IntVector(n_, Integer(0)));
  if (r == 0) {
    for (std::size_t i = 0; i < n_; ++i) u[i][i] = 1;
  } else {
    const auto h = column_hermite(e);
    u = h.unimodular;
    Matrix hq;
    for (const auto& row : h.hermite) hq.push_back(to_rational(row));
    hermite_inverse_ = *inverse(hq);
    equality_rhs_ = multiply(hermite_inverse_, f);
  }
  origin_ = zero_vector(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < r; ++k) origin_[i] += Rational(u[i][k]) * equality_rhs_[k];
  for (std::size_t k = r; k < n_; ++k) {
    IntVector col(n_);
    for (std::size_t i = 0; i < n_; ++i) col[i] = u[i][k];
    basis_.push_back(std::move(col));
  }
  if (d_ == 0) return;

  // a.(lambda o + L y) <= lambda b  becomes  (a L) y <= lambda (b - a.o).
  HPolyhedron top(d_);
  for (auto i : irr.inequalities) {
    Vector row(d_);
    for (std::size_t k = 0; k < d_; ++k) row[k] = dot(p.row(i), to_rational(basis_[k]));
    top.add_row(std::move(row), p.rhs(i) - dot(p.row(i), origin_));
  }
  // levels_[k] describes the projection onto y_0..y_k: the hull of the
  // projected vertices.  Projections of lambda P are lambda times these.
  const auto vertices = convert_dd(top).v.vertices;
  levels_.assign(d_, Level{});
  for (std::size_t k = 0; k < d_; ++k) {
    std::set<Vector> projected;
    for (const auto& v : vertices) projected.emplace(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k + 1));
    VPolyhedron shadow;
    shadow.vertices.assign(projected.begin(), projected.end());
    const auto h = convert_dd(shadow);
    if (!h.linearity.empty()) throw VerificationError("projection of a full-dimensional polytope lost dimension");
    levels_[k].a = h.system.a();
    levels_[k].b = h.system.b();
  }
}

bool DilateCounter::lattice_nonempty(const Integer& lambda) const {
  for (const auto& h : equality_rhs_)
    if (!is_integral(h * Rational(lambda))) return false;
  return true;
}

std::optional<std::pair<Integer, Integer>> DilateCounter::bounds(const Integer& lambda, const std::vector<Integer>& y,
                                                                 std::size_t level) const {
  const Level& l = levels_[level];
  std::optional<Integer> lo, hi;
  for (std::size_t i = 0; i < l.a.size(); ++i) {
    const Rational& coef = l.a[i][level];
    if (coef == 0) continue;
    Rational rhs = l.b[i] * Rational(lambda);
    for (std::size_t t = 0; t < level; ++t) rhs -= l.a[i][t] * Rational(y[t]);
    const Rational bound = rhs / coef;
    if (coef > 0) {
      const Integer v = floor(bound);
      if (!hi || v < *hi) hi = v;
    } else {
      const Integer v = ceil(bound);
      if (!lo || v > *lo) lo = v;
    }
  }
  if (!lo || !hi) throw VerificationError("lattice enumeration met an unbounded coordinate");
  if (*lo > *hi) return std::nullopt;
  return std::make_pair(*lo, *hi);
}

template <class Leaf>
void DilateCounter::walk(const Integer& lambda, std::vector<Integer>& y, std::size_t level, Leaf&& leaf,
                         const std::optional<Integer>& first) const {
  auto range = bounds(lambda, y, level);
  if (!range) return;
  auto [lo, hi] = *range;
  if (level == 0 && first) {
    if (*first < lo || *first > hi) return;
    lo = hi = *first;
  }
  if (level + 1 == d_) {
    leaf(lo, hi, y);
    return;
  }
  for (Integer v = lo; v <= hi; ++v) {
    y[level] = v;
    walk(lambda, y, level + 1, leaf);
  }
}

std::optional<std::pair<Integer, Integer>> DilateCounter::first_range(const Integer& lambda) const {
  if (empty_ || d_ == 0 || !lattice_nonempty(lambda)) return std::nullopt;
  return bounds(lambda, {}, 0);
}

Integer DilateCounter::count(const Integer& lambda) const {
  if (empty_ || !lattice_nonempty(lambda)) return 0;
  if (d_ == 0) return 1;
  Integer total = 0;
  std::vector<Integer> y(d_);
  walk(lambda, y, 0, [&](const Integer& lo, const Integer& hi, std::vector<Integer>&) { total += hi - lo + 1; });
  return total;
}

void DilateCounter::for_each(const Integer& lambda, const std::function<void(const IntVector&)>& f,
                             const std::optional<Integer>& first) const {
  if (empty_ || !lattice_nonempty(lambda)) return;
  auto emit = [&](const std::vector<Integer>& y) {
    IntVector x(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Rational xi = origin_[i] * Rational(lambda);
      for (std::size_t k = 0; k < d_; ++k) xi += Rational(basis_[k][i] * y[k]);
      x[i] = xi.get_num();
    }
    f(x);
  };
  if (d_ == 0) {
    if (!first) emit({});
    return;
  }
  std::vector<Integer> y(d_);
  walk(
      lambda, y, 0,
      [&](const Integer& lo, const Integer& hi, std::vector<Integer>& prefix) {
        for (Integer v = lo; v <= hi; ++v) {
          prefix[d_ - 1] = v;
          emit(prefix);
        }
      },
      first);
}

Integer count_lattice_points(const HPolyhedron& p) { return DilateCounter(p).count(1); }

QuasiPolynomial ehrhart(const HPolyhedron& p, std::size_t period_bound) {
  const auto v = convert_dd(p);
  QuasiPolynomial out;
  if (v.empty) {
    out.components = {{Rational(0)}};
    return out;
  }
  if (!v.v.rays.empty()) throw InputError("polyhedron is unbounded");
  Integer period = 1;
  for (const auto& x : v.v.vertices)
    for (const auto& c : x) period = lcm(period, c.get_den());
  if (period > static_cast<unsigned long>(period_bound)) throw InputError("Ehrhart period exceeds the bound");
  out.period = period.get_ui();
  out.degree = affine_hull(v.v.vertices).dimension;
  const std::size_t d = out.degree;

  const DilateCounter counter(p);
  for (std::size_t i = 0; i < out.period; ++i) {
    const std::size_t first = i == 0 ? out.period : i;
    Matrix vandermonde;
    Vector counts;
    for (std::size_t t = 0; t <= d; ++t) {
      const Integer lambda = static_cast<unsigned long>(first + t * out.period);
      Vector row(d + 1);
      Rational power = 1;
      for (std::size_t e = 0; e <= d; ++e, power *= Rational(lambda)) row[e] = power;
      vandermonde.push_back(std::move(row));
      counts.push_back(Rational(counter.count(lambda)));
    }
    out.components.push_back(*solve(vandermonde, counts));
  }
  for (std::size_t i = 0; i < out.period; ++i) {
    const Integer lambda = static_cast<unsigned long>((i == 0 ? out.period : i) + (d + 1) * out.period);
    if (out(lambda) != Rational(counter.count(lambda)))
      throw VerificationError("Ehrhart interpolation disagrees with an extra dilate");
  }
  return out;
}

namespace {

using Simplex = std::vector<std::size_t>;

/// Pulling triangulation of the face spanned by `face` (indices into pts),
/// of affine dimension `dim`: cone from its first vertex over the facets
/// that avoid it.
void triangulate_face(const std::vector<Vector>& pts, const FaceIndexSet& face, std::size_t dim,
                      std::vector<Simplex>& out) {
  if (face.size() == dim + 1) {
    out.push_back(face);
    return;
  }
  std::vector<Vector> local;
  for (auto i : face) local.push_back(pts[i]);
  for (const auto& facet : facets_dd(local)) {
    if (!facet.empty() && facet.front() == 0) continue;
    FaceIndexSet global;
    for (auto i : facet) global.push_back(face[i]);
    std::vector<Simplex> sub;
    triangulate_face(pts, global, dim - 1, sub);
    for (auto& s : sub) {
      s.insert(s.begin(), face.front());
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

Rational volume(const HPolyhedron& p, unsigned seed) {
  const auto irr = remove_redundancy(p);
  if (irr.empty) return 0;
  require_bounded(p);

  // Lattice coordinates of the affine hull.
  const std::size_t d = p.dimension() - irr.equalities.size();
  if (d == 0) return 1;
  std::vector<IntVector> e;
  Vector f;
  for (auto i : irr.equalities) {
    const auto row = normalize_row(p.row(i), p.rhs(i));
    e.push_back(row.a);
    f.push_back(Rational(row.b));
  }
  Matrix basis;
  Vector origin;
  if (e.empty()) {
    basis = identity_matrix(p.dimension());
    origin = zero_vector(p.dimension());
  } else {
    const auto h = column_hermite(e);
    Matrix hq;
    for (const auto& row : h.hermite) hq.push_back(to_rational(row));
    const Vector w = multiply(*inverse(hq), f);
    origin = zero_vector(p.dimension());
    for (std::size_t i = 0; i < p.dimension(); ++i)
      for (std::size_t k = 0; k < e.size(); ++k) origin[i] += Rational(h.unimodular[i][k]) * w[k];
    for (std::size_t k = e.size(); k < p.dimension(); ++k) {
      Vector col(p.dimension());
      for (std::size_t i = 0; i < p.dimension(); ++i) col[i] = h.unimodular[i][k];
      basis.push_back(std::move(col));
    }
  }
  HPolyhedron y_poly(d);
  for (auto i : irr.inequalities) {
    Vector row(d);
    for (std::size_t k = 0; k < d; ++k) row[k] = dot(p.row(i), basis[k]);
    y_poly.add_row(std::move(row), p.rhs(i) - dot(p.row(i), origin));
  }
  const auto pts = convert_dd(y_poly).v.vertices;

  Vector apex = zero_vector(d);
  if (seed == 0) {
    for (const auto& x : pts) apex = add(apex, x);
    apex = scale(apex, Rational(1, static_cast<unsigned long>(pts.size())));
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> weight(1, 1000);
    Rational total = 0;
    for (const auto& x : pts) {
      const Rational w = weight(rng);
      apex = add(apex, scale(x, w));
      total += w;
    }
    apex = scale(apex, 1 / total);
  }

  Integer factorial = 1;
  for (std::size_t t = 2; t <= d; ++t) factorial *= static_cast<unsigned long>(t);
  Rational vol = 0;
  for (const auto& facet : facets_dd(pts)) {
    std::vector<Simplex> simplices;
    triangulate_face(pts, facet, d - 1, simplices);
    for (const auto& s : simplices) {
      Matrix m;
      for (auto i : s) m.push_back(subtract(pts[i], apex));
      vol += abs(determinant(m));
    }
  }
  return vol / Rational(factorial);
}

namespace {

Integer orbit_weight(const IntVector& x, const Blocks& blocks) {
  Integer w = 1;
  for (std::size_t j = 0, s = 0; j < blocks.sizes.size(); s += blocks.sizes[j], ++j) {
    std::map<Integer, std::size_t> mult;
    for (std::size_t i = 0; i < blocks.sizes[j]; ++i) ++mult[x[s + i]];
    Integer num;
    mpz_fac_ui(num.get_mpz_t(), blocks.sizes[j]);
    for (const auto& [value, m] : mult) {
      Integer den;
      mpz_fac_ui(den.get_mpz_t(), m);
      num /= den;
    }
    w *= num;
  }
  return w;
}

}  // namespace

SliceDecomposition slice_decomposition(const HPolyhedron& p, const Blocks& blocks, std::size_t jobs) {
  const std::size_t n = p.dimension();
  if (blocks.dimension() != n) throw InputError("block sizes do not add up to the dimension");
  if (!check_invariance({p, zero_vector(n)}, blocks.group()))
    throw InputError("inequality system is not invariant under the block group");
  const std::size_t k = blocks.sizes.size();
  const auto lattice = fiber_barycenter_lattice(blocks);

  SliceDecomposition out;
  out.invariant_slice = HPolyhedron(k);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Vector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = dot(p.row(i), scale(lattice.generators[j], Rational(static_cast<unsigned long>(blocks.sizes[j]))));
    out.invariant_slice.add_row(std::move(row), p.rhs(i));
  }
  if (remove_redundancy(p).empty) return out;
  require_bounded(p);

  IntVector lo(k), hi(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Vector indicator = scale(lattice.generators[j], Rational(static_cast<unsigned long>(blocks.sizes[j])));
    hi[j] = floor(solve_lp(p, indicator).value);
    lo[j] = ceil(minimize_lp(p, indicator).value);
    if (lo[j] > hi[j]) return out;
  }

  // Fiber direction space: differences of consecutive coordinates in a block.
  Matrix basis;
  for (std::size_t j = 0, s = 0; j < k; s += blocks.sizes[j], ++j)
    for (std::size_t i = 0; i + 1 < blocks.sizes[j]; ++i) {
      Vector v = zero_vector(n);
      v[s + i] = 1;
      v[s + i + 1] = -1;
      basis.push_back(std::move(v));
    }

  // Barycenters of P are the anchors inside P: projecting an invariant
  // convex set onto the fixed space lands inside the set itself.
  IntVector cur = lo;
  for (;;) {
    const Vector anchor = lattice.anchor(cur);
    if (p.contains(anchor)) {
      FiberSlice slice;
      slice.sums = cur;
      slice.anchor = anchor;
      slice.orbit_size = 1;  // block groups fix the invariant subspace pointwise
      slice.basis = basis;
      if (!basis.empty()) slice.polytope = HPolyhedron(basis.size());
      for (std::size_t i = 0; i < p.rows() && !basis.empty(); ++i) {
        Vector row(basis.size());
        for (std::size_t t = 0; t < basis.size(); ++t) row[t] = dot(p.row(i), basis[t]);
        slice.polytope.add_row(std::move(row), p.slack(i, anchor));
      }
      out.fibers.push_back(std::move(slice));
    }
    std::size_t j = 0;
    while (j < k && cur[j] == hi[j]) cur[j] = lo[j], ++j;
    if (j == k) break;
    cur[j] += 1;
  }

  // Fundamental domain of the block group: x_i >= x_{i+1} inside blocks.
  // Each integral point there stands for its whole orbit, which lies in the
  // fiber of the same block sums.
  HPolyhedron domain = p;
  for (std::size_t j = 0, s = 0; j < k; s += blocks.sizes[j], ++j)
    for (std::size_t i = 0; i + 1 < blocks.sizes[j]; ++i) {
      Vector row = zero_vector(n);
      row[s + i] = -1;
      row[s + i + 1] = 1;
      domain.add_row(std::move(row), 0);
    }
  std::map<IntVector, std::size_t> fiber_index;
  for (std::size_t i = 0; i < out.fibers.size(); ++i) fiber_index.emplace(out.fibers[i].sums, i);
  for (auto& f : out.fibers) f.points = 0;

  const DilateCounter counter(domain);
  auto tally = [&](std::vector<Integer>& points, const std::optional<Integer>& first) {
    counter.for_each(
        1,
        [&](const IntVector& x) {
          const auto it = fiber_index.find(blocks.sums(x));
          if (it == fiber_index.end()) throw VerificationError("integral point outside every fiber");
          points[it->second] += orbit_weight(x, blocks);
        },
        first);
  };
  const auto range = counter.first_range(1);
  if (!range || jobs <= 1) {
    std::vector<Integer> points(out.fibers.size(), Integer(0));
    tally(points, std::nullopt);
    for (std::size_t i = 0; i < points.size(); ++i) out.fibers[i].points = points[i];
  } else {
    const std::size_t width = Integer(range->second - range->first + 1).get_ui();
    std::vector<std::vector<Integer>> partial(width, std::vector<Integer>(out.fibers.size(), Integer(0)));
    parallel_for(width, jobs, [&](std::size_t t) {
      tally(partial[t], Integer(range->first + static_cast<unsigned long>(t)));
    });
    for (const auto& part : partial)
      for (std::size_t i = 0; i < part.size(); ++i) out.fibers[i].points += part[i];
  }
  return out;
}

Integer count_with_symmetry(const HPolyhedron& p, const Blocks& blocks, std::size_t jobs) {
  Integer total = 0;
  for (const auto& f : slice_decomposition(p, blocks, jobs).fibers) total += f.orbit_size * f.points;
  return total;
}

}  // namespace sympoly
