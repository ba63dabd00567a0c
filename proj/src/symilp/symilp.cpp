#include "sympoly/symilp.hpp"

#include "sympoly/dd.hpp"
#include "sympoly/linalg.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace sympoly {

Matrix permutation_matrix(const Permutation& perm) {
  const std::size_t n = perm.degree();
  Matrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[perm[i]][i] = 1;
  return m;
}

namespace {

std::vector<Matrix> matrices_of(const PermutationGroup& g) {
  std::vector<Matrix> out;
  for (const auto& p : g.generators()) out.push_back(permutation_matrix(p));
  return out;
}

std::vector<NormalizedRow> sorted_rows(const Matrix& a, const Vector& b) {
  std::vector<NormalizedRow> rows;
  for (std::size_t i = 0; i < a.size(); ++i) rows.push_back(normalize_row(a[i], b[i]));
  std::sort(rows.begin(), rows.end());
  return rows;
}

Vector apply_perm(const Permutation& p, const Vector& z) {
  Vector out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[p[i]] = z[i];
  return out;
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

InvariantSubspace invariant_subspace(const std::vector<Matrix>& generators, std::size_t n) {
  Matrix stacked;
  for (const auto& g : generators) {
    if (g.size() != n) throw InputError("invariant_subspace: generator has the wrong size");
    for (std::size_t i = 0; i < n; ++i) {
      Vector row = g[i];
      row[i] -= 1;
      stacked.push_back(std::move(row));
    }
  }
  InvariantSubspace out;
  out.basis = nullspace(stacked, n);
  out.projector = zero_matrix(n, n);
  if (out.basis.empty()) return out;
  // P = B (B^T B)^-1 B^T with the basis vectors as columns of B.
  Matrix gram(out.basis.size(), Vector(out.basis.size()));
  for (std::size_t i = 0; i < out.basis.size(); ++i)
    for (std::size_t j = 0; j < out.basis.size(); ++j) gram[i][j] = dot(out.basis[i], out.basis[j]);
  const Matrix ginv = *inverse(gram);
  const Matrix b = transpose(out.basis);  // n x k
  out.projector = multiply(multiply(b, ginv), out.basis);
  return out;
}

InvariantSubspace invariant_subspace(const PermutationGroup& g) { return invariant_subspace(matrices_of(g), g.degree()); }

bool check_invariance(const LinearProgram& lp, const std::vector<Matrix>& generators) {
  const std::size_t n = lp.p.dimension();
  if (lp.c.size() != n) throw InputError("check_invariance: objective has the wrong dimension");
  const auto original = sorted_rows(lp.p.a(), lp.p.b());
  for (const auto& g : generators) {
    const auto ginv = inverse(g);
    if (!ginv) return false;
    // x' = g x turns a.x <= b into (a g^-1).x' <= b.
    Matrix image;
    for (const auto& a : lp.p.a()) image.push_back(multiply(transpose(*ginv), a));
    if (sorted_rows(image, lp.p.b()) != original) return false;
    if (multiply(transpose(g), lp.c) != lp.c) return false;
  }
  return true;
}

bool check_invariance(const LinearProgram& lp, const PermutationGroup& g) {
  return check_invariance(lp, matrices_of(g));
}

LpResult solve_lp_reduced(const LinearProgram& lp, const InvariantSubspace& fixed) {
  const std::size_t n = lp.p.dimension();
  const std::size_t k = fixed.dimension();
  if (k == 0) {
    LpResult r;
    r.point = zero_vector(n);
    r.status = lp.p.contains(r.point) ? LpStatus::optimal : LpStatus::infeasible;
    r.value = 0;
    return r;
  }
  HPolyhedron reduced(k);
  for (std::size_t i = 0; i < lp.p.rows(); ++i) {
    Vector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = dot(lp.p.row(i), fixed.basis[j]);
    reduced.add_row(std::move(row), lp.p.rhs(i));
  }
  Vector c(k);
  for (std::size_t j = 0; j < k; ++j) c[j] = dot(lp.c, fixed.basis[j]);
  auto r = solve_lp(reduced, c);
  if (r.status == LpStatus::infeasible) return r;
  Vector x = zero_vector(n);
  for (std::size_t j = 0; j < k; ++j) x = add(x, scale(fixed.basis[j], r.point[j]));
  r.point = std::move(x);
  return r;
}

std::optional<std::vector<Vector>> vector_orbit(const PermutationGroup& g, const Vector& z, std::size_t budget) {
  if (z.size() != g.degree()) throw InputError("vector_orbit: dimension does not match the group degree");
  std::set<Vector> seen{z};
  std::deque<Vector> queue{z};
  while (!queue.empty()) {
    const Vector x = std::move(queue.front());
    queue.pop_front();
    for (const auto& p : g.generators()) {
      Vector y = apply_perm(p, x);
      if (seen.insert(y).second) {
        if (seen.size() > budget) return std::nullopt;
        queue.push_back(std::move(y));
      }
    }
  }
  return std::vector<Vector>(seen.begin(), seen.end());
}

Vector orbit_barycenter(const PermutationGroup& g, const Vector& z, std::size_t budget) {
  const auto orbit = vector_orbit(g, z, budget);
  if (!orbit) throw InputError("orbit_barycenter: orbit exceeds the budget");
  Vector sum = zero_vector(z.size());
  for (const auto& x : *orbit) sum = add(sum, x);
  return scale(sum, Rational(1, static_cast<unsigned long>(orbit->size())));
}

std::size_t Blocks::dimension() const { return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}); }

std::size_t Blocks::start(std::size_t block) const {
  return std::accumulate(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(block), std::size_t{0});
}

std::size_t Blocks::block_of(std::size_t coordinate) const {
  std::size_t end = 0;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    end += sizes[j];
    if (coordinate < end) return j;
  }
  throw InputError("Blocks::block_of: coordinate out of range");
}

PermutationGroup Blocks::group() const {
  const std::size_t n = dimension();
  std::vector<Permutation> gens;
  Integer order = 1;
  for (std::size_t j = 0, s = 0; j < sizes.size(); s += sizes[j], ++j) {
    const std::size_t m = sizes[j];
    if (m == 0) throw InputError("Blocks: empty block");
    for (std::size_t t = 2; t <= m; ++t) order *= static_cast<unsigned long>(t);
    if (m < 2) continue;
    std::vector<Point> swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), Point{0});
    std::iota(cycle.begin(), cycle.end(), Point{0});
    std::swap(swap[s], swap[s + 1]);
    gens.emplace_back(swap);
    if (m > 2) {
      for (std::size_t i = 0; i < m; ++i) cycle[s + i] = static_cast<Point>(s + (i + 1) % m);
      gens.emplace_back(cycle);
    }
  }
  return PermutationGroup(n, gens, {}, order);
}

IntVector Blocks::sums(const IntVector& x) const {
  if (x.size() != dimension()) throw InputError("Blocks::sums: dimension mismatch");
  IntVector out(sizes.size(), Integer(0));
  for (std::size_t i = 0; i < x.size(); ++i) out[block_of(i)] += x[i];
  return out;
}

std::optional<Blocks> detect_blocks(const PermutationGroup& g) {
  Blocks blocks;
  Integer order = 1;
  for (std::size_t i = 0; i < g.degree();) {
    const auto orbit = g.orbit(static_cast<Point>(i));
    if (orbit.front() != i || orbit.back() != i + orbit.size() - 1) return std::nullopt;
    blocks.sizes.push_back(orbit.size());
    for (std::size_t t = 2; t <= orbit.size(); ++t) order *= static_cast<unsigned long>(t);
    i += orbit.size();
  }
  if (g.order() != order) return std::nullopt;
  return blocks;
}

Vector BarycenterLattice::anchor(const IntVector& sums) const {
  if (sums.size() != blocks.sizes.size()) throw InputError("anchor: wrong number of block sums");
  Vector x = zero_vector(blocks.dimension());
  for (std::size_t j = 0; j < sums.size(); ++j) x = add(x, scale(generators[j], Rational(sums[j])));
  return x;
}

BarycenterLattice fiber_barycenter_lattice(const Blocks& blocks) {
  BarycenterLattice out{blocks, {}};
  const std::size_t n = blocks.dimension();
  for (std::size_t j = 0, s = 0; j < blocks.sizes.size(); s += blocks.sizes[j], ++j) {
    Vector v = zero_vector(n);
    for (std::size_t i = 0; i < blocks.sizes[j]; ++i) v[s + i] = Rational(1, static_cast<unsigned long>(blocks.sizes[j]));
    out.generators.push_back(std::move(v));
  }
  return out;
}

CorePoint canonical_core_point(const Blocks& blocks, const IntVector& sums) {
  if (sums.size() != blocks.sizes.size()) throw InputError("canonical_core_point: wrong number of block sums");
  CorePoint out{IntVector(), Integer(1)};
  for (std::size_t j = 0; j < sums.size(); ++j) {
    const Integer n = static_cast<unsigned long>(blocks.sizes[j]);
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), sums[j].get_mpz_t(), n.get_mpz_t());
    const std::size_t high = r.get_ui();
    for (std::size_t i = 0; i < blocks.sizes[j]; ++i) out.z.push_back(i < high ? Integer(q + 1) : q);
    out.orbit_size *= binomial(blocks.sizes[j], high);
  }
  return out;
}

CoreStatus is_core_point(const PermutationGroup& g, const IntVector& z, std::size_t budget) {
  const auto orbit = vector_orbit(g, to_rational(z), budget);
  if (!orbit) return CoreStatus::unknown;
  if (orbit->size() == 1) return CoreStatus::core;

  VPolyhedron hull_v;
  hull_v.vertices = *orbit;
  const auto hull = convert_dd(hull_v);
  std::vector<bool> equality(hull.system.rows(), false);
  for (auto i : hull.linearity) equality[i] = true;
  auto inside = [&](const Vector& x) {
    for (std::size_t i = 0; i < hull.system.rows(); ++i) {
      const Rational lhs = dot(hull.system.row(i), x);
      if (equality[i] ? lhs != hull.system.rhs(i) : lhs > hull.system.rhs(i)) return false;
    }
    return true;
  };

  const std::size_t n = z.size();
  IntVector lo(n), hi(n);
  Integer box = 1;
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = hi[i] = z[i];
    for (const auto& x : *orbit) {
      lo[i] = std::min(lo[i], x[i].get_num());
      hi[i] = std::max(hi[i], x[i].get_num());
    }
    box *= hi[i] - lo[i] + 1;
  }
  if (box > 1000000) return CoreStatus::unknown;

  const std::set<Vector> members(orbit->begin(), orbit->end());
  IntVector cur = lo;
  for (;;) {
    const Vector x = to_rational(cur);
    if (!members.count(x) && inside(x)) return CoreStatus::not_core;
    std::size_t i = 0;
    while (i < n && cur[i] == hi[i]) cur[i] = lo[i], ++i;
    if (i == n) break;
    cur[i] += 1;
  }
  return CoreStatus::core;
}

namespace {

struct Fiber {
  IntVector sums;
  Rational distance;
  Rational value;
};

void require_invariant(const HPolyhedron& p, const Blocks& blocks) {
  if (blocks.dimension() != p.dimension()) throw InputError("block sizes do not add up to the dimension");
  if (!check_invariance({p, zero_vector(p.dimension())}, blocks.group()))
    throw InputError("inequality system is not invariant under the block group");
}

/// Candidate fibers with their distance from the projected relaxation point
/// and objective value.  Empty optional means the projection is unbounded.
std::optional<std::vector<Fiber>> candidate_fibers(const HPolyhedron& p, const Blocks& blocks, const Vector& c,
                                                   const std::optional<SumBounds>& bounds, const Vector& relaxed) {
  const std::size_t k = blocks.sizes.size();
  const auto lattice = fiber_barycenter_lattice(blocks);
  IntVector lo(k), hi(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Vector indicator = scale(lattice.generators[j], Rational(static_cast<unsigned long>(blocks.sizes[j])));
    const auto up = solve_lp(p, indicator);
    const auto down = minimize_lp(p, indicator);
    if (up.status == LpStatus::infeasible) return std::vector<Fiber>{};
    if (up.status == LpStatus::optimal) hi[j] = floor(up.value);
    if (down.status == LpStatus::optimal) lo[j] = ceil(down.value);
    if (bounds) {
      if (up.status == LpStatus::unbounded) hi[j] = bounds->upper.at(j);
      else hi[j] = std::min(hi[j], bounds->upper.at(j));
      if (down.status == LpStatus::unbounded) lo[j] = bounds->lower.at(j);
      else lo[j] = std::max(lo[j], bounds->lower.at(j));
    } else if (up.status == LpStatus::unbounded || down.status == LpStatus::unbounded) {
      return std::nullopt;
    }
    if (lo[j] > hi[j]) return std::vector<Fiber>{};
  }

  Vector target(k);
  for (std::size_t i = 0; i < relaxed.size(); ++i) target[blocks.block_of(i)] += relaxed[i];

  std::vector<Fiber> out;
  IntVector cur = lo;
  for (;;) {
    Fiber f{cur, 0, 0};
    for (std::size_t j = 0; j < k; ++j) {
      const Rational diff = Rational(cur[j]) - target[j];
      f.distance += diff * diff / Rational(static_cast<unsigned long>(blocks.sizes[j]));
      f.value += c[blocks.start(j)] * Rational(cur[j]);
    }
    out.push_back(std::move(f));
    std::size_t j = 0;
    while (j < k && cur[j] == hi[j]) cur[j] = lo[j], ++j;
    if (j == k) break;
    cur[j] += 1;
  }
  return out;
}

IlpResult search(const HPolyhedron& p, const Blocks& blocks, const Vector& c, bool optimize,
                 const std::optional<SumBounds>& bounds) {
  require_invariant(p, blocks);
  IlpResult result;
  const auto relaxation = optimize ? solve_lp(p, c) : LpResult{};
  Vector relaxed;
  if (optimize && relaxation.status != LpStatus::infeasible) {
    relaxed = relaxation.point;
  } else if (auto x = feasible_point(p)) {
    relaxed = *x;
  } else {
    return result;
  }
  auto fibers = candidate_fibers(p, blocks, c, bounds, relaxed);
  if (!fibers) {
    result.status = IlpStatus::unbounded;
    return result;
  }
  std::sort(fibers->begin(), fibers->end(), [&](const Fiber& a, const Fiber& b) {
    if (optimize && a.value != b.value) return a.value > b.value;
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.sums < b.sums;
  });
  // P is invariant and convex, so a fiber meets P in an integral point iff
  // its balanced point (which lies in the hull of every orbit in the fiber)
  // is in P.
  for (const auto& f : *fibers) {
    ++result.fibers_tested;
    auto core = canonical_core_point(blocks, f.sums);
    if (p.contains(to_rational(core.z))) {
      result.status = IlpStatus::feasible;
      result.point = std::move(core.z);
      if (optimize) result.value = dot(c, to_rational(result.point));
      return result;
    }
  }
  return result;
}

}  // namespace

IlpResult symmetric_ilp_feasible(const HPolyhedron& p, const Blocks& blocks, const std::optional<SumBounds>& bounds) {
  return search(p, blocks, zero_vector(p.dimension()), false, bounds);
}

IlpResult symmetric_ilp_maximize(const HPolyhedron& p, const Vector& c, const Blocks& blocks,
                                 const std::optional<SumBounds>& bounds) {
  if (c.size() != p.dimension()) throw InputError("objective has the wrong dimension");
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != c[blocks.start(blocks.block_of(i))]) throw InputError("objective is not constant on the blocks");
  return search(p, blocks, c, true, bounds);
}

}  // namespace sympoly
