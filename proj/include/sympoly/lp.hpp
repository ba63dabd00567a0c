#pragma once

#include "sympoly/polyhedron.hpp"

namespace sympoly {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;  // meaningful when optimal
  Vector point;    // an optimal point when optimal, a feasible point when unbounded
};

/// max c.x subject to A x <= b, exact two-phase simplex with Bland's rule.
LpResult solve_lp(const HPolyhedron& p, const Vector& c);

/// min c.x, same conventions.
LpResult minimize_lp(const HPolyhedron& p, const Vector& c);

/// Any point of P, or nullopt when P is empty.
std::optional<Vector> feasible_point(const HPolyhedron& p);

}  // namespace sympoly
