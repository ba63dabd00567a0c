#pragma once

#include "sympoly/rational.hpp"

#include <optional>

namespace sympoly {

/// Exact rank of a rational matrix, computed by fraction-free (Bareiss)
/// elimination on the integerized rows.
std::size_t rank(const Matrix& m);

struct EchelonForm {
  Matrix rows;                        // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;    // pivot column per row
};

/// Reduced row echelon form over the rationals.
EchelonForm reduced_echelon(Matrix m);

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
Matrix nullspace(const Matrix& m, std::size_t cols);

/// Some solution of m x = rhs, or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);

std::optional<Matrix> inverse(const Matrix& m);
Rational determinant(Matrix m);

/// Indices of a maximal linearly independent subset of the rows, chosen
/// greedily in row order.
std::vector<std::size_t> independent_rows(const Matrix& m);

/// Column-style Hermite decomposition of an integer matrix E (r x n, rank r):
/// returns a unimodular n x n matrix U with E U = [H | 0], H lower triangular
/// and nonsingular.
struct HermiteDecomposition {
  std::vector<IntVector> unimodular;  // U, n x n
  std::vector<IntVector> hermite;     // H, r x r
};
HermiteDecomposition column_hermite(const std::vector<IntVector>& e);

}  // namespace sympoly
