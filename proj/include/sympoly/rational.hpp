#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sympoly {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense rational vector / row-major matrix.  All toolkit arithmetic is exact.
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;
using IntVector = std::vector<Integer>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the input itself is unusable (dimension mismatch, unbounded
/// where boundedness is required, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Raised when an internal self-check fails.  Indicates a bug.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// p/q in lowest terms (the two-argument mpq_class constructor does not
/// canonicalize).
inline Rational make_rational(const Integer& p, const Integer& q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(const Vector& v);

/// Parses `p`, `-p`, `p/q`.  Returns nullopt on malformed text or q == 0.
std::optional<Rational> parse_rational(std::string_view text);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Matrix identity_matrix(std::size_t n);
Matrix zero_matrix(std::size_t rows, std::size_t cols);

Rational dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Vector& a, const Rational& s);
bool is_zero(const Vector& v);

Vector multiply(const Matrix& m, const Vector& v);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
bool is_integral(const Rational& q);
bool is_integral(const Vector& v);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Positive multiple of `v` with coprime integer entries (zero stays zero).
IntVector primitive_integer(const Vector& v);
IntVector primitive_integer(const IntVector& v);
Vector to_rational(const IntVector& v);

/// Lexicographic comparison helpers for deterministic ordering.
bool lex_less(const Vector& a, const Vector& b);
bool lex_less(const IntVector& a, const IntVector& b);

}  // namespace sympoly
