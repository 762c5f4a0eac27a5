// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace degenkit {

/// Exact rational number. Always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// "p/q" with q > 0 and gcd(p, q) = 1; integers are written "p/1".
std::string to_string(const Rational& value);

/// Accepts "p/q" or "p" (optional sign on p). Throws ValidationError.
Rational parse_rational(std::string_view text);

Rational factorial(unsigned n);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

Matrix identity_matrix(std::size_t n);
Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, const Vector& x);

/// Gaussian elimination over Q. Returns the inverse, or an empty matrix
/// when `m` is singular; in that case `null_vector` (if given) receives a
/// nonzero vector v with m * v = 0.
Matrix try_inverse(const Matrix& m, Vector* null_vector = nullptr);

}  // namespace degenkit
