// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

#include "degenkit/error.hpp"

namespace degenkit {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ContractViolation("rational with zero denominator");
  Rational r(Integer(std::to_string(num)), Integer(std::to_string(den)));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

bool is_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num, true) || !is_integer_text(den, false))
    throw ValidationError("not a rational \"" + std::string(text) + "\"");
  std::string num_s(num);
  if (!num_s.empty() && num_s[0] == '+') num_s.erase(0, 1);
  Integer d{std::string(den)};
  if (d == 0) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
  Rational r(Integer(num_s), d);
  r.canonicalize();
  return r;
}

Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, Vector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), Vector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t p = k == 0 ? 0 : b[0].size();
  Matrix c(n, Vector(p, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < p; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

Vector multiply(const Matrix& a, const Vector& x) {
  Vector y(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

Matrix try_inverse(const Matrix& m, Vector* null_vector) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw ContractViolation("matrix is not square");
  // Augmented elimination [m | I] -> [rref(m) | E].
  Matrix a = m;
  Matrix inv = identity_matrix(n);
  std::vector<std::size_t> pivot_col_of_row;
  std::vector<bool> is_pivot(n, false);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[row]);
    std::swap(inv[piv], inv[row]);
    const Rational scale = a[row][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[row][j] /= scale;
      inv[row][j] /= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[row][j];
        inv[r][j] -= f * inv[row][j];
      }
    }
    pivot_col_of_row.push_back(col);
    is_pivot[col] = true;
    ++row;
  }
  if (row == n) return inv;
  if (null_vector != nullptr) {
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    Vector v(n, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
      v[pivot_col_of_row[r]] = -a[r][free_col];
    *null_vector = std::move(v);
  }
  return {};
}

}  // namespace degenkit
