// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

// Graded signs and the finite cohomology model of the rigidified inertia of
// the singular divisor: sectors, a homogeneous basis, the standard pairing,
// and the dual bases used on the two sides of the degeneration formula.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "degenkit/error.hpp"
#include "degenkit/rational.hpp"

namespace degenkit {

enum class Parity : unsigned char { even = 0, odd = 1 };

inline bool is_odd(Parity p) { return p == Parity::odd; }
inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<unsigned char>(a) ^ static_cast<unsigned char>(b));
}
std::string_view to_string(Parity p);
Parity parse_parity(std::string_view text);

/// Sign of reordering graded elements. `permutation[p]` is the original
/// position of the element placed at position p; `parities` is indexed by
/// original position. Returns (-1)^k, k = number of odd-odd pairs whose
/// relative order is reversed. Throws ContractViolation on size mismatch or
/// if `permutation` is not a bijection.
int koszul_sign(std::span<const std::size_t> permutation,
                std::span<const Parity> parities);

struct Sector {
  std::string id;
  int band_order = 1;
  std::string involution_image;
};

struct BasisClass {
  std::string id;
  std::string sector;
  Parity parity = Parity::even;
};

/// Finite model of H^*(rigidified inertia of D). Immutable once built; the
/// constructor validates everything and precomputes the dual basis.
class SectorCatalog {
 public:
  /// `involution`, if given, is the matrix of iota^* on the basis:
  /// entry [i][j] is the coefficient of basis[i] in iota^*(basis[j]). When
  /// absent, iota^* is the identity, which requires every sector to be its
  /// own involution image.
  SectorCatalog(std::vector<Sector> sectors, std::vector<BasisClass> basis,
                Matrix pairing, std::optional<Matrix> involution = std::nullopt);

  /// One untwisted sector with a single even class pairing to 1.
  static SectorCatalog point(std::string sector_id = "pt", std::string class_id = "1");

  std::size_t dimension() const { return basis_.size(); }
  const std::vector<Sector>& sectors() const { return sectors_; }
  const std::vector<BasisClass>& basis() const { return basis_; }
  const Matrix& pairing() const { return pairing_; }
  const Matrix& involution() const { return involution_; }
  const Sector& sector(std::string_view id) const;
  const Sector& sector_of(std::size_t basis_index) const;
  int band_order_of(std::size_t basis_index) const;
  std::optional<std::size_t> index_of(std::string_view class_id) const;
  std::size_t require_index(std::string_view class_id) const;

  /// Non-fatal findings, e.g. pairing entries violating graded symmetry.
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Rows are the coordinates of delta_i^vee; see dual_basis().
  const Matrix& dual_coordinates() const { return dual_; }

 private:
  std::vector<Sector> sectors_;
  std::vector<BasisClass> basis_;
  Matrix pairing_;
  Matrix involution_;
  Matrix dual_;
  std::unordered_map<std::string, std::size_t> class_index_;
  std::unordered_map<std::string, std::size_t> sector_index_;
  std::vector<std::size_t> sector_of_class_;
  std::vector<std::string> warnings_;
};

/// Thrown for a singular pairing; carries a null vector v with P v = 0.
class SingularPairingError : public ValidationError {
 public:
  SingularPairingError(const std::string& what, Vector null_vector, std::string path = "pairing")
      : ValidationError(what, std::move(path)), null_vector_(std::move(null_vector)) {}
  const Vector& null_vector() const noexcept { return null_vector_; }

 private:
  Vector null_vector_;
};

/// Standard pairing of two coordinate vectors, x on the left.
Rational standard_pairing(const SectorCatalog& catalog, const Vector& x, const Vector& y);

/// The Chen-Ruan style pairing on the rigidified inertia:
/// sum_{a,b} x_a y_b <b_a, b_b> / r(sector of b_a).
Rational chen_ruan_pairing(const SectorCatalog& catalog, const Vector& x, const Vector& y);

Vector apply_involution(const SectorCatalog& catalog, const Vector& x);

/// delta_i^vee for each basis element, normalized so that
/// pairing(delta_i^vee, delta_j) = [i == j] with the dual on the left.
std::vector<Vector> dual_basis(const SectorCatalog& catalog);

/// r * iota^*(delta^vee), r the band order of delta's sector.
Vector chen_ruan_dual(std::size_t basis_index, const SectorCatalog& catalog);

Vector unit_vector(std::size_t n, std::size_t i);

}  // namespace degenkit
