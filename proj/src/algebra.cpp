// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit/algebra.hpp"

#include <algorithm>

namespace degenkit {

std::string_view to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

Parity parse_parity(std::string_view text) {
  if (text == "even" || text == "+" || text == "0") return Parity::even;
  if (text == "odd" || text == "-" || text == "1") return Parity::odd;
  throw ValidationError("parity must be \"even\" or \"odd\", got \"" + std::string(text) + "\"");
}

int koszul_sign(std::span<const std::size_t> permutation, std::span<const Parity> parities) {
  const std::size_t n = permutation.size();
  if (parities.size() != n)
    throw ContractViolation("koszul_sign: permutation has " + std::to_string(n) +
                            " entries but " + std::to_string(parities.size()) + " parities");
  std::vector<bool> seen(n, false);
  for (std::size_t p : permutation) {
    if (p >= n || seen[p]) throw ContractViolation("koszul_sign: not a permutation");
    seen[p] = true;
  }
  int sign = 1;
  for (std::size_t a = 0; a < n; ++a) {
    if (!is_odd(parities[permutation[a]])) continue;
    for (std::size_t b = a + 1; b < n; ++b)
      if (is_odd(parities[permutation[b]]) && permutation[b] < permutation[a]) sign = -sign;
  }
  return sign;
}

SectorCatalog::SectorCatalog(std::vector<Sector> sectors, std::vector<BasisClass> basis,
                             Matrix pairing, std::optional<Matrix> involution)
    : sectors_(std::move(sectors)), basis_(std::move(basis)), pairing_(std::move(pairing)) {
  for (std::size_t s = 0; s < sectors_.size(); ++s) {
    const auto& sec = sectors_[s];
    if (sec.id.empty()) throw ValidationError("empty sector id", "sectors/" + std::to_string(s));
    if (sec.band_order < 1)
      throw ValidationError("band_order must be a positive integer",
                            "sectors/" + std::to_string(s) + "/band_order");
    if (!sector_index_.emplace(sec.id, s).second)
      throw ValidationError("duplicate sector id \"" + sec.id + "\"", "sectors/" + std::to_string(s));
  }
  for (std::size_t s = 0; s < sectors_.size(); ++s) {
    const auto& sec = sectors_[s];
    const auto it = sector_index_.find(sec.involution_image);
    const std::string path = "sectors/" + std::to_string(s) + "/involution_image";
    if (it == sector_index_.end())
      throw ValidationError("involution image \"" + sec.involution_image + "\" is not a sector", path);
    const auto& img = sectors_[it->second];
    if (img.involution_image != sec.id)
      throw ValidationError("sector involution is not of order <= 2", path);
    if (img.band_order != sec.band_order)
      throw ValidationError("sector and its involution image have different band orders", path);
  }

  const std::size_t n = basis_.size();
  sector_of_class_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& b = basis_[i];
    const std::string path = "basis/" + std::to_string(i);
    if (b.id.empty()) throw ValidationError("empty basis class id", path);
    if (!class_index_.emplace(b.id, i).second)
      throw ValidationError("duplicate basis class id \"" + b.id + "\"", path);
    const auto it = sector_index_.find(b.sector);
    if (it == sector_index_.end())
      throw ValidationError("unknown sector \"" + b.sector + "\"", path + "/sector");
    sector_of_class_[i] = it->second;
  }

  if (pairing_.size() != n)
    throw ValidationError("pairing must be " + std::to_string(n) + "x" + std::to_string(n), "pairing");
  for (std::size_t i = 0; i < n; ++i) {
    if (pairing_[i].size() != n)
      throw ValidationError("pairing row has wrong length", "pairing/" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (pairing_[i][j] == 0) continue;
      const std::string path = "pairing/" + std::to_string(i) + "/" + std::to_string(j);
      // Classes on distinct components of the inertia multiply to zero, and
      // an integrand of odd total parity integrates to zero.
      if (sector_of_class_[i] != sector_of_class_[j])
        throw ValidationError("nonzero pairing between classes on different sectors", path);
      if (basis_[i].parity != basis_[j].parity)
        throw ValidationError("nonzero pairing between classes of different parity", path);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool both_odd = is_odd(basis_[i].parity) && is_odd(basis_[j].parity);
      const Rational expected = both_odd ? Rational(-pairing_[j][i]) : pairing_[j][i];
      if (pairing_[i][j] != expected)
        warnings_.push_back("pairing(" + basis_[i].id + ", " + basis_[j].id +
                            ") is not graded-symmetric");
    }

  Vector null;
  Matrix inv = try_inverse(pairing_, &null);
  if (inv.empty()) {
    std::string msg = "pairing matrix is singular; null vector (";
    for (std::size_t i = 0; i < null.size(); ++i) msg += (i ? ", " : "") + to_string(null[i]);
    throw SingularPairingError(msg + ")", null);
  }
  // Row i of P^{-1} solves sum_a X[i][a] P[a][j] = [i == j].
  dual_ = std::move(inv);

  if (involution) {
    involution_ = std::move(*involution);
    if (involution_.size() != n)
      throw ValidationError("involution matrix has wrong size", "involution");
    for (const auto& row : involution_)
      if (row.size() != n) throw ValidationError("involution matrix has wrong size", "involution");
  } else {
    for (const auto& sec : sectors_)
      if (sec.involution_image != sec.id)
        throw ValidationError("basis involution required: sector \"" + sec.id +
                                  "\" is not self-conjugate",
                              "basis_involution");
    involution_ = identity_matrix(n);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& src_sector = sectors_[sector_of_class_[j]];
    for (std::size_t i = 0; i < n; ++i) {
      if (involution_[i][j] == 0) continue;
      const std::string path = "involution/" + std::to_string(i) + "/" + std::to_string(j);
      if (sectors_[sector_of_class_[i]].id != src_sector.involution_image)
        throw ValidationError("iota^*(" + basis_[j].id + ") leaves the image sector", path);
      if (basis_[i].parity != basis_[j].parity)
        throw ValidationError("iota^* does not preserve parity", path);
    }
  }
  if (multiply(involution_, involution_) != identity_matrix(n))
    throw ValidationError("iota^* is not an involution on the basis", "involution");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational lhs =
          standard_pairing(*this, apply_involution(*this, unit_vector(n, i)),
                           apply_involution(*this, unit_vector(n, j)));
      if (lhs != pairing_[i][j]) {
        warnings_.push_back("iota^* does not preserve the pairing on (" + basis_[i].id + ", " +
                            basis_[j].id + ")");
        i = n;
        break;
      }
    }
}

SectorCatalog SectorCatalog::point(std::string sector_id, std::string class_id) {
  std::vector<Sector> sectors{{sector_id, 1, sector_id}};
  std::vector<BasisClass> basis{{std::move(class_id), std::move(sector_id), Parity::even}};
  return SectorCatalog(std::move(sectors), std::move(basis), identity_matrix(1));
}

const Sector& SectorCatalog::sector(std::string_view id) const {
  const auto it = sector_index_.find(std::string(id));
  if (it == sector_index_.end())
    throw ValidationError("unknown sector \"" + std::string(id) + "\"");
  return sectors_[it->second];
}

const Sector& SectorCatalog::sector_of(std::size_t basis_index) const {
  return sectors_.at(sector_of_class_.at(basis_index));
}

int SectorCatalog::band_order_of(std::size_t basis_index) const {
  return sector_of(basis_index).band_order;
}

std::optional<std::size_t> SectorCatalog::index_of(std::string_view class_id) const {
  const auto it = class_index_.find(std::string(class_id));
  if (it == class_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SectorCatalog::require_index(std::string_view class_id) const {
  if (auto i = index_of(class_id)) return *i;
  throw ValidationError("unknown basis class \"" + std::string(class_id) + "\"");
}

Rational standard_pairing(const SectorCatalog& catalog, const Vector& x, const Vector& y) {
  const auto& p = catalog.pairing();
  Rational sum = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < y.size(); ++b)
      if (y[b] != 0 && p[a][b] != 0) sum += x[a] * y[b] * p[a][b];
  }
  return sum;
}

Rational chen_ruan_pairing(const SectorCatalog& catalog, const Vector& x, const Vector& y) {
  const auto& p = catalog.pairing();
  Rational sum = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] == 0) continue;
    Rational row = 0;
    for (std::size_t b = 0; b < y.size(); ++b)
      if (y[b] != 0 && p[a][b] != 0) row += y[b] * p[a][b];
    sum += x[a] * row / catalog.band_order_of(a);
  }
  return sum;
}

Vector apply_involution(const SectorCatalog& catalog, const Vector& x) {
  return multiply(catalog.involution(), x);
}

std::vector<Vector> dual_basis(const SectorCatalog& catalog) {
  return catalog.dual_coordinates();
}

Vector chen_ruan_dual(std::size_t basis_index, const SectorCatalog& catalog) {
  if (basis_index >= catalog.dimension())
    throw ContractViolation("chen_ruan_dual: basis index out of range");
  Vector v = apply_involution(catalog, catalog.dual_coordinates()[basis_index]);
  const int r = catalog.band_order_of(basis_index);
  for (auto& x : v) x *= r;
  return v;
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, Rational(0));
  v.at(i) = 1;
  return v;
}

}  // namespace degenkit
