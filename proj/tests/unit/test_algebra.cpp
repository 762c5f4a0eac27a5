// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace degenkit;

namespace {

SectorCatalog even_catalog(Matrix pairing) {
  std::vector<BasisClass> basis;
  for (std::size_t i = 0; i < pairing.size(); ++i) basis.push_back({"b" + std::to_string(i), "u", Parity::even});
  return SectorCatalog({{"u", 1, "u"}}, basis, std::move(pairing));
}

Matrix rows(std::initializer_list<std::initializer_list<int>> m) {
  Matrix out;
  for (const auto& r : m) {
    Vector row;
    for (int x : r) row.push_back(Rational(x));
    out.push_back(row);
  }
  return out;
}

// (1/r) <iota^* of the Chen-Ruan dual of delta_j, delta_i>.
Rational chen_ruan_identity(const SectorCatalog& cat, std::size_t i, std::size_t j) {
  const Vector image = apply_involution(cat, chen_ruan_dual(j, cat));
  return standard_pairing(cat, image, unit_vector(cat.dimension(), i)) / cat.band_order_of(j);
}

}  // namespace

TEST_CASE("rational parse and print") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-0/7")) == "0/1");
  CHECK(to_string(parse_rational("5")) == "5/1");
  CHECK(to_string(parse_rational("-3/9")) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("2/-1"), ValidationError);
  CHECK_THROWS_AS(parse_rational("x"), ValidationError);
  CHECK_THROWS_AS(make_rational(1, 0), ContractViolation);
}

TEST_CASE("koszul sign examples") {
  const std::vector<std::size_t> rev{2, 1, 0};
  CHECK(koszul_sign(rev, std::vector<Parity>(3, Parity::even)) == 1);
  CHECK(koszul_sign(std::vector<std::size_t>{1, 0}, std::vector<Parity>(2, Parity::odd)) == -1);
  CHECK(koszul_sign(rev, std::vector<Parity>(3, Parity::odd)) == -1);
  CHECK_THROWS_AS(koszul_sign(rev, std::vector<Parity>(2, Parity::odd)), ContractViolation);
}

TEST_CASE("koszul sign agrees with the bubble-sort model") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + trial % 7;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Parity> par(n);
    for (auto& p : par) p = rng() % 2 ? Parity::odd : Parity::even;
    CHECK(koszul_sign(perm, par) == oracle::monomial_sign(perm, par));
  }
}

TEST_CASE("dual basis examples") {
  const auto id = dual_basis(even_catalog(rows({{1, 0}, {0, 1}})));
  CHECK(id[0] == unit_vector(2, 0));
  CHECK(id[1] == unit_vector(2, 1));
  const auto sw = dual_basis(even_catalog(rows({{0, 1}, {1, 0}})));
  CHECK(sw[0] == unit_vector(2, 1));
  CHECK(sw[1] == unit_vector(2, 0));
}

TEST_CASE("dual basis of a random invertible 3x3 pairing") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix p(3, Vector(3));
    do {
      for (auto& r : p)
        for (auto& x : r) x = oracle::random_rational(rng, 4, 3);
    } while (try_inverse(p).empty());
    const SectorCatalog cat = even_catalog(p);
    const auto dual = dual_basis(cat);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(standard_pairing(cat, dual[j], unit_vector(3, i)) == Rational(i == j ? 1 : 0));
  }
}

TEST_CASE("dual basis round trip and diagonal decomposition") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix p(4, Vector(4));
    do {
      for (auto& r : p)
        for (auto& x : r) x = oracle::random_rational(rng, 4, 3);
    } while (try_inverse(p).empty());
    const SectorCatalog cat = even_catalog(p);
    const auto d = dual_basis(cat);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        Rational s = 0;
        for (std::size_t k = 0; k < 4; ++k) s += p[i][k] * d[k][j];
        CHECK(s == Rational(i == j ? 1 : 0));
      }
    Matrix q(4, Vector(4));
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) q[b][a] = standard_pairing(cat, d[a], d[b]);
    const auto u = dual_basis(even_catalog(q));
    for (std::size_t a = 0; a < 4; ++a) {
      Vector back(4, Rational(0));
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t k = 0; k < 4; ++k) back[k] += u[a][b] * d[b][k];
      CHECK(back == unit_vector(4, a));
    }
  }
}

TEST_CASE("singular pairing reports a null vector") {
  const Matrix p = rows({{1, 2}, {2, 4}});
  try {
    even_catalog(p);
    FAIL("expected SingularPairingError");
  } catch (const SingularPairingError& e) {
    const Vector v = multiply(p, e.null_vector());
    CHECK(v == Vector(2, Rational(0)));
    CHECK(e.null_vector() != Vector(2, Rational(0)));
  }
}

TEST_CASE("chen-ruan dual") {
  const SectorCatalog untwisted = even_catalog(rows({{2}}));
  CHECK(chen_ruan_dual(0, untwisted) == dual_basis(untwisted)[0]);

  const SectorCatalog band3({{"t", 3, "t"}}, {{"x", "t", Parity::even}}, rows({{5}}));
  CHECK(chen_ruan_dual(0, band3) == Vector{3 * dual_basis(band3)[0][0]});

  const SectorCatalog swapped({{"s1", 2, "s2"}, {"s2", 2, "s1"}},
                              {{"x1", "s1", Parity::even}, {"x2", "s2", Parity::even}},
                              rows({{3, 0}, {0, -2}}), rows({{0, 1}, {1, 0}}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(chen_ruan_identity(swapped, i, j) == Rational(i == j ? 1 : 0));
}

TEST_CASE("chen-ruan duality on random catalogs") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const SectorCatalog cat = oracle::random_catalog(rng);
    const std::size_t n = cat.dimension();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(chen_ruan_identity(cat, i, j) == Rational(i == j ? 1 : 0));
  }
}

TEST_CASE("catalog integrity errors") {
  CHECK_THROWS_AS(SectorCatalog({{"s", 2, "missing"}}, {{"x", "s", Parity::even}}, rows({{1}})),
                  ValidationError);
  CHECK_THROWS_AS(SectorCatalog({{"u", 1, "u"}}, {{"x", "nowhere", Parity::even}}, rows({{1}})),
                  ValidationError);
  CHECK_THROWS_AS(SectorCatalog({{"u", 0, "u"}}, {{"x", "u", Parity::even}}, rows({{1}})), ValidationError);
  CHECK_THROWS_AS(even_catalog(rows({{1, 0}})), Error);
  const SectorCatalog pt = SectorCatalog::point();
  CHECK(pt.dimension() == 1);
  CHECK(pt.require_index("1") == 0);
  CHECK_THROWS_AS(pt.require_index("nope"), ValidationError);
}
