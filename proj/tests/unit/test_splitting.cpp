// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace degenkit;

namespace {

CurveClassMonoid ab_monoid() {
  return CurveClassMonoid({{"a", Side::X1, Rational(1)}, {"b", Side::X2, Rational(1)}});
}

DegenerationProblem two_sided(int k, int genus, int legs, std::vector<ContactDatum> contacts) {
  DegenerationProblem p;
  p.monoid = ab_monoid();
  p.genus = genus;
  for (int i = 1; i <= legs; ++i) p.legs.push_back({i, 1, std::nullopt});
  p.beta = CurveClass({{"a", k}, {"b", k}});
  p.contact_catalog = std::move(contacts);
  p.divisor = SectorCatalog::point();
  return p;
}

std::vector<std::string> forms(const std::vector<Splitting>& omega) {
  std::vector<std::string> out;
  for (const auto& s : omega) out.push_back(canonical_form(s));
  return out;
}

}  // namespace

TEST_CASE("condition B") {
  const CurveClassMonoid monoid({{"a", Side::X1, Rational(1)}, {"h", Side::X1, make_rational(1, 2)}});
  ModularGraph g;
  g.vertices = {{0, CurveClass({{"a", 2}})}};
  g.roots = {{1, 1, 1, 0}, {2, 1, 1, 0}};
  CHECK(check_condition_B(g, monoid).holds);
  g.roots.pop_back();
  const auto bad = check_condition_B(g, monoid);
  CHECK_FALSE(bad.holds);
  CHECK(bad.failing_vertices == std::vector<std::size_t>{0});
  g.vertices[0].weight = CurveClass({{"a", 1}, {"h", 1}});
  g.roots = {{1, 2, 1, 0}, {2, 1, 1, 0}};
  CHECK(check_condition_B(g, monoid).holds);
}

TEST_CASE("degree zero class gives a single vertex without roots") {
  DegenerationProblem p = two_sided(0, 1, 2, {{1, 1}});
  p.beta = CurveClass{};
  const auto omega = enumerate_splittings(p);
  REQUIRE(omega.size() == 2);
  for (const auto& s : omega) {
    CHECK(s.root_count() == 0);
    CHECK(s.xi1.vertices.size() + s.xi2.vertices.size() == 1);
  }
  p.monoid = CurveClassMonoid({{"a", Side::X1, Rational(0)}, {"b", Side::X2, Rational(1)}});
  p.beta = CurveClass({{"a", 3}});
  const auto one = enumerate_splittings(p);
  REQUIRE(one.size() == 1);
  CHECK(one[0].xi1.vertices.size() == 1);
  CHECK(one[0].xi2.vertices.empty());
}

TEST_CASE("enumeration matches the naive oracle") {
  for (int k = 1; k <= 2; ++k)
    for (int g = 0; g <= 1; ++g)
      for (int n = 0; n <= 2; ++n) {
        const DegenerationProblem p = two_sided(k, g, n, {{1, 1}, {1, 2}});
        const auto omega = enumerate_splittings(p);
        const auto naive = oracle::naive_splittings(p, max_root_count(p));
        std::set<std::string> got;
        for (const auto& s : omega) got.insert(oracle::brute_canonical(s));
        CHECK(got == naive);
        CHECK(got.size() == omega.size());
      }
}

TEST_CASE("vacuous contact catalog") {
  DegenerationProblem p = two_sided(1, 0, 0, {{1, 2}});
  CHECK(enumerate_splittings(p).empty());
  p.contact_catalog.clear();
  CHECK_THROWS_AS(enumerate_splittings(p), ValidationError);
}

TEST_CASE("orbits and stabilizers") {
  std::vector<Splitting> sym;
  for (auto& s : enumerate_splittings(two_sided(2, 1, 0, {{1, 1}})))
    if (s.root_count() == 2) sym.push_back(std::move(s));
  REQUIRE_FALSE(sym.empty());
  std::size_t total = 0;
  for (const auto& o : orbits(sym)) {
    CHECK(o.members.size() * o.stabilizer_order == 2);
    total += o.members.size();
  }
  CHECK(total == sym.size());

  const auto two = enumerate_splittings(two_sided(1, 0, 0, {{1, 1}}));
  REQUIRE(two.size() == 1);
  CHECK(orbits(two)[0].stabilizer_order == 1);

  bool found_symmetric = false;
  for (const auto& o : orbits(sym)) found_symmetric = found_symmetric || o.stabilizer_order == 2;
  CHECK(found_symmetric);

  const auto all_mixed = enumerate_splittings(two_sided(3, 0, 0, {{1, 1}, {1, 2}}));
  CHECK_THROWS_AS(orbits(all_mixed), ContractViolation);
  std::vector<Splitting> mixed;
  for (auto s : all_mixed)
    if (s.root_count() == 2) mixed.push_back(std::move(s));
  REQUIRE_FALSE(mixed.empty());
  for (const auto& o : orbits(mixed)) {
    const auto c = mixed[o.representative].contacts();
    if (c[0] != c[1]) CHECK(o.stabilizer_order == 1);
  }
}

TEST_CASE("budget exhaustion resumes to the full list") {
  const DegenerationProblem p = two_sided(2, 1, 2, {{1, 1}, {1, 2}});
  const auto full = forms(enumerate_splittings(p));
  std::vector<std::string> pieces;
  EnumerationOptions o;
  o.budget = 7;
  int rounds = 0;
  while (true) {
    try {
      const auto rest = enumerate_splittings(p, o);
      for (auto& f : forms(rest)) pieces.push_back(f);
      break;
    } catch (const BudgetExceeded& e) {
      CHECK(e.next_branch() >= o.resume_from);
      CHECK(e.total_branches() > e.next_branch());
      for (auto& f : forms(e.completed())) pieces.push_back(f);
      if (e.next_branch() == o.resume_from) {
        o.budget *= 2;
      } else {
        o.resume_from = e.next_branch();
      }
    }
    REQUIRE(++rounds < 200);
  }
  CHECK(rounds > 1);
  CHECK(pieces == full);
}

TEST_CASE("thread count does not change the output") {
  const DegenerationProblem p = two_sided(2, 1, 2, {{1, 1}, {1, 2}});
  const auto one = forms(enumerate_splittings(p));
  for (unsigned t : {2u, 3u, 8u}) {
    EnumerationOptions o;
    o.threads = t;
    CHECK(forms(enumerate_splittings(p, o)) == one);
  }
}

TEST_CASE("relabeling roots preserves the orbit") {
  const auto omega = enumerate_splittings(two_sided(2, 0, 1, {{1, 1}}));
  for (const auto& s : omega) {
    if (s.root_count() != 2) continue;
    const std::vector<std::size_t> swap{1, 0};
    const Splitting t = relabel_roots(s, swap);
    bool in_omega = false;
    for (const auto& u : omega) in_omega = in_omega || canonical_form(u) == canonical_form(t);
    CHECK(in_omega);
    CHECK(canonical_form(relabel_roots(t, swap)) == canonical_form(s));
  }
}

TEST_CASE("problem validation") {
  DegenerationProblem p = two_sided(1, 0, 2, {{1, 1}});
  p.legs[1].label = 3;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = two_sided(1, -1, 0, {{1, 1}});
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = two_sided(1, 0, 0, {{1, 1}});
  p.beta.add("z", 1);
  CHECK_THROWS_AS(p.validate(), ValidationError);
}
