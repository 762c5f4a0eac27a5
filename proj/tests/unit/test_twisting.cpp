// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include "doctest.h"
#include "degenkit/error.hpp"
#include "degenkit/twisting.hpp"

using namespace degenkit;

namespace {

std::int64_t rmin(std::vector<int> c) { return minimal_twist(c); }

}  // namespace

TEST_CASE("minimal twist") {
  CHECK(rmin({2, 3}) == 6);
  CHECK(rmin({4}) == 4);
  CHECK(rmin({2, 2, 2}) == 2);
  CHECK_THROWS_AS(rmin({}), Error);
}

TEST_CASE("twisting rules and the order on them") {
  const std::vector<ContactMultiset> domain{{1}, {2}, {2, 3}, {1, 1, 4}};
  const auto lcm = TwistingChoice::minimal();
  const auto twice = TwistingChoice::multiple_of_minimal(2);
  CHECK(precedes(lcm, twice, domain));
  CHECK(precedes(lcm, lcm, domain));
  CHECK_FALSE(precedes(twice, lcm, domain));

  const auto table = TwistingChoice::from_table({{{2, 3}, 12}});
  const std::vector<int> c23{3, 2};
  const std::vector<int> c4{4};
  CHECK(table(c23) == 12);
  CHECK(table(c4) == 4);
  CHECK(twice(c23) == 12);
  CHECK_THROWS_AS(TwistingChoice::from_table({{{2, 3}, 9}}), Error);
  CHECK_THROWS_AS(TwistingChoice::multiple_of_minimal(0), Error);
}

TEST_CASE("lift analysis") {
  const auto a = lift_analysis(2, 6, 3);
  CHECK(a.lifts);
  CHECK(a.representable);
  CHECK(a.transversal);
  CHECK(a.source_index == 3);
  CHECK_FALSE(lift_analysis(2, 6, 2).lifts);
  CHECK(lift_analysis(1, 1, 1).representable);
  CHECK_THROWS_AS(lift_analysis(4, 6, 3), ContractViolation);
}

TEST_CASE("lift truth table is consistent") {
  for (int c = 1; c <= 6; ++c)
    for (int r = c; r <= 24; r += c)
      for (int s = 1; s <= 12; ++s) {
        const auto rep = lift_analysis(c, r, s);
        CHECK(rep.lifts == ((c * s) % r == 0));
        CHECK(rep.representable == (s == required_source_index(c, r)));
        if (rep.representable) CHECK(rep.lifts);
      }
}

TEST_CASE("required source index") {
  CHECK(required_source_index(3, 6) == 2);
  CHECK(required_source_index(5, 5) == 1);
  CHECK(required_source_index(4, 12) == 3);
  CHECK_THROWS_AS(required_source_index(4, 6), ContractViolation);
}

TEST_CASE("evaluation band order") {
  CHECK(evaluation_band_order(6, 1, 3) == 2);
  CHECK(evaluation_band_order(1, 5, 5) == 1);
  CHECK(evaluation_band_order(4, 2, 8) == 1);
  CHECK_THROWS_AS(evaluation_band_order(3, 1, 2), ValidationError);
}

TEST_CASE("ghost automorphisms") {
  CHECK(ghost_automorphism_order(std::vector<int>{}) == 1);
  CHECK(ghost_automorphism_order(std::vector<int>{3}) == 3);
  CHECK(ghost_automorphism_order(std::vector<int>{2, 2, 3}) == 12);
}

TEST_CASE("multiplicity ledger") {
  const std::vector<int> none;
  CHECK(degeneration_ledger(none, TwistingChoice::minimal()).net == 1);

  const std::vector<int> c{2, 3};
  const auto lcm = degeneration_ledger(c, TwistingChoice::minimal());
  REQUIRE(lcm.stages.size() == 3);
  CHECK(lcm.stages[0].factor == 3);
  CHECK(lcm.stages[1].factor == Rational(1, 6));
  CHECK(lcm.stages[2].factor == 6);
  CHECK(lcm.net == 3);
  CHECK(degeneration_ledger(c, TwistingChoice::multiple_of_minimal(2)).net == 3);
  for (const auto& s : lcm.stages) CHECK_FALSE(s.source.empty());
}
