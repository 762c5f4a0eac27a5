// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit/checks.hpp"
#include "degenkit/error.hpp"
#include "doctest.h"

using namespace degenkit;

TEST_CASE("built-in property suites pass") {
  for (const auto& name : check_suite_names()) {
    const CheckReport r = run_check_suite(name);
    CAPTURE(name);
    CHECK(r.passed());
    CHECK_FALSE(r.items.empty());
    for (const auto& item : r.items) {
      CAPTURE(item.name);
      CAPTURE(item.detail);
      CHECK(item.passed);
    }
  }
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_check_suite("nope"), ValidationError); }
