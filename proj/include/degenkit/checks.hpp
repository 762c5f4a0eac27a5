// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

// Self-contained property suites: signs, lifts, ledger, orbit counts and the
// Hurwitz end-to-end check.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace degenkit {

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckItem> items;
  bool passed() const;
};

/// Suite names: algebra, lifts, ledger, orbits, hurwitz, all.
const std::vector<std::string>& check_suite_names();

/// Throws ValidationError for an unknown suite.
CheckReport run_check_suite(std::string_view suite);

}  // namespace degenkit
