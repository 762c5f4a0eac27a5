// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

// Numerical shadows of the root-stack constructions: twisting choices, lift
// conditions for maps to root stacks, band orders of evaluation gerbes, ghost
// automorphisms, and the degree bookkeeping of the degeneration argument.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "degenkit/rational.hpp"

namespace degenkit {

struct Splitting;

/// Sorted multiset of contact orders.
using ContactMultiset = std::vector<int>;

ContactMultiset make_multiset(std::span<const int> contacts);

/// lcm of the elements. Throws ContractViolation for an empty multiset.
std::int64_t minimal_twist(std::span<const int> contacts);

/// A rule assigning to each multiset of contact orders a common multiple of
/// its elements. Only serializable rules are representable: the minimal
/// (lcm) rule, a fixed multiple of it, or an explicit table that falls back
/// to lcm off its domain.
class TwistingChoice {
 public:
  enum class Kind { minimal, multiple, table };

  static TwistingChoice minimal();
  static TwistingChoice multiple_of_minimal(std::int64_t factor);
  /// Throws ValidationError if some entry is not divisible by every element
  /// of its multiset, or if a multiset is empty.
  static TwistingChoice from_table(std::map<ContactMultiset, std::int64_t> entries);

  /// The value on `contacts` (any order). The empty multiset maps to the
  /// rule's value on lcm() = 1.
  std::int64_t operator()(std::span<const int> contacts) const;

  Kind kind() const { return kind_; }
  std::int64_t factor() const { return factor_; }
  const std::map<ContactMultiset, std::int64_t>& table() const { return table_; }
  std::string describe() const;

 private:
  Kind kind_ = Kind::minimal;
  std::int64_t factor_ = 1;
  std::map<ContactMultiset, std::int64_t> table_;
};

/// rule(c) divides rule'(c) for every c in `domain`.
bool precedes(const TwistingChoice& rule, const TwistingChoice& other,
              std::span<const ContactMultiset> domain);

struct LiftReport {
  bool lifts = false;
  bool representable = false;
  bool transversal = false;
  std::optional<std::int64_t> source_index;  // r_Sigma of the lifted source, when a lift exists
};

/// A map with contact order c along D, to the r-th root of D, from a source
/// whose marking is twisted with index r_source. Requires c | r.
LiftReport lift_analysis(std::int64_t contact, std::int64_t target_index,
                         std::int64_t source_index);

/// r / c: the source twisting index making the lift representable.
std::int64_t required_source_index(std::int64_t contact, std::int64_t target_index);

/// Band order c of the gerbe between rigidified inertia components, from
/// |<g~>| = (r / c) |<g>|. Throws ValidationError("inconsistent inertia data")
/// if c is not a positive integer.
std::int64_t evaluation_band_order(std::int64_t target_index, std::int64_t g_order,
                                   std::int64_t lifted_g_order);

/// Order of the ghost automorphism group: the product of node indices.
/// Markings must not be passed.
std::int64_t ghost_automorphism_order(std::span<const int> node_indices);

struct LedgerStage {
  std::string stage;
  Rational factor;
  std::string source;
};

struct MultiplicityLedger {
  std::vector<LedgerStage> stages;
  Rational net = 1;

  void push(std::string stage, Rational factor, std::string source);
};

/// Stages: split-target r/|M|!, glue-target 1/r, diagonal-gysin prod c_j,
/// with r = rule({c_j}). The net is prod c_j / |M|! whatever the rule.
MultiplicityLedger degeneration_ledger(std::span<const int> contacts, const TwistingChoice& rule);
MultiplicityLedger degeneration_ledger(const Splitting& splitting, const TwistingChoice& rule);

}  // namespace degenkit
