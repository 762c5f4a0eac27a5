// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit/twisting.hpp"

#include <algorithm>

#include "degenkit/error.hpp"
#include "degenkit/splitting.hpp"

namespace degenkit {

ContactMultiset make_multiset(std::span<const int> contacts) {
  ContactMultiset m(contacts.begin(), contacts.end());
  std::sort(m.begin(), m.end());
  return m;
}

std::int64_t minimal_twist(std::span<const int> contacts) {
  if (contacts.empty()) throw ContractViolation("minimal_twist: empty multiset");
  std::int64_t r = 1;
  for (int c : contacts) {
    if (c < 1) throw ContractViolation("minimal_twist: contact orders must be positive");
    r = lcm64(r, c);
  }
  return r;
}

TwistingChoice TwistingChoice::minimal() { return {}; }

TwistingChoice TwistingChoice::multiple_of_minimal(std::int64_t factor) {
  if (factor < 1) throw ValidationError("twisting multiple must be a positive integer");
  TwistingChoice t;
  t.kind_ = factor == 1 ? Kind::minimal : Kind::multiple;
  t.factor_ = factor;
  return t;
}

TwistingChoice TwistingChoice::from_table(std::map<ContactMultiset, std::int64_t> entries) {
  TwistingChoice t;
  t.kind_ = Kind::table;
  for (auto& [key, value] : entries) {
    ContactMultiset sorted = key;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty()) throw ValidationError("twisting table entry with empty multiset");
    std::string name;
    for (int c : sorted) name += (name.empty() ? "" : ",") + std::to_string(c);
    if (value < 1) throw ValidationError("twisting value for {" + name + "} must be positive");
    if (value % minimal_twist(sorted) != 0)
      throw ValidationError("twisting value " + std::to_string(value) +
                            " is not divisible by every contact order in {" + name + "}");
    if (!t.table_.emplace(std::move(sorted), value).second)
      throw ValidationError("duplicate twisting table entry {" + name + "}");
  }
  return t;
}

std::int64_t TwistingChoice::operator()(std::span<const int> contacts) const {
  const std::int64_t base = contacts.empty() ? 1 : minimal_twist(contacts);
  switch (kind_) {
    case Kind::minimal:
      return base;
    case Kind::multiple:
      return factor_ * base;
    case Kind::table: {
      const auto it = table_.find(make_multiset(contacts));
      return it == table_.end() ? base : it->second;
    }
  }
  return base;
}

std::string TwistingChoice::describe() const {
  switch (kind_) {
    case Kind::minimal:
      return "minimal";
    case Kind::multiple:
      return "multiple:" + std::to_string(factor_);
    case Kind::table:
      return "table(" + std::to_string(table_.size()) + " entries, lcm fallback)";
  }
  return "minimal";
}

bool precedes(const TwistingChoice& rule, const TwistingChoice& other,
              std::span<const ContactMultiset> domain) {
  return std::all_of(domain.begin(), domain.end(),
                     [&](const ContactMultiset& c) { return other(c) % rule(c) == 0; });
}

LiftReport lift_analysis(std::int64_t contact, std::int64_t target_index, std::int64_t source_index) {
  if (contact < 1 || target_index < 1 || source_index < 1)
    throw ContractViolation("lift_analysis: c, r and r_Sigma must be positive");
  if (target_index % contact != 0)
    throw ContractViolation("lift_analysis: contact order " + std::to_string(contact) +
                            " does not divide r = " + std::to_string(target_index));
  LiftReport report;
  const std::int64_t pulled_back = contact * source_index;
  report.lifts = pulled_back % target_index == 0;
  report.representable = pulled_back == target_index;
  report.transversal = report.representable;
  if (report.lifts) report.source_index = source_index;
  return report;
}

std::int64_t required_source_index(std::int64_t contact, std::int64_t target_index) {
  if (contact < 1 || target_index < 1 || target_index % contact != 0)
    throw ContractViolation("required_source_index: c must divide r");
  return target_index / contact;
}

std::int64_t evaluation_band_order(std::int64_t target_index, std::int64_t g_order,
                                   std::int64_t lifted_g_order) {
  if (target_index < 1 || g_order < 1 || lifted_g_order < 1)
    throw ValidationError("inconsistent inertia data: orders must be positive");
  const std::int64_t num = g_order * target_index;
  if (num % lifted_g_order != 0)
    throw ValidationError("inconsistent inertia data: |<g>| r / |<g~>| is not an integer");
  return num / lifted_g_order;
}

std::int64_t ghost_automorphism_order(std::span<const int> node_indices) {
  std::int64_t order = 1;
  for (int r : node_indices) {
    if (r < 1) throw ContractViolation("ghost_automorphism_order: node indices must be positive");
    order *= r;
  }
  return order;
}

void MultiplicityLedger::push(std::string stage, Rational factor, std::string source) {
  net *= factor;
  stages.push_back({std::move(stage), std::move(factor), std::move(source)});
}

MultiplicityLedger degeneration_ledger(std::span<const int> contacts, const TwistingChoice& rule) {
  const Rational r(static_cast<long>(rule(contacts)));
  Rational product = 1;
  for (int c : contacts) product *= c;
  MultiplicityLedger ledger;
  ledger.push("split-target", r / factorial(static_cast<unsigned>(contacts.size())),
              "virtual class of the splitting locus: r(eta) / |M|!");
  ledger.push("glue-target", 1 / r, "gluing the target along the r-th root of D has degree 1/r");
  ledger.push("diagonal-gysin", product, "refined diagonal pullback has pure degree prod c_j");
  return ledger;
}

MultiplicityLedger degeneration_ledger(const Splitting& splitting, const TwistingChoice& rule) {
  return degeneration_ledger(splitting.contacts(), rule);
}

}  // namespace degenkit
