// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

// The index set of the degeneration formula: ordered pairs of edgeless
// modular graphs (Xi1 over X1, Xi2 over X2) sharing an ordered set M of root
// labels, whose gluing is connected of the prescribed genus and class, with
// intersection multiplicities balancing the D-degree at every vertex.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "degenkit/algebra.hpp"
#include "degenkit/error.hpp"
#include "degenkit/graphs.hpp"

namespace degenkit {

struct LegSpec {
  int label = 0;
  int index_e = 1;
  std::optional<Side> side;  // restricts the leg to one component
};

/// Admissible data (f, c) for a root along D.
struct ContactDatum {
  int index_f = 1;
  int contact = 1;
  Rational multiplicity() const { return make_rational(contact, index_f); }
  friend auto operator<=>(const ContactDatum&, const ContactDatum&) = default;
};

/// Every (f, c) with f a band order occurring in `divisor` and 1 <= c <= c_max.
std::vector<ContactDatum> contact_catalog_from(const SectorCatalog& divisor, int c_max);

struct DegenerationProblem {
  CurveClassMonoid monoid;
  int genus = 0;
  std::vector<LegSpec> legs;  // labels are exactly 1..n
  CurveClass beta;
  std::vector<ContactDatum> contact_catalog;
  std::optional<SectorCatalog> divisor;

  /// Throws ValidationError with a field path.
  void validate() const;
  int leg_count() const { return static_cast<int>(legs.size()); }
};

/// Roots of both graphs are stored in label order; root k carries label
/// n + 1 + k. Legs of each graph are stored in label order.
struct Splitting {
  ModularGraph xi1;
  ModularGraph xi2;

  std::size_t root_count() const { return xi1.roots.size(); }
  std::vector<int> root_labels() const;
  std::vector<int> contacts() const;
  std::vector<int> indices() const;
  /// Leg labels on `side` (N1 or N2), ascending.
  std::vector<int> legs_on(Side side) const;
  const ModularGraph& graph(Side side) const { return side == Side::X1 ? xi1 : xi2; }
};

std::string canonical_form(const Splitting& splitting);

/// Apply sigma in S(M): the root with label n + 1 + k gets label
/// n + 1 + sigma[k], n being the number of legs. Vertices are reordered by
/// smallest root label.
Splitting relabel_roots(const Splitting& splitting, std::span<const std::size_t> sigma);

struct ConditionBReport {
  bool holds = true;
  std::vector<std::size_t> failing_vertices;
};

/// sum over roots at v of c/f equals (beta(v) . D) for every vertex v.
/// Requires a graph without edges.
ConditionBReport check_condition_B(const ModularGraph& graph, const CurveClassMonoid& monoid);

struct EnumerationOptions {
  std::uint64_t budget = 0;       // enumeration nodes, 0 = unlimited
  std::uint64_t resume_from = 0;  // first branch to visit
  unsigned threads = 1;
};

/// Thrown when the node budget runs out. Branches [resume_from, next_branch)
/// were completed; rerun with EnumerationOptions::resume_from = next_branch
/// to continue.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t resume_from, std::uint64_t next_branch, std::uint64_t total_branches,
                 std::vector<Splitting> completed)
      : Error(ErrorKind::budget, "enumeration budget exceeded at branch " +
                                     std::to_string(next_branch) + " of " +
                                     std::to_string(total_branches)),
        resume_from_(resume_from),
        next_branch_(next_branch),
        total_branches_(total_branches),
        completed_(std::move(completed)) {}
  std::uint64_t resume_from() const noexcept { return resume_from_; }
  std::uint64_t next_branch() const noexcept { return next_branch_; }
  std::uint64_t total_branches() const noexcept { return total_branches_; }
  const std::vector<Splitting>& completed() const noexcept { return completed_; }

 private:
  std::uint64_t resume_from_;
  std::uint64_t next_branch_;
  std::uint64_t total_branches_;
  std::vector<Splitting> completed_;
};

/// Calls `visit` once per splitting, in a deterministic order. With several
/// threads the branches are explored concurrently but `visit` is still
/// invoked from one thread at a time, in branch order.
void for_each_splitting(const DegenerationProblem& problem, const EnumerationOptions& options,
                        const std::function<void(Splitting&&)>& visit);

/// Omega(Gamma), one representative per isomorphism class, in enumeration
/// order. Throws ValidationError("no admissible contact data") for an empty
/// contact catalog when beta has positive D-degree.
std::vector<Splitting> enumerate_splittings(const DegenerationProblem& problem,
                                            const EnumerationOptions& options = {});

/// Upper bound on |M|: (beta_1 . D) / min over the catalog of c/f.
int max_root_count(const DegenerationProblem& problem);

struct SplittingOrbit {
  std::size_t representative = 0;  // index into the input sequence
  std::vector<std::size_t> members;
  std::size_t stabilizer_order = 1;  // |Eq(eta)|
};

/// Partition under relabeling of M. Requires every splitting to have the
/// same |M| (ContractViolation otherwise). Orbits are ordered by first member.
std::vector<SplittingOrbit> orbits(std::span<const Splitting> omega);

}  // namespace degenkit
