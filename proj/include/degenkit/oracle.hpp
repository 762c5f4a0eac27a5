// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

// Hurwitz numbers by symmetric-group factorization counting, relative
// invariants of (P^1, point) built from them, and an end-to-end check of the
// degeneration formula on P^1 degenerating to two copies of P^1.

#pragma once

#include <optional>
#include <vector>

#include "degenkit/correlator.hpp"
#include "degenkit/rational.hpp"
#include "degenkit/splitting.hpp"

namespace degenkit {

inline constexpr int kMaxHurwitzDegree = 5;

/// A partition of the degree, parts in nonincreasing order.
struct RamificationProfile {
  std::vector<int> parts;

  int degree() const;
  int length() const { return static_cast<int>(parts.size()); }
  /// prod_k a_k! over the multiplicities a_k of equal parts.
  Integer automorphisms() const;
  /// Validates and sorts; throws ValidationError on a nonpositive part.
  static RamificationProfile from(std::vector<int> parts);
};

/// All partitions of d, in reverse lexicographic order.
std::vector<RamificationProfile> partitions_of(int d);

struct HurwitzInstance {
  int degree = 1;
  int genus = 0;
  std::vector<RamificationProfile> profiles;

  /// 2g - 2 + 2d - sum (d - l(mu)). Negative means infeasible.
  int simple_branch_count() const;
  /// Instance with the given number of simple branch points; throws
  /// InfeasibleInstance if Riemann-Hurwitz gives no nonnegative integer genus.
  static HurwitzInstance from_branch_count(int degree, std::vector<RamificationProfile> profiles,
                                           int simple);
};

/// (1/d!) #{(sigma_1..sigma_k, tau_1..tau_b): sigma_i of type mu_i, tau_j
/// transpositions, product = id, transitive}. Throws ScaleError for d > 5,
/// InfeasibleInstance for b < 0, ValidationError if a profile is not a
/// partition of d.
Rational hurwitz_count(const HurwitzInstance& instance);

/// Relative invariants of (P^1, point) on both sides of the degeneration:
/// side X1 uses generator "a", side X2 generator "b". Legs are
/// (e=1, m=1, "pt", even) marking simple branch points, roots are
/// (f=1, c, "1", even). The value of a key with contact pattern mu is
/// |Aut mu| times the connected Hurwitz count when Riemann-Hurwitz holds and
/// zero otherwise. Covers degrees 1..d_max, genera 0..g_max and up to
/// 2 g_max - 2 + 2 d_max legs.
InvariantTable build_p1_table(int d_max, int g_max);

/// The P^1 degeneration problem: generators a (X1) and b (X2) of degree 1,
/// beta = d a + d b, 2g - 2 + 2d legs of which the first `left_legs`
/// (default: half, rounded up) are constrained to X1 and the rest to X2.
DegenerationProblem p1_degeneration_problem(int d, int g, std::optional<int> left_legs = {});

/// Insertions tau_1(pt) on every leg.
std::vector<Insertion> p1_insertions(int leg_count);

struct DegenerationCheckReport {
  int degree = 0;
  int genus = 0;
  int left_legs = 0;
  Rational engine_value;
  Rational oracle_value;
  bool equal = false;
  std::size_t splitting_count = 0;
};

/// Compares the degeneration formula on P^1 with the Hurwitz count of the
/// smooth fiber. Requires d <= 4 and 0 <= g <= 2.
DegenerationCheckReport degeneration_check(int d, int g, std::optional<int> left_legs = {},
                                           const EvaluationOptions& options = {});

}  // namespace degenkit
