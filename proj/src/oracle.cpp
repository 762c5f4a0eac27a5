// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace degenkit {

int RamificationProfile::degree() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Integer RamificationProfile::automorphisms() const {
  Integer out = 1;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), j - i);
    out *= f;
    i = j;
  }
  return out;
}

RamificationProfile RamificationProfile::from(std::vector<int> parts) {
  for (int p : parts)
    if (p < 1) throw ValidationError("ramification profile parts must be positive");
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return {std::move(parts)};
}

std::vector<RamificationProfile> partitions_of(int d) {
  std::vector<RamificationProfile> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      out.push_back({cur});
      return;
    }
    for (int p = std::min(rest, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  if (d >= 1) rec(d, d);
  return out;
}

int HurwitzInstance::simple_branch_count() const {
  int b = 2 * genus - 2 + 2 * degree;
  for (const auto& mu : profiles) b -= degree - mu.length();
  return b;
}

HurwitzInstance HurwitzInstance::from_branch_count(int degree, std::vector<RamificationProfile> profiles,
                                                   int simple) {
  if (degree < 1) throw ValidationError("degree must be positive");
  if (simple < 0) throw InfeasibleInstance("negative number of simple branch points");
  int twice = simple - 2 * degree + 2;
  for (const auto& mu : profiles) twice += degree - mu.length();
  if (twice % 2 != 0)
    throw InfeasibleInstance("Riemann-Hurwitz gives a non-integer genus");
  if (twice < 0) throw InfeasibleInstance("Riemann-Hurwitz gives a negative genus");
  return {degree, twice / 2, std::move(profiles)};
}

namespace {

using Perm = std::vector<int>;

std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> type;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

std::vector<Perm> conjugacy_class(int d, const std::vector<int>& type) {
  std::vector<Perm> out;
  Perm p(d);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (cycle_type(p) == type) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Set partition of the points as a restricted growth string.
std::vector<int> merge_orbits(const std::vector<int>& blocks, const Perm& p) {
  const std::size_t d = p.size();
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < d; ++i) {
    parent[find(i)] = find(static_cast<std::size_t>(p[i]));
    for (std::size_t j = i + 1; j < d; ++j)
      if (blocks[i] == blocks[j]) parent[find(i)] = find(j);
  }
  std::vector<int> out(d);
  std::map<std::size_t, int> label;
  for (std::size_t i = 0; i < d; ++i) {
    const auto [it, fresh] = label.emplace(find(i), static_cast<int>(label.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace

Rational hurwitz_count(const HurwitzInstance& instance) {
  const int d = instance.degree;
  if (d < 1) throw ValidationError("degree must be positive");
  if (d > kMaxHurwitzDegree) throw ScaleError("Hurwitz counting is limited to degree <= 5");
  if (instance.genus < 0) throw InfeasibleInstance("negative genus");
  for (const auto& mu : instance.profiles) {
    if (mu.degree() != d) throw ValidationError("ramification profile is not a partition of the degree");
    for (int part : mu.parts)
      if (part < 1) throw ValidationError("ramification profile parts must be positive");
  }
  const int b = instance.simple_branch_count();
  if (b < 0) throw InfeasibleInstance("Riemann-Hurwitz gives a negative number of simple branch points");

  std::vector<std::vector<Perm>> steps;
  for (const auto& mu : instance.profiles) {
    auto type = mu.parts;
    std::sort(type.begin(), type.end(), std::greater<>());
    steps.push_back(conjugacy_class(d, type));
  }
  if (b > 0 && d == 1) return 0;
  if (b > 0) {
    std::vector<int> transposition(d - 1, 1);
    transposition[0] = 2;
    const auto taus = conjugacy_class(d, transposition);
    for (int i = 0; i < b; ++i) steps.push_back(taus);
  }

  Perm id(d);
  std::iota(id.begin(), id.end(), 0);
  std::map<std::pair<Perm, std::vector<int>>, Integer> states;
  std::vector<int> singletons(d);
  std::iota(singletons.begin(), singletons.end(), 0);
  states[{id, singletons}] = 1;
  for (const auto& cls : steps) {
    std::map<std::pair<Perm, std::vector<int>>, Integer> next;
    for (const auto& [state, count] : states) {
      const auto& [prod, blocks] = state;
      for (const auto& x : cls) {
        Perm composed(d);
        for (int i = 0; i < d; ++i) composed[i] = x[prod[i]];
        next[{std::move(composed), merge_orbits(blocks, x)}] += count;
      }
    }
    states = std::move(next);
  }
  const auto it = states.find({id, std::vector<int>(d, 0)});
  const Integer total = it == states.end() ? Integer(0) : it->second;
  Rational out(total);
  out /= factorial(static_cast<unsigned>(d));
  return out;
}

InvariantTable build_p1_table(int d_max, int g_max) {
  if (d_max > kMaxHurwitzDegree) throw ScaleError("Hurwitz tables are limited to degree <= 5");
  if (d_max < 1 || g_max < 0) throw ValidationError("table bounds must satisfy d_max >= 1, g_max >= 0");
  const int leg_max = std::max(0, 2 * g_max - 2 + 2 * d_max);
  InvariantTable table;
  for (int k = 1; k <= d_max; ++k)
    for (int gv = 0; gv <= g_max; ++gv)
      for (const auto& mu : partitions_of(k)) {
        const int simple = 2 * gv - 2 + k + mu.length();
        Rational value = 0;
        if (simple >= 0 && simple <= leg_max) {
          value = hurwitz_count({k, gv, {mu}});
          value *= Rational(mu.automorphisms());
        }
        for (Side side : {Side::X1, Side::X2}) {
          CorrelatorKey key;
          key.side = side;
          key.genus = gv;
          key.weight = CurveClass({{side == Side::X1 ? "a" : "b", k}});
          for (int c : mu.parts) key.roots.push_back({1, c, "1", Parity::even});
          for (int legs = 0; legs <= leg_max; ++legs) {
            key.legs.assign(legs, KeyLeg{1, 1, "pt", Parity::even});
            table.insert(key, legs == simple ? value : Rational(0));
          }
        }
      }
  return table;
}

DegenerationProblem p1_degeneration_problem(int d, int g, std::optional<int> left_legs) {
  if (d < 1) throw ValidationError("degree must be positive");
  if (g < 0) throw ValidationError("genus must be nonnegative");
  const int n = 2 * g - 2 + 2 * d;
  const int left = left_legs.value_or((n + 1) / 2);
  if (left < 0 || left > n) throw ValidationError("left leg count out of range");
  DegenerationProblem problem{
      CurveClassMonoid({{"a", Side::X1, Rational(1)}, {"b", Side::X2, Rational(1)}}),
      g,
      {},
      CurveClass({{"a", d}, {"b", d}}),
      {},
      SectorCatalog::point()};
  for (int i = 1; i <= n; ++i) problem.legs.push_back({i, 1, i <= left ? Side::X1 : Side::X2});
  for (int c = 1; c <= d; ++c) problem.contact_catalog.push_back({1, c});
  return problem;
}

std::vector<Insertion> p1_insertions(int leg_count) {
  std::vector<Insertion> out;
  for (int i = 1; i <= leg_count; ++i) out.push_back({i, 1, "pt", Parity::even});
  return out;
}

DegenerationCheckReport degeneration_check(int d, int g, std::optional<int> left_legs,
                                           const EvaluationOptions& options) {
  if (d < 1 || d > 4) throw ScaleError("degeneration check supports degrees 1..4");
  if (g < 0 || g > 2) throw ScaleError("degeneration check supports genera 0..2");
  const auto problem = p1_degeneration_problem(d, g, left_legs);
  const auto table = build_p1_table(d, g);
  const auto insertions = p1_insertions(problem.leg_count());
  DegenerationCheckReport report;
  report.degree = d;
  report.genus = g;
  report.left_legs = left_legs.value_or((problem.leg_count() + 1) / 2);
  const auto result =
      evaluate_degeneration(problem, insertions, table, TwistingChoice::minimal(), options);
  report.engine_value = result.value;
  report.splitting_count = result.splitting_count;
  report.oracle_value = hurwitz_count({d, g, {}});
  report.equal = report.engine_value == report.oracle_value;
  return report;
}

}  // namespace degenkit
