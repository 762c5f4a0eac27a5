// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "oracles.hpp"

namespace {

using namespace degenkit;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome hurwitz_end_to_end() {
  const auto t0 = Clock::now();
  Outcome out;
  int cases = 0;
  for (int g = 0; g <= 2; ++g)
    for (int d = 1; d <= 4; ++d) {
      const auto r = degeneration_check(d, g);
      ++cases;
      if (!r.equal) {
        out.passed = false;
        out.detail += " d=" + std::to_string(d) + ",g=" + std::to_string(g) + ": " + to_string(r.engine_value) +
                      " != " + to_string(r.oracle_value);
      }
    }
  const double s = seconds_since(t0);
  if (s >= 60) out.passed = false;
  out.detail = std::to_string(cases) + " (d,g) pairs exact, " + std::to_string(s) + " s" + out.detail;
  return out;
}

std::vector<oracle::RandomInstance> instances(std::size_t count) {
  std::mt19937 rng(20261015);
  std::vector<oracle::RandomInstance> out;
  while (out.size() < count) {
    auto inst = oracle::random_instance(rng);
    if (max_root_count(inst.problem) > 3) continue;
    out.push_back(std::move(inst));
  }
  return out;
}

Outcome convention_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937 rng(7);
  Outcome out;
  int nonzero = 0, bad = 0;
  const auto all = instances(120);
  for (const auto& inst : all) {
    const auto table = oracle::random_table(inst, rng);
    EvaluationOptions a, b;
    b.convention = Convention::chen_ruan;
    const auto va = evaluate_degeneration(inst.problem, inst.insertions, table, TwistingChoice::minimal(), a).value;
    const auto vb = evaluate_degeneration(inst.problem, inst.insertions, table, TwistingChoice::minimal(), b).value;
    if (va != vb) ++bad;
    if (va != 0) ++nonzero;
  }
  const double s = seconds_since(t0);
  out.passed = bad == 0 && s < 10;
  out.detail = std::to_string(all.size()) + " instances (" + std::to_string(nonzero) + " nonzero), " +
               std::to_string(bad) + " disagreements, " + std::to_string(s) + " s";
  return out;
}

Outcome twisting_independence() {
  std::mt19937 rng(11);
  Outcome out;
  int bad_value = 0, bad_ledger = 0, ledgers = 0;
  const auto all = instances(120);
  for (const auto& inst : all) {
    const auto table = oracle::random_table(inst, rng);
    const auto omega = enumerate_splittings(inst.problem);
    std::map<ContactMultiset, std::int64_t> entries;
    std::vector<ContactMultiset> domain;
    std::uniform_int_distribution<int> mult(1, 4);
    for (const auto& s : omega) {
      const auto c = make_multiset(s.contacts());
      if (c.empty() || entries.count(c)) continue;
      entries[c] = minimal_twist(c) * mult(rng);
      domain.push_back(c);
    }
    const std::vector<TwistingChoice> rules{TwistingChoice::minimal(), TwistingChoice::multiple_of_minimal(2),
                                            TwistingChoice::from_table(entries)};
    for (const auto& rule : rules)
      if (!precedes(TwistingChoice::minimal(), rule, domain)) ++bad_value;
    const auto base = evaluate_degeneration(inst.problem, inst.insertions, table, rules[0]).value;
    for (std::size_t i = 1; i < rules.size(); ++i)
      if (evaluate_degeneration(inst.problem, inst.insertions, table, rules[i]).value != base) ++bad_value;
    for (const auto& s : omega) {
      Rational expected = 1 / factorial(static_cast<unsigned>(s.root_count()));
      for (int c : s.contacts()) expected *= c;
      for (const auto& rule : rules) {
        ++ledgers;
        if (degeneration_ledger(s, rule).net != expected) ++bad_ledger;
      }
    }
  }
  out.passed = bad_value == 0 && bad_ledger == 0;
  out.detail = std::to_string(all.size()) + " instances x 3 rules, " + std::to_string(bad_value) +
               " value mismatches; " + std::to_string(ledgers) + " ledgers, " + std::to_string(bad_ledger) +
               " off prod c/|M|!";
  return out;
}

Outcome orbit_stabilizer() {
  Outcome out;
  int problems = 0, bad = 0;
  std::size_t max_m = 0;
  auto check = [&](const DegenerationProblem& p, const std::vector<Insertion>& ins, const InvariantTable& table) {
    ++problems;
    const auto omega = enumerate_splittings(p);
    std::map<std::size_t, std::vector<Splitting>> by_m;
    for (const auto& s : omega) by_m[s.root_count()].push_back(s);
    Rational total = 0;
    for (const auto& [m, group] : by_m) {
      max_m = std::max(max_m, m);
      for (const auto& o : orbits(group))
        total += factorial(static_cast<unsigned>(m)) / Rational(static_cast<long>(o.stabilizer_order));
    }
    if (total != Rational(static_cast<long>(omega.size()))) ++bad;
    EvaluationOptions labeled, orbit;
    orbit.normalization = Normalization::orbits;
    const auto a = evaluate_degeneration(p, ins, table, TwistingChoice::minimal(), labeled).value;
    const auto b = evaluate_degeneration(p, ins, table, TwistingChoice::minimal(), orbit).value;
    if (a != b) ++bad;
  };
  for (int d = 1; d <= 4; ++d)
    for (int g = 0; g <= (d == 4 ? 0 : 1); ++g) {
      const auto p = p1_degeneration_problem(d, g);
      check(p, p1_insertions(p.leg_count()), build_p1_table(d, g));
    }
  std::mt19937 rng(13);
  for (const auto& inst : instances(60)) check(inst.problem, inst.insertions, oracle::random_table(inst, rng));
  out.passed = bad == 0 && max_m >= 4;
  out.detail = std::to_string(problems) + " problems, |M| up to " + std::to_string(max_m) + ", " +
               std::to_string(bad) + " failures";
  return out;
}

Outcome lift_truth_table() {
  const auto t0 = Clock::now();
  Outcome out;
  int cases = 0, bad = 0;
  for (std::int64_t c = 1; c <= 12; ++c)
    for (std::int64_t rs = 1; rs <= 12; ++rs)
      for (std::int64_t r = c; r <= 24; r += c) {
        ++cases;
        const auto l = lift_analysis(c, r, rs);
        const bool lifts = (c * rs) % r == 0;
        const bool representable = r == c * rs;
        if (l.lifts != lifts || l.representable != representable || l.transversal != representable ||
            (l.representable && !l.lifts))
          ++bad;
        if (representable && required_source_index(c, r) != rs) ++bad;
      }
  const double s = seconds_since(t0);
  out.passed = bad == 0 && s < 1;
  out.detail = std::to_string(cases) + " cases, " + std::to_string(bad) + " exceptions, " + std::to_string(s) + " s";
  return out;
}

Outcome sign_calculus() {
  const auto t0 = Clock::now();
  Outcome out;
  long cases = 0, bad = 0;
  for (std::size_t n = 0; n <= 6; ++n)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Parity> par(n);
      for (std::size_t i = 0; i < n; ++i) par[i] = (mask >> i) & 1u ? Parity::odd : Parity::even;
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        ++cases;
        if (koszul_sign(perm, par) != oracle::monomial_sign(perm, par)) ++bad;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  const double s = seconds_since(t0);
  out.passed = bad == 0 && s < 5;
  out.detail = std::to_string(cases) + " reorderings, " + std::to_string(bad) + " mismatches, " +
               std::to_string(s) + " s";
  return out;
}

std::vector<DegenerationProblem> enumeration_grid() {
  const auto q = [](long p, long r = 1) { return make_rational(p, r); };
  std::vector<std::vector<Generator>> monoids{
      {{"a", Side::X1, q(1)}, {"b", Side::X2, q(1)}},
      {{"a", Side::X1, q(2)}, {"b", Side::X2, q(1)}},
      {{"a", Side::X1, q(1, 2)}, {"b", Side::X2, q(1, 2)}},
      {{"a", Side::X1, q(1)}, {"b", Side::X1, q(0)}},
      {{"a", Side::X1, q(0)}},
      {{"a", Side::X1, q(1)}}};
  std::vector<std::vector<ContactDatum>> catalogs{{{1, 1}}, {{1, 1}, {1, 2}}, {{1, 1}, {2, 1}}};
  std::vector<std::vector<LegSpec>> leg_sets{
      {}, {{1, 1, std::nullopt}}, {{1, 1, Side::X1}, {2, 2, std::nullopt}}, {{1, 1, Side::X2}, {2, 1, Side::X1}}};
  std::vector<DegenerationProblem> out;
  for (const auto& gens : monoids)
    for (std::int64_t ea = 0; ea <= 2; ++ea)
      for (std::int64_t eb = 0; eb <= 2; ++eb) {
        if (gens.size() == 1 && eb > 0) continue;
        std::map<std::string, std::int64_t> beta{{"a", ea}};
        if (gens.size() == 2) beta["b"] = eb;
        for (const auto& cat : catalogs)
          for (const auto& legs : leg_sets)
            for (int g = 0; g <= 2; ++g) {
              DegenerationProblem p{CurveClassMonoid(gens), g, legs, CurveClass(beta), cat, std::nullopt};
              if (max_root_count(p) > 3) continue;
              out.push_back(std::move(p));
            }
      }
  return out;
}

Outcome enumeration_vs_naive() {
  const auto t0 = Clock::now();
  Outcome out;
  int bad = 0;
  std::size_t total = 0;
  const auto grid = enumeration_grid();
  for (const auto& p : grid) {
    std::set<std::string> engine;
    std::size_t count = 0;
    for (const auto& s : enumerate_splittings(p)) {
      engine.insert(oracle::brute_canonical(s));
      ++count;
    }
    const auto naive = oracle::naive_splittings(p, 3);
    total += naive.size();
    if (engine != naive || count != engine.size()) ++bad;
  }
  const double s = seconds_since(t0);
  out.passed = bad == 0 && s < 30;
  out.detail = std::to_string(grid.size()) + " instances, " + std::to_string(total) + " splittings, " +
               std::to_string(bad) + " mismatches, " + std::to_string(s) + " s";
  return out;
}

Outcome disconnected_product() {
  std::mt19937 rng(17);
  Outcome out;
  int cases = 0, bad = 0, negative = 0;
  std::uniform_int_distribution<int> vcount(1, 3), mcount(1, 6), coin(0, 1);
  while (cases < 200) {
    const int nv = vcount(rng), nmarks = mcount(rng);
    ModularGraph g;
    for (int v = 0; v < nv; ++v) g.vertices.push_back({v % 2, CurveClass({{"a", v + 1}})});
    std::vector<Insertion> legs;
    std::vector<RootInsertion> roots;
    std::vector<Parity> parity(nmarks + 1);
    std::vector<std::size_t> at(nmarks + 1);
    std::vector<bool> is_leg(nmarks + 1);
    std::vector<std::string> cls(nmarks + 1);
    for (int label = 1; label <= nmarks; ++label) {
      at[label] = std::uniform_int_distribution<std::size_t>(0, nv - 1)(rng);
      parity[label] = coin(rng) ? Parity::odd : Parity::even;
      is_leg[label] = coin(rng);
      cls[label] = "c" + std::to_string(label);
      if (is_leg[label]) {
        g.legs.push_back({label, 1, at[label]});
        legs.push_back({label, 0, cls[label], parity[label]});
      } else {
        g.roots.push_back({label, 1, 1, at[label]});
        roots.push_back({label, cls[label], parity[label]});
      }
    }
    bool unmarked = false;
    for (int v = 0; v < nv; ++v) {
      bool any = false;
      for (int label = 1; label <= nmarks; ++label) any = any || at[label] == static_cast<std::size_t>(v);
      unmarked = unmarked || !any;
    }
    if (unmarked && nv > 1) continue;
    ++cases;
    // Source order: legs by label, then roots by label. Target: components by
    // smallest label, each listing legs then roots.
    std::vector<int> source;
    for (int label = 1; label <= nmarks; ++label)
      if (is_leg[label]) source.push_back(label);
    for (int label = 1; label <= nmarks; ++label)
      if (!is_leg[label]) source.push_back(label);
    std::vector<std::pair<int, int>> order;  // (smallest label, vertex)
    for (int v = 0; v < nv; ++v) {
      int first = nmarks + 1;
      for (int label = nmarks; label >= 1; --label)
        if (at[label] == static_cast<std::size_t>(v)) first = label;
      order.emplace_back(first, v);
    }
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> target;
    std::vector<Parity> source_parity;
    for (int label : source) source_parity.push_back(parity[label]);
    auto position = [&](int label) {
      return static_cast<std::size_t>(std::find(source.begin(), source.end(), label) - source.begin());
    };
    InvariantTable table;
    Rational expected = 1;
    for (const auto& [first, v] : order) {
      std::vector<int> comp_legs, comp_roots;
      for (int label = 1; label <= nmarks; ++label)
        if (at[label] == static_cast<std::size_t>(v)) (is_leg[label] ? comp_legs : comp_roots).push_back(label);
      for (int label : comp_legs) target.push_back(position(label));
      for (int label : comp_roots) target.push_back(position(label));
      // Store the component under a shuffled marking order, adjusting the value
      // by the sign of that shuffle.
      std::vector<int> shuffled_legs = comp_legs, shuffled_roots = comp_roots;
      std::shuffle(shuffled_legs.begin(), shuffled_legs.end(), rng);
      std::shuffle(shuffled_roots.begin(), shuffled_roots.end(), rng);
      std::vector<int> natural = comp_legs, shuffled = shuffled_legs;
      natural.insert(natural.end(), comp_roots.begin(), comp_roots.end());
      shuffled.insert(shuffled.end(), shuffled_roots.begin(), shuffled_roots.end());
      std::vector<Parity> natural_parity;
      for (int label : natural) natural_parity.push_back(parity[label]);
      std::vector<std::size_t> perm;
      for (int label : shuffled)
        perm.push_back(static_cast<std::size_t>(std::find(natural.begin(), natural.end(), label) - natural.begin()));
      const int shuffle_sign = oracle::monomial_sign(perm, natural_parity);
      const Rational value = oracle::random_nonzero(rng);
      CorrelatorKey key;
      key.side = Side::X1;
      key.genus = g.vertices[v].genus;
      key.weight = g.vertices[v].weight;
      for (int label : shuffled_legs) key.legs.push_back({1, 0, cls[label], parity[label]});
      for (int label : shuffled_roots) key.roots.push_back({1, 1, cls[label], parity[label]});
      table.insert(key, shuffle_sign * value);
      expected *= value;
    }
    expected *= oracle::monomial_sign(target, source_parity);
    if (expected < 0) ++negative;
    const Rational got = evaluate_disconnected(g, Side::X1, legs, roots, table, KeyContext{});
    if (got != expected) ++bad;
  }
  out.passed = bad == 0 && cases >= 50;
  out.detail = std::to_string(cases) + " cases (" + std::to_string(negative) + " negative), " + std::to_string(bad) +
               " mismatches";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Hurwitz end-to-end (d<=4, g<=2)", hurwitz_end_to_end},
      {"convention equivalence", convention_equivalence},
      {"twisting independence and ledger net", twisting_independence},
      {"orbit-stabilizer and normalizations", orbit_stabilizer},
      {"lift truth table", lift_truth_table},
      {"Koszul sign vs monomial model", sign_calculus},
      {"splitting enumeration vs naive oracle", enumeration_vs_naive},
      {"disconnected product rule", disconnected_product}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.passed) ++failures;
    std::cout << "criterion " << i + 1 << ": " << (o.passed ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ["
              << o.detail << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
