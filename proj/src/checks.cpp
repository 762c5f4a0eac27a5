// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit/checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "degenkit/oracle.hpp"

namespace degenkit {

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names{"algebra", "lifts", "ledger", "orbits", "hurwitz", "all"};
  return names;
}

namespace {

void add(CheckReport& report, std::string name, bool ok, std::string detail = {}) {
  report.items.push_back({std::move(name), ok, std::move(detail)});
}

// Sign of sorting a graded monomial by adjacent transpositions.
int monomial_sign(std::vector<std::size_t> order, const std::vector<Parity>& parities) {
  int sign = 1;
  for (std::size_t pass = 0; pass < order.size(); ++pass)
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      if (order[i] > order[i + 1]) {
        if (is_odd(parities[order[i]]) && is_odd(parities[order[i + 1]])) sign = -sign;
        std::swap(order[i], order[i + 1]);
      }
  return sign;
}

SectorCatalog twisted_sample() {
  std::vector<Sector> sectors{{"u", 1, "u"}, {"t1", 2, "t2"}, {"t2", 2, "t1"}, {"w", 3, "w"}};
  std::vector<BasisClass> basis{{"1", "u", Parity::even}, {"h", "u", Parity::even},
                                {"o1", "u", Parity::odd},  {"o2", "u", Parity::odd},
                                {"a", "t1", Parity::even}, {"b", "t2", Parity::even},
                                {"c", "w", Parity::even}};
  const auto q = [](long p, long r = 1) { return make_rational(p, r); };
  Matrix pairing(7, Vector(7, q(0)));
  pairing[0][1] = pairing[1][0] = q(1);
  pairing[1][1] = q(2);
  pairing[2][3] = q(1);
  pairing[3][2] = q(-1);
  pairing[4][4] = pairing[5][5] = q(1, 2);
  pairing[6][6] = q(1, 3);
  Matrix inv = identity_matrix(7);
  inv[4][4] = inv[5][5] = q(0);
  inv[5][4] = inv[4][5] = q(1);
  return SectorCatalog(std::move(sectors), std::move(basis), std::move(pairing), std::move(inv));
}

void algebra_suite(CheckReport& report) {
  std::size_t cases = 0, bad = 0;
  for (std::size_t n = 0; n <= 5; ++n)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Parity> parities(n);
      for (std::size_t i = 0; i < n; ++i) parities[i] = (mask >> i) & 1u ? Parity::odd : Parity::even;
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        ++cases;
        if (koszul_sign(perm, parities) != monomial_sign(perm, parities)) ++bad;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  add(report, "koszul sign matches graded monomial reordering", bad == 0,
      std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches");

  const SectorCatalog cat = twisted_sample();
  const auto duals = dual_basis(cat);
  bool dual_ok = true;
  for (std::size_t i = 0; i < cat.dimension(); ++i)
    for (std::size_t j = 0; j < cat.dimension(); ++j)
      if (standard_pairing(cat, duals[i], unit_vector(cat.dimension(), j)) != (i == j ? 1 : 0)) dual_ok = false;
  add(report, "dual basis pairs to the identity", dual_ok);

  bool involutive = true;
  for (std::size_t j = 0; j < cat.dimension(); ++j) {
    const Vector e = unit_vector(cat.dimension(), j);
    if (apply_involution(cat, apply_involution(cat, e)) != e) involutive = false;
  }
  add(report, "iota^* is an involution", involutive);

  bool conversion = true;
  for (std::size_t i = 0; i < cat.dimension(); ++i) {
    const Vector cr = chen_ruan_dual(i, cat);
    Vector expected = apply_involution(cat, duals[i]);
    for (auto& x : expected) x *= cat.band_order_of(i);
    if (cr != expected) conversion = false;
    for (std::size_t j = 0; j < cat.dimension(); ++j) {
      const Rational lhs = chen_ruan_pairing(cat, apply_involution(cat, cr), unit_vector(cat.dimension(), j));
      const Rational rhs = standard_pairing(cat, duals[i], unit_vector(cat.dimension(), j)) *
                           cat.band_order_of(i) / cat.band_order_of(j);
      if (lhs != rhs) conversion = false;
      const Rational identity =
          standard_pairing(cat, apply_involution(cat, cr), unit_vector(cat.dimension(), j)) / cat.band_order_of(i);
      if (identity != (i == j ? 1 : 0)) conversion = false;
    }
  }
  add(report, "Chen-Ruan dual is r iota^* of the standard dual", conversion);
}

void lifts_suite(CheckReport& report) {
  std::size_t cases = 0, bad = 0;
  for (std::int64_t c = 1; c <= 12; ++c)
    for (std::int64_t rs = 1; rs <= 12; ++rs)
      for (std::int64_t r = c; r <= 24; r += c) {
        ++cases;
        const LiftReport l = lift_analysis(c, r, rs);
        const bool lifts = (c * rs) % r == 0;
        const bool rep = r == c * rs;
        if (l.lifts != lifts || l.representable != rep || l.transversal != rep || (rep && !l.lifts) ||
            l.source_index.has_value() != lifts)
          ++bad;
      }
  add(report, "lift truth table", bad == 0, std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches");

  bool round_trip = true;
  for (std::int64_t c = 1; c <= 12; ++c)
    for (std::int64_t rs = 1; rs <= 12; ++rs)
      if (required_source_index(c, c * rs) != rs) round_trip = false;
  add(report, "required source index round trip", round_trip);

  bool band = true;
  for (std::int64_t r = 1; r <= 12; ++r)
    for (std::int64_t rs = 1; rs <= r; ++rs) {
      if (r % rs != 0) continue;
      for (std::int64_t g = 1; g <= 6; ++g)
        if (evaluation_band_order(r, g, g * rs) != r / rs) band = false;
    }
  add(report, "band order equals r / r_Sigma on lifted inertia", band);
}

void for_each_multiset(int max_size, int max_part, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int lo) {
    f(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int c = lo; c <= max_part; ++c) {
      cur.push_back(c);
      rec(c);
      cur.pop_back();
    }
  };
  rec(1);
}

void ledger_suite(CheckReport& report) {
  std::map<ContactMultiset, std::int64_t> table;
  std::int64_t salt = 1;
  for_each_multiset(4, 5, [&](const std::vector<int>& c) {
    if (!c.empty()) table[c] = minimal_twist(c) * (1 + (salt++ % 4));
  });
  const std::vector<TwistingChoice> rules{TwistingChoice::minimal(), TwistingChoice::multiple_of_minimal(2),
                                          TwistingChoice::multiple_of_minimal(6),
                                          TwistingChoice::from_table(table)};
  std::size_t cases = 0, bad = 0;
  for_each_multiset(4, 5, [&](const std::vector<int>& c) {
    Rational expected = 1 / factorial(static_cast<unsigned>(c.size()));
    for (int x : c) expected *= x;
    for (const auto& rule : rules) {
      ++cases;
      const auto ledger = degeneration_ledger(c, rule);
      Rational product = 1;
      for (const auto& s : ledger.stages) product *= s.factor;
      if (ledger.net != expected || product != ledger.net) ++bad;
    }
  });
  add(report, "ledger net is prod c / |M|! for every twisting rule", bad == 0,
      std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches");

  std::vector<ContactMultiset> domain;
  for_each_multiset(4, 5, [&](const std::vector<int>& c) {
    if (!c.empty()) domain.push_back(c);
  });
  add(report, "minimal rule precedes every other rule",
      std::all_of(rules.begin(), rules.end(),
                  [&](const TwistingChoice& r) { return precedes(TwistingChoice::minimal(), r, domain); }));
}

void orbits_suite(CheckReport& report) {
  for (int d = 1; d <= 3; ++d)
    for (int g = 0; g <= 1; ++g) {
      const auto problem = p1_degeneration_problem(d, g);
      const auto omega = enumerate_splittings(problem);
      std::map<std::size_t, std::vector<Splitting>> by_m;
      for (const auto& s : omega) by_m[s.root_count()].push_back(s);
      bool identity = true;
      for (const auto& [m, group] : by_m) {
        std::size_t covered = 0;
        for (const auto& o : orbits(group)) {
          covered += o.members.size();
          if (Rational(static_cast<long>(o.members.size() * o.stabilizer_order)) != factorial(static_cast<unsigned>(m)))
            identity = false;
        }
        if (covered != group.size()) identity = false;
      }
      std::ostringstream name;
      name << "orbit-stabilizer on P^1 problem d=" << d << " g=" << g;
      add(report, name.str(), identity, std::to_string(omega.size()) + " splittings");

      const auto table = build_p1_table(d, g);
      const auto ins = p1_insertions(problem.leg_count());
      EvaluationOptions labeled, orbit;
      orbit.normalization = Normalization::orbits;
      const auto a = evaluate_degeneration(problem, ins, table, TwistingChoice::minimal(), labeled).value;
      const auto b = evaluate_degeneration(problem, ins, table, TwistingChoice::minimal(), orbit).value;
      name.str("");
      name << "labeled and orbit normalizations agree d=" << d << " g=" << g;
      add(report, name.str(), a == b, to_string(a) + " vs " + to_string(b));
    }
}

void hurwitz_suite(CheckReport& report) {
  const auto p = [](std::vector<int> parts) { return RamificationProfile::from(std::move(parts)); };
  add(report, "H(d=1, g=0) = 1", hurwitz_count({1, 0, {}}) == 1);
  add(report, "H(d=2, g=0) = 1/2", hurwitz_count({2, 0, {}}) == make_rational(1, 2));
  add(report, "H(d=3, g=0; (3),(3)) = 1/3", hurwitz_count({3, 0, {p({3}), p({3})}}) == make_rational(1, 3));
  for (int d = 1; d <= 4; ++d)
    for (int g = 0; g <= 2; ++g) {
      if (d == 4 && g == 2) continue;
      const auto r = degeneration_check(d, g);
      add(report, "degeneration check d=" + std::to_string(d) + " g=" + std::to_string(g), r.equal,
          to_string(r.engine_value) + " vs " + to_string(r.oracle_value));
    }
}

}  // namespace

CheckReport run_check_suite(std::string_view suite) {
  CheckReport report;
  report.suite = std::string(suite);
  if (suite == "algebra" || suite == "all") algebra_suite(report);
  if (suite == "lifts" || suite == "all") lifts_suite(report);
  if (suite == "ledger" || suite == "all") ledger_suite(report);
  if (suite == "orbits" || suite == "all") orbits_suite(report);
  if (suite == "hurwitz" || suite == "all") hurwitz_suite(report);
  const auto& names = check_suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw ValidationError("unknown check suite \"" + std::string(suite) + "\"", "suite");
  return report;
}

}  // namespace degenkit
