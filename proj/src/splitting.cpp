// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit/splitting.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace degenkit {

std::vector<ContactDatum> contact_catalog_from(const SectorCatalog& divisor, int c_max) {
  if (c_max < 1) throw ValidationError("c_max must be at least 1", "contact/c_max");
  std::set<int> bands;
  for (const auto& s : divisor.sectors()) bands.insert(s.band_order);
  std::vector<ContactDatum> out;
  for (int f : bands)
    for (int c = 1; c <= c_max; ++c) out.push_back({f, c});
  return out;
}

void DegenerationProblem::validate() const {
  if (genus < 0) throw ValidationError("genus must be nonnegative", "genus");
  std::vector<bool> seen(legs.size() + 1, false);
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const auto& l = legs[i];
    const std::string path = "legs/" + std::to_string(i);
    if (l.label < 1 || l.label > static_cast<int>(legs.size()) || seen[l.label])
      throw ValidationError("leg labels must be exactly 1..n", path + "/label");
    seen[l.label] = true;
    if (l.index_e < 1) throw ValidationError("leg index e must be positive", path + "/e");
  }
  for (const auto& [gen, e] : beta.exponents())
    if (!monoid.contains(gen)) throw ValidationError("unknown generator \"" + gen + "\"", "beta");
  std::set<ContactDatum> unique;
  for (std::size_t i = 0; i < contact_catalog.size(); ++i) {
    const auto& c = contact_catalog[i];
    const std::string path = "contact/pairs/" + std::to_string(i);
    if (c.index_f < 1 || c.contact < 1)
      throw ValidationError("contact data f and c must be positive", path);
    if (!unique.insert(c).second) throw ValidationError("duplicate contact datum", path);
  }
}

std::vector<int> Splitting::root_labels() const {
  std::vector<int> out;
  for (const auto& r : xi1.roots) out.push_back(r.label);
  return out;
}

std::vector<int> Splitting::contacts() const {
  std::vector<int> out;
  for (const auto& r : xi1.roots) out.push_back(r.contact);
  return out;
}

std::vector<int> Splitting::indices() const {
  std::vector<int> out;
  for (const auto& r : xi1.roots) out.push_back(r.index_f);
  return out;
}

std::vector<int> Splitting::legs_on(Side side) const {
  std::vector<int> out;
  for (const auto& l : graph(side).legs) out.push_back(l.label);
  std::sort(out.begin(), out.end());
  return out;
}

std::string canonical_form(const Splitting& splitting) {
  return canonical_form(splitting.xi1) + "||" + canonical_form(splitting.xi2);
}

namespace {

// Reorder vertices by smallest root label (rootless vertices last, stable)
// and sort legs and roots by label.
void normalize(ModularGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<int> key(n, std::numeric_limits<int>::max());
  for (const auto& r : g.roots) key[r.vertex] = std::min(key[r.vertex], r.label);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  std::vector<std::size_t> pos(n);
  std::vector<Vertex> vs(n);
  for (std::size_t p = 0; p < n; ++p) {
    pos[order[p]] = p;
    vs[p] = g.vertices[order[p]];
  }
  g.vertices = std::move(vs);
  for (auto& r : g.roots) r.vertex = pos[r.vertex];
  for (auto& l : g.legs) l.vertex = pos[l.vertex];
  for (auto& [a, b] : g.edges) {
    a = pos[a];
    b = pos[b];
  }
  std::sort(g.roots.begin(), g.roots.end(), [](const Root& a, const Root& b) { return a.label < b.label; });
  std::sort(g.legs.begin(), g.legs.end(), [](const Leg& a, const Leg& b) { return a.label < b.label; });
}

}  // namespace

Splitting relabel_roots(const Splitting& splitting, std::span<const std::size_t> sigma) {
  const std::size_t m = splitting.root_count();
  if (sigma.size() != m) throw ContractViolation("relabel_roots: permutation has wrong size");
  const int n = static_cast<int>(splitting.xi1.legs.size() + splitting.xi2.legs.size());
  Splitting out = splitting;
  for (auto* g : {&out.xi1, &out.xi2})
    for (auto& r : g->roots) {
      const auto k = static_cast<std::size_t>(r.label - n - 1);
      if (k >= m) throw ContractViolation("relabel_roots: root labels are not n+1..n+|M|");
      r.label = n + 1 + static_cast<int>(sigma[k]);
    }
  normalize(out.xi1);
  normalize(out.xi2);
  return out;
}

ConditionBReport check_condition_B(const ModularGraph& graph, const CurveClassMonoid& monoid) {
  if (!graph.edges.empty()) throw ContractViolation("check_condition_B: graph has edges");
  std::vector<Rational> sums(graph.vertices.size(), Rational(0));
  for (const auto& r : graph.roots) sums.at(r.vertex) += intersection_multiplicity(r);
  ConditionBReport report;
  for (std::size_t v = 0; v < graph.vertices.size(); ++v)
    if (sums[v] != d_degree(graph.vertices[v].weight, monoid)) {
      report.holds = false;
      report.failing_vertices.push_back(v);
    }
  return report;
}

int max_root_count(const DegenerationProblem& problem) {
  const Rational d1 = d_degree(restrict_to(problem.beta, Side::X1, problem.monoid), problem.monoid);
  if (d1 == 0 || problem.contact_catalog.empty()) return 0;
  Rational min_d = problem.contact_catalog.front().multiplicity();
  for (const auto& c : problem.contact_catalog) min_d = std::min(min_d, c.multiplicity());
  const Rational q = d1 / min_d;
  return static_cast<int>(mpz_class(q.get_num() / q.get_den()).get_si());
}

namespace {

struct Branch {
  int m = 0;
  Side lone_side = Side::X1;       // used when m == 0
  std::vector<std::size_t> contact;  // catalog index per root
  std::vector<int> block1, block2;   // restricted growth strings
  int v1 = 0, v2 = 0;
};

// All restricted growth strings of length m; value = number of blocks.
std::vector<std::pair<std::vector<int>, int>> set_partitions(int m) {
  std::vector<std::pair<std::vector<int>, int>> out;
  std::vector<int> a(m, 0);
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == m) {
      out.emplace_back(a, blocks);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      a[pos] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

bool connected(const std::vector<int>& b1, int v1, const std::vector<int>& b2, int v2) {
  std::vector<int> parent(v1 + v2);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = v1 + v2;
  for (std::size_t j = 0; j < b1.size(); ++j) {
    const int a = find(b1[j]), b = find(v1 + b2[j]);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

struct GenEntry {
  std::string id;
  std::int64_t exponent;
  Rational d;
};

// Every way to split `beta` over vertices whose D-degrees must equal
// `targets` exactly.
std::vector<std::vector<CurveClass>> distribute(const CurveClass& beta, const CurveClassMonoid& monoid,
                                                const std::vector<Rational>& targets) {
  const std::size_t nv = targets.size();
  std::vector<GenEntry> gens;
  for (const auto& [id, e] : beta.exponents()) gens.push_back({id, e, monoid.generator(id).d_degree});
  std::vector<std::vector<CurveClass>> out;
  std::vector<std::vector<std::int64_t>> exps(gens.size(), std::vector<std::int64_t>(nv, 0));
  std::vector<Rational> partial(nv, Rational(0));
  std::function<void(std::size_t, std::size_t, std::int64_t)> rec = [&](std::size_t gi, std::size_t v,
                                                                         std::int64_t left) {
    if (gi == gens.size()) {
      if (partial != targets) return;
      std::vector<CurveClass> ws(nv);
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t u = 0; u < nv; ++u) ws[u].add(gens[g].id, exps[g][u]);
      out.push_back(std::move(ws));
      return;
    }
    const auto& gen = gens[gi];
    if (v + 1 == nv) {
      exps[gi][v] = left;
      const Rational add = gen.d * Rational(static_cast<long>(left));
      partial[v] += add;
      if (partial[v] <= targets[v]) rec(gi + 1, 0, gi + 1 < gens.size() ? gens[gi + 1].exponent : 0);
      partial[v] -= add;
      exps[gi][v] = 0;
      return;
    }
    for (std::int64_t e = 0; e <= left; ++e) {
      const Rational add = gen.d * Rational(static_cast<long>(e));
      if (partial[v] + add > targets[v]) break;
      partial[v] += add;
      exps[gi][v] = e;
      rec(gi, v + 1, left - e);
      partial[v] -= add;
    }
    exps[gi][v] = 0;
  };
  if (nv == 0) {
    if (beta.is_zero()) out.emplace_back();
    return out;
  }
  rec(0, 0, gens.empty() ? 0 : gens[0].exponent);
  return out;
}

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int x = 0; x <= total; ++x) {
    cur.push_back(x);
    compositions(total - x, parts - 1, cur, out);
    cur.pop_back();
  }
}

class Enumerator {
 public:
  explicit Enumerator(const DegenerationProblem& p) : problem_(p) {
    problem_.validate();
    beta1_ = restrict_to(p.beta, Side::X1, p.monoid);
    beta2_ = restrict_to(p.beta, Side::X2, p.monoid);
    build_branches();
  }

  std::size_t branch_count() const { return branches_.size(); }

  // Expands one branch; returns false if `limit` nodes were exceeded.
  bool expand(std::size_t bi, std::uint64_t limit, std::vector<Splitting>& out,
              std::uint64_t& nodes) const {
    const Branch& br = branches_[bi];
    nodes = 1;
    const int n = problem_.leg_count();
    if (br.m == 0) {
      for (const auto& leg : problem_.legs)
        if (leg.side && *leg.side != br.lone_side) return true;
      Splitting s;
      ModularGraph& g = br.lone_side == Side::X1 ? s.xi1 : s.xi2;
      g.vertices.push_back({problem_.genus, problem_.beta});
      for (const auto& leg : problem_.legs) g.legs.push_back({leg.label, leg.index_e, 0});
      normalize(g);
      out.push_back(std::move(s));
      ++nodes;
      return limit == 0 || nodes <= limit;
    }
    const auto& cat = problem_.contact_catalog;
    std::vector<Rational> t1(br.v1, Rational(0)), t2(br.v2, Rational(0));
    for (int j = 0; j < br.m; ++j) {
      const Rational d = cat[br.contact[j]].multiplicity();
      t1[br.block1[j]] += d;
      t2[br.block2[j]] += d;
    }
    const auto w1 = distribute(beta1_, problem_.monoid, t1);
    if (w1.empty()) return true;
    const auto w2 = distribute(beta2_, problem_.monoid, t2);
    if (w2.empty()) return true;

    const int nv = br.v1 + br.v2;
    const int b1 = br.m - nv + 1;
    std::vector<std::vector<int>> genera;
    std::vector<int> cur;
    compositions(problem_.genus - b1, nv, cur, genera);

    // Allowed vertices (global numbering: side 1 first) per leg.
    std::vector<std::vector<int>> allowed(n);
    for (const auto& leg : problem_.legs) {
      auto& a = allowed[leg.label - 1];
      if (!leg.side || *leg.side == Side::X1)
        for (int v = 0; v < br.v1; ++v) a.push_back(v);
      if (!leg.side || *leg.side == Side::X2)
        for (int v = 0; v < br.v2; ++v) a.push_back(br.v1 + v);
      if (a.empty()) return true;
    }

    ModularGraph base1, base2;
    base1.vertices.resize(br.v1);
    base2.vertices.resize(br.v2);
    for (int j = 0; j < br.m; ++j) {
      const auto& c = cat[br.contact[j]];
      base1.roots.push_back({n + 1 + j, c.index_f, c.contact, static_cast<std::size_t>(br.block1[j])});
      base2.roots.push_back({n + 1 + j, c.index_f, c.contact, static_cast<std::size_t>(br.block2[j])});
    }

    std::vector<std::size_t> choice(n, 0);
    for (const auto& wa : w1)
      for (const auto& wb : w2)
        for (const auto& gs : genera) {
          for (int v = 0; v < br.v1; ++v) base1.vertices[v] = {gs[v], wa[v]};
          for (int v = 0; v < br.v2; ++v) base2.vertices[v] = {gs[br.v1 + v], wb[v]};
          std::fill(choice.begin(), choice.end(), 0);
          while (true) {
            Splitting s{base1, base2};
            for (int i = 0; i < n; ++i) {
              const int v = allowed[i][choice[i]];
              const int e = problem_.legs[idx_of_label(i + 1)].index_e;
              if (v < br.v1)
                s.xi1.legs.push_back({i + 1, e, static_cast<std::size_t>(v)});
              else
                s.xi2.legs.push_back({i + 1, e, static_cast<std::size_t>(v - br.v1)});
            }
            out.push_back(std::move(s));
            if (limit != 0 && ++nodes > limit) return false;
            int i = n - 1;
            while (i >= 0 && ++choice[i] == allowed[i].size()) choice[i--] = 0;
            if (i < 0) break;
          }
        }
    return true;
  }

 private:
  std::size_t idx_of_label(int label) const { return label_index_[label - 1]; }

  void build_branches() {
    label_index_.resize(problem_.legs.size());
    for (std::size_t i = 0; i < problem_.legs.size(); ++i)
      label_index_[problem_.legs[i].label - 1] = i;

    const Rational d1 = d_degree(beta1_, problem_.monoid);
    const Rational d2 = d_degree(beta2_, problem_.monoid);
    if (d1 == 0 && d2 == 0) {
      if (beta2_.is_zero()) branches_.push_back({0, Side::X1, {}, {}, {}, 0, 0});
      if (beta1_.is_zero()) branches_.push_back({0, Side::X2, {}, {}, {}, 0, 0});
    }
    if (d1 != d2 || d1 == 0) return;
    if (problem_.contact_catalog.empty())
      throw ValidationError("no admissible contact data", "contact");

    const auto& cat = problem_.contact_catalog;
    const int m_max = max_root_count(problem_);
    for (int m = 1; m <= m_max; ++m) {
      const auto parts = set_partitions(m);
      std::vector<std::size_t> tuple(m);
      std::function<void(int, Rational)> rec = [&](int j, Rational left) {
        if (j == m) {
          if (left != 0) return;
          for (const auto& [p1, v1] : parts)
            for (const auto& [p2, v2] : parts) {
              if (m - v1 - v2 + 1 > problem_.genus) continue;
              if (!connected(p1, v1, p2, v2)) continue;
              branches_.push_back({m, Side::X1, tuple, p1, p2, v1, v2});
            }
          return;
        }
        for (std::size_t k = 0; k < cat.size(); ++k) {
          const Rational d = cat[k].multiplicity();
          if (d > left) continue;
          tuple[j] = k;
          rec(j + 1, left - d);
        }
      };
      rec(0, d1);
    }
  }

  const DegenerationProblem& problem_;
  CurveClass beta1_, beta2_;
  std::vector<Branch> branches_;
  std::vector<std::size_t> label_index_;
};

}  // namespace

void for_each_splitting(const DegenerationProblem& problem, const EnumerationOptions& options,
                        const std::function<void(Splitting&&)>& visit) {
  Enumerator en(problem);
  const std::size_t total = en.branch_count();
  std::uint64_t used = 0;
  const unsigned threads = std::max(1u, options.threads);

  auto remaining = [&]() -> std::uint64_t {
    if (options.budget == 0) return 0;
    return options.budget > used ? options.budget - used : 1;
  };
  auto fail = [&](std::size_t at) {
    throw BudgetExceeded(options.resume_from, at, total, {});
  };

  for (std::size_t start = options.resume_from; start < total; start += threads) {
    const std::size_t stop = std::min<std::size_t>(total, start + threads);
    struct Result {
      std::vector<Splitting> items;
      std::uint64_t nodes = 0;
      bool ok = true;
    };
    std::vector<Result> results(stop - start);
    const std::uint64_t limit = remaining();
    if (threads == 1 || stop - start == 1) {
      for (std::size_t b = start; b < stop; ++b) {
        auto& r = results[b - start];
        r.ok = en.expand(b, limit, r.items, r.nodes);
      }
    } else {
      std::vector<std::future<void>> jobs;
      for (std::size_t b = start; b < stop; ++b)
        jobs.push_back(std::async(std::launch::async, [&, b] {
          auto& r = results[b - start];
          r.ok = en.expand(b, limit, r.items, r.nodes);
        }));
      for (auto& j : jobs) j.get();
    }
    for (std::size_t b = start; b < stop; ++b) {
      auto& r = results[b - start];
      if (!r.ok || (options.budget != 0 && used + r.nodes > options.budget)) fail(b);
      used += r.nodes;
      for (auto& s : r.items) visit(std::move(s));
    }
  }
}

std::vector<Splitting> enumerate_splittings(const DegenerationProblem& problem,
                                            const EnumerationOptions& options) {
  std::vector<Splitting> out;
  try {
    for_each_splitting(problem, options, [&](Splitting&& s) { out.push_back(std::move(s)); });
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(e.resume_from(), e.next_branch(), e.total_branches(), std::move(out));
  }
  return out;
}

std::vector<SplittingOrbit> orbits(std::span<const Splitting> omega) {
  std::vector<SplittingOrbit> out;
  if (omega.empty()) return out;
  const std::size_t m = omega.front().root_count();
  std::vector<std::size_t> sigma(m);
  std::map<std::string, std::size_t> by_key;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (omega[i].root_count() != m)
      throw ContractViolation("orbits: splittings do not share |M|");
    const std::string self = canonical_form(omega[i]);
    std::string best = self;
    std::size_t stabilizer = 0;
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      const std::string img = canonical_form(relabel_roots(omega[i], sigma));
      if (img == self) ++stabilizer;
      if (img < best) best = img;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    const auto [it, fresh] = by_key.emplace(best, out.size());
    if (fresh) out.push_back({i, {}, stabilizer});
    out[it->second].members.push_back(i);
  }
  return out;
}

}  // namespace degenkit
