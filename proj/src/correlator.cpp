// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit/correlator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace degenkit {

bool is_key_identifier(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.';
  });
}

namespace {

char parity_char(Parity p) { return is_odd(p) ? '-' : '+'; }

void require_identifier(std::string_view id, const char* what) {
  if (!is_key_identifier(id))
    throw ValidationError(std::string(what) + " \"" + std::string(id) +
                          "\" cannot appear in a correlator key (allowed: [A-Za-z0-9_.])");
}

}  // namespace

std::string CorrelatorKey::to_string() const {
  std::string out(degenkit::to_string(side));
  out += ";g=" + std::to_string(genus) + ";w=" + weight.to_string() + ";L=";
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const auto& l = legs[i];
    require_identifier(l.class_id, "class id");
    out += (i ? ",(" : "(") + std::to_string(l.index_e) + "," + std::to_string(l.descendant) + "," +
           l.class_id + "," + parity_char(l.parity) + ")";
  }
  out += ";R=";
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    require_identifier(r.class_id, "class id");
    out += (i ? ",(" : "(") + std::to_string(r.index_f) + "," + std::to_string(r.contact) + "," +
           r.class_id + "," + parity_char(r.parity) + ")";
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view s, std::string_view what) {
  if (s.empty() || s.size() > 9 ||
      !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ValidationError("bad " + std::string(what) + " \"" + std::string(s) + "\" in correlator key");
  return std::stoi(std::string(s));
}

std::string_view strip_prefix(std::string_view s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix)
    throw ValidationError("correlator key field must start with \"" + std::string(prefix) + "\"");
  return s.substr(prefix.size());
}

// "(a,b,c,d),(a,b,c,d)" -> tuples of four fields.
std::vector<std::array<std::string_view, 4>> parse_tuples(std::string_view s) {
  std::vector<std::array<std::string_view, 4>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '(') throw ValidationError("expected '(' in correlator key");
    const auto close = s.find(')', i);
    if (close == std::string_view::npos) throw ValidationError("unbalanced '(' in correlator key");
    const auto fields = split(s.substr(i + 1, close - i - 1), ',');
    if (fields.size() != 4) throw ValidationError("marking tuple needs four fields in correlator key");
    out.push_back({fields[0], fields[1], fields[2], fields[3]});
    i = close + 1;
    if (i < s.size()) {
      if (s[i] != ',') throw ValidationError("expected ',' between markings in correlator key");
      ++i;
      if (i == s.size()) throw ValidationError("trailing ',' in correlator key");
    }
  }
  return out;
}

}  // namespace

CorrelatorKey CorrelatorKey::parse(std::string_view text) {
  const auto fields = split(text, ';');
  if (fields.size() != 5)
    throw ValidationError("correlator key needs five ';'-separated fields: \"" + std::string(text) + "\"");
  CorrelatorKey key;
  key.side = parse_side(fields[0]);
  key.genus = parse_int(strip_prefix(fields[1], "g="), "genus");
  std::map<std::string, std::int64_t> weight;
  const auto w = strip_prefix(fields[2], "w=");
  if (!w.empty())
    for (auto part : split(w, ',')) {
      const auto colon = part.find(':');
      if (colon == std::string_view::npos) throw ValidationError("weight entry needs gen:exp in correlator key");
      const std::string gen(part.substr(0, colon));
      require_identifier(gen, "generator id");
      if (!weight.emplace(gen, parse_int(part.substr(colon + 1), "exponent")).second)
        throw ValidationError("repeated generator in correlator key weight");
    }
  key.weight = CurveClass(std::move(weight));
  for (const auto& t : parse_tuples(strip_prefix(fields[3], "L="))) {
    require_identifier(t[2], "class id");
    key.legs.push_back({parse_int(t[0], "leg index"), parse_int(t[1], "descendant exponent"),
                        std::string(t[2]), parse_parity(t[3])});
  }
  for (const auto& t : parse_tuples(strip_prefix(fields[4], "R="))) {
    require_identifier(t[2], "class id");
    key.roots.push_back({parse_int(t[0], "root index"), parse_int(t[1], "contact order"),
                         std::string(t[2]), parse_parity(t[3])});
  }
  for (const auto& l : key.legs)
    if (l.index_e < 1) throw ValidationError("leg index must be positive in correlator key");
  for (const auto& r : key.roots)
    if (r.index_f < 1 || r.contact < 1)
      throw ValidationError("root index and contact order must be positive in correlator key");
  return key;
}

CanonicalKey canonicalize(const CorrelatorKey& key) {
  const std::size_t nl = key.legs.size(), nr = key.roots.size();
  std::vector<std::size_t> lp(nl), rp(nr);
  std::iota(lp.begin(), lp.end(), 0);
  std::iota(rp.begin(), rp.end(), 0);
  std::stable_sort(lp.begin(), lp.end(), [&](auto a, auto b) { return key.legs[a] < key.legs[b]; });
  std::stable_sort(rp.begin(), rp.end(), [&](auto a, auto b) { return key.roots[a] < key.roots[b]; });
  std::vector<std::size_t> perm;
  std::vector<Parity> parities;
  perm.reserve(nl + nr);
  parities.reserve(nl + nr);
  for (const auto& l : key.legs) parities.push_back(l.parity);
  for (const auto& r : key.roots) parities.push_back(r.parity);
  for (auto i : lp) perm.push_back(i);
  for (auto i : rp) perm.push_back(nl + i);

  CanonicalKey out;
  out.key.side = key.side;
  out.key.genus = key.genus;
  out.key.weight = key.weight;
  for (auto i : lp) out.key.legs.push_back(key.legs[i]);
  for (auto i : rp) out.key.roots.push_back(key.roots[i]);
  out.sign = koszul_sign(perm, parities);
  out.text = out.key.to_string();
  return out;
}

bool vanishes_structurally(const CorrelatorKey& key, const KeyContext& context) {
  if (context.monoid != nullptr) {
    Rational sum = 0;
    for (const auto& r : key.roots) sum += make_rational(r.contact, r.index_f);
    if (sum != d_degree(key.weight, *context.monoid)) return true;
  }
  if (context.divisor != nullptr) {
    for (const auto& r : key.roots) {
      const auto idx = context.divisor->index_of(r.class_id);
      if (idx && context.divisor->band_order_of(*idx) != r.index_f) return true;
    }
    int odd = 0;
    for (const auto& l : key.legs) odd += is_odd(l.parity);
    for (const auto& r : key.roots) odd += is_odd(r.parity);
    if (odd % 2 != 0) return true;
  }
  return false;
}

void InvariantTable::insert(const CorrelatorKey& key, const Rational& value) {
  const CanonicalKey c = canonicalize(key);
  const Rational stored = c.sign * value;
  auto repeats_odd = [](const auto& items) {
    for (std::size_t i = 1; i < items.size(); ++i)
      if (is_odd(items[i].parity) && items[i] == items[i - 1]) return true;
    return false;
  };
  if (stored != 0 && (repeats_odd(c.key.legs) || repeats_odd(c.key.roots)))
    throw ValidationError("nonzero value for a correlator repeating an odd insertion: " + c.text);
  const auto [it, fresh] = entries_.emplace(c.text, stored);
  if (!fresh && it->second != stored)
    throw ValidationError("conflicting values for correlator " + c.text);
}

std::optional<Rational> InvariantTable::find(const CorrelatorKey& key) const {
  const CanonicalKey c = canonicalize(key);
  const auto it = entries_.find(c.text);
  if (it == entries_.end()) return std::nullopt;
  return c.sign * it->second;
}

const Rational* InvariantTable::find_canonical(const std::string& text) const {
  const auto it = entries_.find(text);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, Rational>> InvariantTable::sorted_entries() const {
  std::vector<std::pair<std::string, Rational>> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string_view to_string(Convention c) {
  return c == Convention::standard_dual ? "standard_dual" : "chen_ruan";
}

Convention parse_convention(std::string_view text) {
  if (text == "standard_dual" || text == "standard") return Convention::standard_dual;
  if (text == "chen_ruan") return Convention::chen_ruan;
  throw ValidationError("convention must be standard_dual or chen_ruan");
}

std::string_view to_string(Normalization n) {
  return n == Normalization::labeled ? "labeled" : "orbits";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "labeled") return Normalization::labeled;
  if (text == "orbits") return Normalization::orbits;
  throw ValidationError("normalization must be labeled or orbits");
}

namespace {

// One connected component of an edgeless side graph.
struct Component {
  std::size_t vertex = 0;
  std::vector<std::size_t> legs;   // indices into graph.legs, label order
  std::vector<std::size_t> roots;  // indices into graph.roots, label order
  int first_label = 0;
};

std::vector<Component> plan_components(const ModularGraph& g) {
  if (!g.edges.empty()) throw UnsupportedInput("correlators of graphs with edges are not supported");
  std::vector<Component> comps(g.vertices.size());
  for (std::size_t v = 0; v < comps.size(); ++v) {
    comps[v].vertex = v;
    comps[v].first_label = std::numeric_limits<int>::max();
  }
  std::vector<std::size_t> li(g.legs.size()), ri(g.roots.size());
  std::iota(li.begin(), li.end(), 0);
  std::iota(ri.begin(), ri.end(), 0);
  std::sort(li.begin(), li.end(), [&](auto a, auto b) { return g.legs[a].label < g.legs[b].label; });
  std::sort(ri.begin(), ri.end(), [&](auto a, auto b) { return g.roots[a].label < g.roots[b].label; });
  for (auto i : li) {
    auto& c = comps[g.legs[i].vertex];
    c.legs.push_back(i);
    c.first_label = std::min(c.first_label, g.legs[i].label);
  }
  for (auto i : ri) {
    auto& c = comps[g.roots[i].vertex];
    c.roots.push_back(i);
    c.first_label = std::min(c.first_label, g.roots[i].label);
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const Component& a, const Component& b) { return a.first_label < b.first_label; });
  return comps;
}

// Sign of prod_{legs asc} prod_{roots asc} -> prod_components (legs, roots).
int regroup_sign(const ModularGraph& g, const std::vector<Component>& comps,
                 const std::vector<Parity>& leg_parity, const std::vector<Parity>& root_parity) {
  // Source positions: legs by label rank, then roots by label rank.
  std::vector<std::size_t> li(g.legs.size()), ri(g.roots.size());
  std::iota(li.begin(), li.end(), 0);
  std::iota(ri.begin(), ri.end(), 0);
  std::sort(li.begin(), li.end(), [&](auto a, auto b) { return g.legs[a].label < g.legs[b].label; });
  std::sort(ri.begin(), ri.end(), [&](auto a, auto b) { return g.roots[a].label < g.roots[b].label; });
  std::vector<std::size_t> leg_pos(g.legs.size()), root_pos(g.roots.size());
  std::vector<Parity> parities;
  for (std::size_t k = 0; k < li.size(); ++k) {
    leg_pos[li[k]] = k;
    parities.push_back(leg_parity[li[k]]);
  }
  for (std::size_t k = 0; k < ri.size(); ++k) {
    root_pos[ri[k]] = li.size() + k;
    parities.push_back(root_parity[ri[k]]);
  }
  std::vector<std::size_t> perm;
  for (const auto& c : comps) {
    for (auto i : c.legs) perm.push_back(leg_pos[i]);
    for (auto i : c.roots) perm.push_back(root_pos[i]);
  }
  return koszul_sign(perm, parities);
}

}  // namespace

Rational evaluate_disconnected(const ModularGraph& graph, Side side, std::span<const Insertion> legs,
                               std::span<const RootInsertion> roots, const InvariantTable& table,
                               const KeyContext& context) {
  graph.validate();
  std::map<int, const Insertion*> leg_ins;
  for (const auto& i : legs) leg_ins[i.label] = &i;
  std::map<int, const RootInsertion*> root_ins;
  for (const auto& r : roots) root_ins[r.label] = &r;

  const auto comps = plan_components(graph);
  if (comps.size() > 1)
    for (const auto& c : comps)
      if (c.legs.empty() && c.roots.empty())
        throw UnsupportedInput("disconnected correlator with an unmarked component");

  std::vector<Parity> lp, rp;
  for (const auto& l : graph.legs) {
    const auto it = leg_ins.find(l.label);
    if (it == leg_ins.end()) throw ValidationError("no insertion for leg " + std::to_string(l.label));
    lp.push_back(it->second->parity);
  }
  for (const auto& r : graph.roots) {
    const auto it = root_ins.find(r.label);
    if (it == root_ins.end()) throw ValidationError("no class for root " + std::to_string(r.label));
    rp.push_back(it->second->parity);
  }
  Rational value = regroup_sign(graph, comps, lp, rp);
  std::vector<std::string> missing;
  for (const auto& c : comps) {
    CorrelatorKey key;
    key.side = side;
    key.genus = graph.vertices[c.vertex].genus;
    key.weight = graph.vertices[c.vertex].weight;
    for (auto i : c.legs) {
      const auto& l = graph.legs[i];
      const auto* ins = leg_ins.at(l.label);
      key.legs.push_back({l.index_e, ins->descendant, ins->class_id, ins->parity});
    }
    for (auto i : c.roots) {
      const auto& r = graph.roots[i];
      const auto* ins = root_ins.at(r.label);
      key.roots.push_back({r.index_f, r.contact, ins->class_id, ins->parity});
    }
    if (vanishes_structurally(key, context)) {
      value = 0;
      continue;
    }
    const CanonicalKey ck = canonicalize(key);
    const Rational* v = table.find_canonical(ck.text);
    if (v == nullptr) {
      missing.push_back(ck.text);
      continue;
    }
    value *= ck.sign * *v;
  }
  if (!missing.empty()) throw MissingKeysError(std::move(missing));
  return value;
}

namespace {

struct Expansion {
  std::vector<std::pair<std::size_t, Rational>> terms;  // (basis index, coefficient)
};

// Walks the formula term by term. In collecting mode every key that a full
// evaluation would look up is reported and values are not combined.
class FormulaWalker {
 public:
  FormulaWalker(const DegenerationProblem& problem, std::span<const Insertion> insertions,
                const EvaluationOptions& options)
      : problem_(problem), options_(options) {
    problem.validate();
    if (!problem.divisor) throw ValidationError("evaluation needs a divisor catalog", "divisor");
    divisor_ = &*problem.divisor;
    context_ = {&problem.monoid, divisor_};
    const int n = problem.leg_count();
    insertion_.assign(n, nullptr);
    for (const auto& ins : insertions) {
      if (ins.label < 1 || ins.label > n)
        throw ValidationError("insertion for unknown leg " + std::to_string(ins.label), "insertions");
      if (insertion_[ins.label - 1] != nullptr)
        throw ValidationError("two insertions for leg " + std::to_string(ins.label), "insertions");
      if (ins.descendant < 0)
        throw ValidationError("descendant exponent must be nonnegative", "insertions");
      if (!is_key_identifier(ins.class_id))
        throw ValidationError("insertion class id \"" + ins.class_id + "\" is not a valid identifier",
                              "insertions");
      insertion_[ins.label - 1] = &ins;
    }
    for (int i = 0; i < n; ++i)
      if (insertion_[i] == nullptr)
        throw ValidationError("missing insertion for leg " + std::to_string(i + 1), "insertions");

    const std::size_t dim = divisor_->dimension();
    for (std::size_t b = 0; b < dim; ++b)
      if (!is_key_identifier(divisor_->basis()[b].id))
        throw ValidationError("divisor class id \"" + divisor_->basis()[b].id +
                              "\" is not a valid identifier", "divisor/basis");
    right_.resize(dim);
    for (std::size_t b = 0; b < dim; ++b) {
      const Vector v = options.convention == Convention::standard_dual
                           ? apply_involution(*divisor_, divisor_->dual_coordinates()[b])
                           : chen_ruan_dual(b, *divisor_);
      for (std::size_t k = 0; k < dim; ++k) {
        if (v[k] == 0) continue;
        if (divisor_->basis()[k].parity != divisor_->basis()[b].parity)
          throw ValidationError("dual of \"" + divisor_->basis()[b].id +
                                "\" is not homogeneous of the same parity");
        right_[b].terms.emplace_back(k, v[k]);
      }
    }
    all_even_ = std::none_of(insertions.begin(), insertions.end(),
                             [](const Insertion& i) { return is_odd(i.parity); }) &&
                std::none_of(divisor_->basis().begin(), divisor_->basis().end(),
                             [](const BasisClass& b) { return is_odd(b.parity); });
    for (std::size_t b = 0; b < dim; ++b) by_band_[divisor_->band_order_of(b)].push_back(b);
  }

  struct Sink {
    bool collect = false;
    std::set<std::string>* keys = nullptr;
    std::set<std::string>* missing = nullptr;
    Term* term = nullptr;
  };

  // Returns sum over delta of (-1)^eps L R for this splitting.
  Rational splitting_sum(const Splitting& s, std::size_t index, const Rational& coefficient,
                         Sink& sink, std::vector<Term>* terms, std::size_t& nonzero) const {
    const std::size_t m = s.root_count();
    const auto& roots = s.xi1.roots;
    std::vector<const std::vector<std::size_t>*> admissible(m);
    for (std::size_t k = 0; k < m; ++k) {
      const auto it = by_band_.find(roots[k].index_f);
      if (it == by_band_.end()) return 0;
      admissible[k] = &it->second;
    }
    const auto comps1 = plan_components(s.xi1);
    const auto comps2 = plan_components(s.xi2);
    const int n = problem_.leg_count();
    std::vector<int> n1, n2;
    std::vector<Parity> lp1, lp2;
    if (!all_even_) {
      n1 = s.legs_on(Side::X1);
      n2 = s.legs_on(Side::X2);
      for (const auto& l : s.xi1.legs) lp1.push_back(insertion_[l.label - 1]->parity);
      for (const auto& l : s.xi2.legs) lp2.push_back(insertion_[l.label - 1]->parity);
    }

    Rational total = 0;
    std::vector<std::size_t> pick(m, 0);
    std::vector<std::size_t> delta(m);
    std::vector<Parity> dpar(m);
    while (true) {
      for (std::size_t k = 0; k < m; ++k) {
        delta[k] = (*admissible[k])[pick[k]];
        dpar[k] = divisor_->basis()[delta[k]].parity;
      }
      const int eps = all_even_ ? 1 : formula_sign(n, n1, n2, dpar);
      Term term;
      Sink local = sink;
      if (terms != nullptr) local.term = &term;
      const Rational left = side_value(s.xi1, Side::X1, comps1, lp1, dpar, delta, false, local);
      Rational right = 0;
      if (left != 0 || sink.collect || (sink.missing != nullptr && !sink.missing->empty()))
        right = side_value(s.xi2, Side::X2, comps2, lp2, dpar, delta, true, local);
      const Rational contribution = eps * left * right;
      if (contribution != 0) ++nonzero;
      total += contribution;
      if (terms != nullptr && contribution != 0) {
        term.splitting = index;
        for (auto b : delta) term.delta_choice.push_back(divisor_->basis()[b].id);
        term.sign = eps;
        term.coefficient = coefficient;
        term.left_value = left;
        term.right_value = right;
        terms->push_back(std::move(term));
      }
      std::size_t k = m;
      while (k > 0 && ++pick[k - 1] == admissible[k - 1]->size()) pick[--k] = 0;
      if (k == 0) break;
    }
    return total;
  }

  const DegenerationProblem& problem() const { return problem_; }

 private:
  // prod_N gamma prod_M (delta delta^vee) -> prod_N1 gamma prod_M delta prod_N2 gamma prod_M delta^vee.
  int formula_sign(int n, const std::vector<int>& n1, const std::vector<int>& n2,
                   const std::vector<Parity>& dpar) const {
    const std::size_t m = dpar.size();
    std::vector<Parity> parities(n + 2 * m);
    for (int i = 0; i < n; ++i) parities[i] = insertion_[i]->parity;
    for (std::size_t k = 0; k < m; ++k) parities[n + 2 * k] = parities[n + 2 * k + 1] = dpar[k];
    std::vector<std::size_t> perm;
    perm.reserve(parities.size());
    for (int i : n1) perm.push_back(i - 1);
    for (std::size_t k = 0; k < m; ++k) perm.push_back(n + 2 * k);
    for (int i : n2) perm.push_back(i - 1);
    for (std::size_t k = 0; k < m; ++k) perm.push_back(n + 2 * k + 1);
    return koszul_sign(perm, parities);
  }

  struct Lookup {
    enum class State { zero, found, missing } state = State::zero;
    Rational value;  // signed value of the key as listed
    std::string text;
  };

  struct SignatureHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
      std::size_t h = v.size();
      for (auto x : v) h ^= std::hash<std::int64_t>()(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };

  // Memoized value of a one-vertex key. Legs are identified by label, roots
  // by (f, c, basis index); the signature lists them in marking order.
  const Lookup& lookup(const ModularGraph& g, Side side, const Component& c,
                       const std::vector<std::size_t>& root_classes) const {
    signature_.clear();
    signature_.push_back(static_cast<std::int64_t>(side));
    signature_.push_back(g.vertices[c.vertex].genus);
    for (const auto& gen : problem_.monoid.generators())
      signature_.push_back(g.vertices[c.vertex].weight.exponent(gen.id));
    signature_.push_back(static_cast<std::int64_t>(c.legs.size()));
    for (auto i : c.legs) signature_.push_back(g.legs[i].label * 64 + g.legs[i].index_e);
    for (std::size_t q = 0; q < c.roots.size(); ++q) {
      const auto& r = g.roots[c.roots[q]];
      signature_.push_back(r.index_f);
      signature_.push_back(r.contact);
      signature_.push_back(static_cast<std::int64_t>(root_classes[q]));
    }
    const auto it = memo_.find(signature_);
    if (it != memo_.end()) return it->second;

    CorrelatorKey key;
    key.side = side;
    key.genus = g.vertices[c.vertex].genus;
    key.weight = g.vertices[c.vertex].weight;
    for (auto i : c.legs) {
      const auto& l = g.legs[i];
      const Insertion& ins = *insertion_[l.label - 1];
      key.legs.push_back({l.index_e, ins.descendant, ins.class_id, ins.parity});
    }
    for (std::size_t q = 0; q < c.roots.size(); ++q) {
      const auto& r = g.roots[c.roots[q]];
      const auto& cls = divisor_->basis()[root_classes[q]];
      key.roots.push_back({r.index_f, r.contact, cls.id, cls.parity});
    }
    Lookup out;
    if (!vanishes_structurally(key, context_)) {
      const CanonicalKey ck = canonicalize(key);
      out.text = ck.text;
      const Rational* v = table_ == nullptr ? nullptr : table_->find_canonical(ck.text);
      if (v == nullptr) {
        out.state = Lookup::State::missing;
      } else {
        out.state = Lookup::State::found;
        out.value = ck.sign * *v;
      }
    }
    return memo_.emplace(signature_, std::move(out)).first->second;
  }

  // Value of one side: regrouping sign times the product over components.
  // On the right side root k carries the dual class of delta[k], expanded
  // in the basis.
  Rational side_value(const ModularGraph& g, Side side, const std::vector<Component>& comps,
                      const std::vector<Parity>& leg_par, const std::vector<Parity>& root_par_by_k,
                      const std::vector<std::size_t>& delta, bool dual, Sink& sink) const {
    const int n = problem_.leg_count();
    Rational value = 1;
    if (!all_even_) {
      std::vector<Parity> rp(g.roots.size());
      for (std::size_t i = 0; i < g.roots.size(); ++i) rp[i] = root_par_by_k[g.roots[i].label - n - 1];
      value = regroup_sign(g, comps, leg_par, rp);
    }
    std::vector<std::pair<std::size_t, Rational>> singles;
    std::vector<const std::vector<std::pair<std::size_t, Rational>>*> choices;
    std::vector<std::size_t> classes;
    for (const auto& c : comps) {
      // Root classes: basis elements on the left, expansions on the right.
      choices.clear();
      singles.clear();
      singles.reserve(c.roots.size());
      for (std::size_t q = 0; q < c.roots.size(); ++q) {
        const std::size_t k = static_cast<std::size_t>(g.roots[c.roots[q]].label - n - 1);
        if (dual) {
          choices.push_back(&right_[delta[k]].terms);
        } else {
          singles.push_back({delta[k], Rational(1)});
        }
      }
      std::vector<std::vector<std::pair<std::size_t, Rational>>> left_choice;
      if (!dual) {
        left_choice.reserve(singles.size());
        for (const auto& single : singles) left_choice.push_back({single});
        for (const auto& lc : left_choice) choices.push_back(&lc);
      }
      Rational comp_sum = 0;
      bool any = false;
      bool empty_choice = false;
      for (const auto* ch : choices)
        if (ch->empty()) empty_choice = true;
      std::vector<std::size_t> pick(c.roots.size(), 0);
      classes.assign(c.roots.size(), 0);
      while (!empty_choice) {
        Rational coeff = 1;
        for (std::size_t q = 0; q < c.roots.size(); ++q) {
          const auto& [b, a] = (*choices[q])[pick[q]];
          classes[q] = b;
          if (a != 1) coeff *= a;
        }
        const Lookup& found = lookup(g, side, c, classes);
        if (found.state != Lookup::State::zero) {
          if (sink.keys != nullptr) sink.keys->insert(found.text);
          if (sink.term != nullptr)
            (dual ? sink.term->right_keys : sink.term->left_keys).push_back(found.text);
          if (!sink.collect) {
            if (found.state == Lookup::State::missing) {
              if (sink.missing != nullptr) sink.missing->insert(found.text);
            } else if (found.value != 0) {
              comp_sum += coeff * found.value;
              any = true;
            }
          }
        }
        std::size_t q = c.roots.size();
        while (q > 0 && ++pick[q - 1] == choices[q - 1]->size()) pick[--q] = 0;
        if (q == 0) break;
      }
      if (!any) value = 0;
      else value *= comp_sum;
      if (value == 0 && !sink.collect && sink.term == nullptr && sink.missing == nullptr) return 0;
    }
    return value;
  }

 public:
  void set_table(const InvariantTable* table) { table_ = table; }

 private:
  const DegenerationProblem& problem_;
  const EvaluationOptions& options_;
  const SectorCatalog* divisor_ = nullptr;
  KeyContext context_;
  std::vector<const Insertion*> insertion_;
  std::vector<Expansion> right_;
  const InvariantTable* table_ = nullptr;
  bool all_even_ = false;
  std::map<int, std::vector<std::size_t>> by_band_;
  mutable std::vector<std::int64_t> signature_;
  mutable std::unordered_map<std::vector<std::int64_t>, Lookup, SignatureHash> memo_;
};

Rational coefficient_for(const Splitting& s, const TwistingChoice& rule, Convention convention,
                         const Rational& orbit_factor) {
  MultiplicityLedger ledger = degeneration_ledger(s, rule);
  if (convention == Convention::chen_ruan) {
    Rational inv = 1;
    for (int f : s.indices()) inv /= f;
    ledger.push("band-order pullback", inv, "ev_j^* of the band order r is f_j");
  }
  return ledger.net * orbit_factor;
}

// Visits (index, splitting, orbit factor) per the chosen normalization.
void visit_normalized(const DegenerationProblem& problem, const EvaluationOptions& options,
                      const std::function<void(std::size_t, const Splitting&, const Rational&)>& f) {
  if (options.normalization == Normalization::labeled) {
    std::size_t index = 0;
    for_each_splitting(problem, options.enumeration,
                       [&](Splitting&& s) { f(index++, s, Rational(1)); });
    return;
  }
  const auto omega = enumerate_splittings(problem, options.enumeration);
  std::map<std::size_t, std::vector<std::size_t>> by_m;
  for (std::size_t i = 0; i < omega.size(); ++i) by_m[omega[i].root_count()].push_back(i);
  for (const auto& [m, idx] : by_m) {
    std::vector<Splitting> group;
    for (auto i : idx) group.push_back(omega[i]);
    for (const auto& orbit : orbits(group)) {
      const Rational factor = factorial(static_cast<unsigned>(m)) / Rational(static_cast<long>(orbit.stabilizer_order));
      f(idx[orbit.representative], group[orbit.representative], factor);
    }
  }
}

}  // namespace

EvaluationResult evaluate_degeneration(const DegenerationProblem& problem,
                                       std::span<const Insertion> insertions,
                                       const InvariantTable& table, const TwistingChoice& rule,
                                       const EvaluationOptions& options) {
  FormulaWalker walker(problem, insertions, options);
  walker.set_table(&table);
  EvaluationResult result;
  result.value = 0;
  std::set<std::string> missing;
  std::map<std::vector<int>, Rational> coefficients;
  std::vector<int> contact_key;
  visit_normalized(problem, options, [&](std::size_t index, const Splitting& s, const Rational& factor) {
    ++result.splitting_count;
    contact_key.clear();
    for (const auto& r : s.xi1.roots) {
      contact_key.push_back(r.index_f);
      contact_key.push_back(r.contact);
    }
    auto cached = coefficients.find(contact_key);
    if (cached == coefficients.end())
      cached = coefficients.emplace(contact_key, coefficient_for(s, rule, options.convention, 1)).first;
    const Rational coefficient = cached->second * factor;
    FormulaWalker::Sink sink;
    sink.missing = &missing;
    const Rational sum = walker.splitting_sum(s, index, coefficient, sink,
                                              options.record_terms ? &result.terms : nullptr,
                                              result.term_count);
    result.value += coefficient * sum;
  });
  if (!missing.empty()) throw MissingKeysError({missing.begin(), missing.end()});
  return result;
}

std::vector<CanonicalKey> needed_keys(const DegenerationProblem& problem,
                                      std::span<const Insertion> insertions,
                                      const EvaluationOptions& options) {
  FormulaWalker walker(problem, insertions, options);
  std::set<std::string> keys;
  std::size_t dummy = 0;
  visit_normalized(problem, options, [&](std::size_t index, const Splitting& s, const Rational&) {
    FormulaWalker::Sink sink;
    sink.collect = true;
    sink.keys = &keys;
    walker.splitting_sum(s, index, Rational(1), sink, nullptr, dummy);
  });
  std::vector<CanonicalKey> out;
  for (const auto& text : keys) out.push_back(canonicalize(CorrelatorKey::parse(text)));
  return out;
}

}  // namespace degenkit
