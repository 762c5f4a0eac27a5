// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "degenkit/error.hpp"

namespace degenkit {

std::string_view to_string(Side side) { return side == Side::X1 ? "X1" : "X2"; }

Side parse_side(std::string_view text) {
  if (text == "X1") return Side::X1;
  if (text == "X2") return Side::X2;
  throw ValidationError("side must be \"X1\" or \"X2\", got \"" + std::string(text) + "\"");
}

CurveClassMonoid::CurveClassMonoid(std::vector<Generator> generators)
    : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    const std::string path = "monoid/" + std::to_string(i);
    if (g.id.empty()) throw ValidationError("empty generator id", path);
    if (g.d_degree < 0) throw ValidationError("d_degree must be nonnegative", path + "/d_degree");
    if (!index_.emplace(g.id, i).second)
      throw ValidationError("duplicate generator id \"" + g.id + "\"", path);
  }
}

const Generator& CurveClassMonoid::generator(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) throw ValidationError("unknown generator \"" + std::string(id) + "\"");
  return generators_[it->second];
}

bool CurveClassMonoid::contains(std::string_view id) const {
  return index_.count(std::string(id)) != 0;
}

CurveClass::CurveClass(std::map<std::string, std::int64_t> exponents) {
  for (auto& [gen, e] : exponents) {
    if (e < 0) throw ValidationError("negative exponent for generator \"" + gen + "\"");
    if (e > 0) exponents_.emplace(gen, e);
  }
}

std::int64_t CurveClass::exponent(std::string_view gen) const {
  const auto it = exponents_.find(std::string(gen));
  return it == exponents_.end() ? 0 : it->second;
}

void CurveClass::add(const std::string& gen, std::int64_t amount) {
  if (amount == 0) return;
  const std::int64_t e = (exponents_[gen] += amount);
  if (e < 0) throw ContractViolation("curve class exponent became negative");
  if (e == 0) exponents_.erase(gen);
}

CurveClass& CurveClass::operator+=(const CurveClass& other) {
  for (const auto& [gen, e] : other.exponents_) add(gen, e);
  return *this;
}

std::string CurveClass::to_string() const {
  std::string out;
  for (const auto& [gen, e] : exponents_) {
    if (!out.empty()) out += ',';
    out += gen + ':' + std::to_string(e);
  }
  return out;
}

bool lies_in(const CurveClass& beta, Side side, const CurveClassMonoid& monoid) {
  for (const auto& [gen, e] : beta.exponents())
    if (monoid.generator(gen).side != side) return false;
  return true;
}

CurveClass restrict_to(const CurveClass& beta, Side side, const CurveClassMonoid& monoid) {
  std::map<std::string, std::int64_t> out;
  for (const auto& [gen, e] : beta.exponents())
    if (monoid.generator(gen).side == side) out.emplace(gen, e);
  return CurveClass(std::move(out));
}

Rational d_degree(const CurveClass& beta, const CurveClassMonoid& monoid) {
  Rational sum = 0;
  for (const auto& [gen, e] : beta.exponents())
    sum += monoid.generator(gen).d_degree * Rational(Integer(std::to_string(e)));
  return sum;
}

Rational intersection_multiplicity(const Root& root) {
  return make_rational(root.contact, root.index_f);
}

void ModularGraph::validate() const {
  std::set<int> labels;
  const std::size_t nv = vertices.size();
  for (std::size_t v = 0; v < nv; ++v)
    if (vertices[v].genus < 0)
      throw ValidationError("negative genus", "vertices/" + std::to_string(v) + "/genus");
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].first >= nv || edges[i].second >= nv)
      throw ValidationError("edge references a missing vertex", "edges/" + std::to_string(i));
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const auto& l = legs[i];
    const std::string path = "legs/" + std::to_string(i);
    if (!labels.insert(l.label).second)
      throw ValidationError("duplicate label " + std::to_string(l.label), path);
    if (l.index_e < 1) throw ValidationError("leg index must be positive", path + "/e");
    if (l.vertex >= nv) throw ValidationError("leg references a missing vertex", path + "/vertex");
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    const std::string path = "roots/" + std::to_string(i);
    if (!labels.insert(r.label).second)
      throw ValidationError("duplicate label " + std::to_string(r.label), path);
    if (r.index_f < 1) throw ValidationError("root index must be positive", path + "/f");
    if (r.contact < 1) throw ValidationError("contact order must be positive", path + "/c");
    if (r.vertex >= nv) throw ValidationError("root references a missing vertex", path + "/vertex");
  }
}

int total_genus(const ModularGraph& graph) {
  if (graph.vertices.empty())
    throw ContractViolation("total genus is undefined for a graph without vertices");
  int sum = 0;
  for (const auto& v : graph.vertices) sum += v.genus;
  return sum + static_cast<int>(graph.edges.size()) - static_cast<int>(graph.vertices.size()) + 1;
}

CurveClass total_weight(const ModularGraph& graph) {
  CurveClass sum;
  for (const auto& v : graph.vertices) sum += v.weight;
  return sum;
}

std::vector<std::vector<std::size_t>> components(const ModularGraph& graph) {
  const std::size_t n = graph.vertices.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : graph.edges) {
    const auto ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = find(v);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

int first_betti_number(const ModularGraph& graph) {
  return static_cast<int>(graph.edges.size()) - static_cast<int>(graph.vertices.size()) +
         static_cast<int>(components(graph).size());
}

namespace {

struct VertexInvariant {
  std::vector<int> labels;
  int genus;
  std::string weight;
  std::size_t valence;
  auto operator<=>(const VertexInvariant&) const = default;
};

std::string vertex_text(const ModularGraph& g, std::size_t v) {
  std::string out = "g" + std::to_string(g.vertices[v].genus) + ";w" +
                    g.vertices[v].weight.to_string() + ";L";
  std::vector<std::pair<int, int>> legs;
  for (const auto& l : g.legs)
    if (l.vertex == v) legs.emplace_back(l.label, l.index_e);
  std::sort(legs.begin(), legs.end());
  for (const auto& [label, e] : legs) out += std::to_string(label) + "e" + std::to_string(e) + ",";
  out += ";R";
  std::vector<std::tuple<int, int, int>> roots;
  for (const auto& r : g.roots)
    if (r.vertex == v) roots.emplace_back(r.label, r.index_f, r.contact);
  std::sort(roots.begin(), roots.end());
  for (const auto& [label, f, c] : roots)
    out += std::to_string(label) + "f" + std::to_string(f) + "c" + std::to_string(c) + ",";
  return out;
}

}  // namespace

std::string canonical_form(const ModularGraph& graph) {
  const std::size_t n = graph.vertices.size();
  std::vector<VertexInvariant> inv(n);
  for (std::size_t v = 0; v < n; ++v) {
    inv[v].genus = graph.vertices[v].genus;
    inv[v].weight = graph.vertices[v].weight.to_string();
    inv[v].valence = 0;
  }
  for (const auto& l : graph.legs) inv.at(l.vertex).labels.push_back(l.label);
  for (const auto& r : graph.roots) inv.at(r.vertex).labels.push_back(r.label);
  for (const auto& [a, b] : graph.edges) {
    ++inv.at(a).valence;
    ++inv.at(b).valence;
  }
  for (auto& x : inv) std::sort(x.labels.begin(), x.labels.end());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return inv[a] < inv[b]; });

  // Tie classes: maximal runs of equal invariants in `order`.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && inv[order[j]] == inv[order[i]]) ++j;
    if (j - i > 1) {
      if (j - i > 8) throw UnsupportedInput("canonical_form: more than 8 indistinguishable vertices");
      runs.emplace_back(i, j);
    }
    i = j;
  }

  std::string vertices_part;
  for (std::size_t p = 0; p < n; ++p) vertices_part += "V[" + vertex_text(graph, order[p]) + "]";

  auto edge_text = [&](const std::vector<std::size_t>& ord) {
    std::vector<std::size_t> pos(n);
    for (std::size_t p = 0; p < n; ++p) pos[ord[p]] = p;
    std::vector<std::pair<std::size_t, std::size_t>> es;
    es.reserve(graph.edges.size());
    for (const auto& [a, b] : graph.edges)
      es.emplace_back(std::min(pos[a], pos[b]), std::max(pos[a], pos[b]));
    std::sort(es.begin(), es.end());
    std::string out = "E[";
    for (const auto& [a, b] : es) out += std::to_string(a) + "-" + std::to_string(b) + ",";
    return out + "]";
  };

  std::string best = edge_text(order);
  if (!runs.empty() && !graph.edges.empty()) {
    for (auto& [b, e] : runs) std::sort(order.begin() + b, order.begin() + e);
    // Odometer over the permutations of every tie class.
    while (true) {
      std::string cand = edge_text(order);
      if (cand < best) best = std::move(cand);
      std::size_t k = 0;
      for (; k < runs.size(); ++k) {
        auto [b, e] = runs[k];
        if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
      }
      if (k == runs.size()) break;
    }
  }
  return vertices_part + best;
}

ModularGraph glue(const ModularGraph& xi1, const ModularGraph& xi2) {
  std::map<int, const Root*> left;
  for (const auto& r : xi1.roots) left.emplace(r.label, &r);
  std::set<int> right_labels;
  for (const auto& r : xi2.roots) right_labels.insert(r.label);
  if (left.size() != right_labels.size() ||
      !std::equal(right_labels.begin(), right_labels.end(), left.begin(),
                  [](int a, const auto& kv) { return a == kv.first; }))
    throw ValidationError("glue: root label sets of the two sides differ");

  ModularGraph out;
  const std::size_t shift = xi1.vertices.size();
  out.vertices = xi1.vertices;
  out.vertices.insert(out.vertices.end(), xi2.vertices.begin(), xi2.vertices.end());
  out.edges = xi1.edges;
  for (const auto& [a, b] : xi2.edges) out.edges.emplace_back(a + shift, b + shift);
  out.legs = xi1.legs;
  for (auto l : xi2.legs) {
    l.vertex += shift;
    out.legs.push_back(l);
  }
  std::vector<Root> right = xi2.roots;
  std::sort(right.begin(), right.end(), [](const Root& a, const Root& b) { return a.label < b.label; });
  for (const auto& r : right) {
    const Root& l = *left.at(r.label);
    if (l.index_f != r.index_f || l.contact != r.contact)
      throw ValidationError("glue: root " + std::to_string(r.label) +
                            " has different (f, c) on the two sides");
    out.edges.emplace_back(l.vertex, r.vertex + shift);
  }
  out.validate();
  return out;
}

}  // namespace degenkit
