// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "json_io.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace degenkit::json_io {

namespace {

std::string join(const std::string& path, const std::string& field) {
  return path.empty() ? field : path + "/" + field;
}

std::string join(const std::string& path, std::size_t index) { return join(path, std::to_string(index)); }

const json& field(const json& obj, const char* name, const std::string& path) {
  if (!obj.is_object()) throw ValidationError("expected an object", path);
  const auto it = obj.find(name);
  if (it == obj.end()) throw ValidationError("missing required field", join(path, name));
  return *it;
}

const json* optional_field(const json& obj, const char* name) {
  const auto it = obj.find(name);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

const json& array_at(const json& obj, const char* name, const std::string& path) {
  const json& v = field(obj, name, path);
  if (!v.is_array()) throw ValidationError("expected an array", join(path, name));
  return v;
}

std::string string_from(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError("expected a string", path);
  return v.get<std::string>();
}

std::int64_t int_from(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError("expected an integer", path);
  return v.get<std::int64_t>();
}

int small_int_from(const json& v, const std::string& path) {
  const auto x = int_from(v, path);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ValidationError("integer out of range", path);
  return static_cast<int>(x);
}

Parity parity_from(const json& v, const std::string& path) {
  try {
    if (v.is_number_integer()) return parse_parity(std::to_string(v.get<std::int64_t>()));
    return parse_parity(string_from(v, path));
  } catch (const ValidationError& e) {
    throw ValidationError(e.message(), path);
  }
}

Side side_from(const json& v, const std::string& path) {
  try {
    return parse_side(string_from(v, path));
  } catch (const ValidationError& e) {
    throw ValidationError(e.message(), path);
  }
}

Matrix matrix_from(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError("expected an array of rows", path);
  Matrix m;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string row_path = join(path, i);
    if (!v[i].is_array()) throw ValidationError("expected an array", row_path);
    Vector row;
    for (std::size_t j = 0; j < v[i].size(); ++j) row.push_back(rational_from(v[i][j], join(row_path, j)));
    m.push_back(std::move(row));
  }
  return m;
}

template <class F>
auto with_prefix(const std::string& prefix, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SingularPairingError& e) {
    throw SingularPairingError(e.message(), e.null_vector(), join(prefix, e.path()));
  } catch (const ValidationError& e) {
    throw ValidationError(e.message(), e.path().empty() ? prefix : join(prefix, e.path()));
  }
}

}  // namespace

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

Rational rational_from(const json& value, const std::string& path) {
  if (value.is_number_integer()) return Rational(std::to_string(value.get<std::int64_t>()));
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(e.message(), path);
    }
  }
  throw ValidationError("expected a rational \"p/q\"", path);
}

SectorCatalog catalog_from(const json& value, const std::string& path) {
  if (!value.is_object()) throw ValidationError("expected an object", path);
  std::vector<Sector> sectors;
  const json& js = array_at(value, "sectors", path);
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string p = join(join(path, "sectors"), i);
    Sector s;
    s.id = string_from(field(js[i], "id", p), join(p, "id"));
    s.band_order = small_int_from(field(js[i], "band_order", p), join(p, "band_order"));
    const json* img = optional_field(js[i], "involution_image");
    s.involution_image = img ? string_from(*img, join(p, "involution_image")) : s.id;
    sectors.push_back(std::move(s));
  }
  std::vector<BasisClass> basis;
  const json& jb = array_at(value, "basis", path);
  for (std::size_t i = 0; i < jb.size(); ++i) {
    const std::string p = join(join(path, "basis"), i);
    BasisClass b;
    b.id = string_from(field(jb[i], "id", p), join(p, "id"));
    b.sector = string_from(field(jb[i], "sector", p), join(p, "sector"));
    const json* par = optional_field(jb[i], "parity");
    b.parity = par ? parity_from(*par, join(p, "parity")) : Parity::even;
    basis.push_back(std::move(b));
  }
  Matrix pairing = matrix_from(field(value, "pairing", path), join(path, "pairing"));
  std::optional<Matrix> involution;
  if (const json* inv = optional_field(value, "involution")) {
    involution = matrix_from(*inv, join(path, "involution"));
  } else if (const json* bi = optional_field(value, "basis_involution")) {
    const std::string bp = join(path, "basis_involution");
    if (!bi->is_array()) throw ValidationError("expected an array", bp);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i].id, i);
    Matrix m(basis.size(), Vector(basis.size(), Rational(0)));
    std::vector<bool> seen(basis.size(), false);
    for (std::size_t e = 0; e < bi->size(); ++e) {
      const std::string p = join(bp, e);
      const std::string from = string_from(field((*bi)[e], "class", p), join(p, "class"));
      const std::string to = string_from(field((*bi)[e], "image", p), join(p, "image"));
      const json* sign = optional_field((*bi)[e], "sign");
      const Rational coeff = sign ? rational_from(*sign, join(p, "sign")) : Rational(1);
      const auto fi = index.find(from), ti = index.find(to);
      if (fi == index.end()) throw ValidationError("unknown basis class \"" + from + "\"", join(p, "class"));
      if (ti == index.end()) throw ValidationError("unknown basis class \"" + to + "\"", join(p, "image"));
      if (seen[fi->second]) throw ValidationError("class listed twice", join(p, "class"));
      seen[fi->second] = true;
      m[ti->second][fi->second] = coeff;
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!seen[i]) throw ValidationError("no image given for class \"" + basis[i].id + "\"", bp);
    involution = std::move(m);
  }
  return with_prefix(path, [&] {
    return SectorCatalog(std::move(sectors), std::move(basis), std::move(pairing), std::move(involution));
  });
}

DegenerationProblem problem_from(const json& value) {
  if (!value.is_object()) throw ValidationError("problem must be a JSON object");
  std::vector<Generator> gens;
  const json& jm = array_at(value, "monoid", "");
  for (std::size_t i = 0; i < jm.size(); ++i) {
    const std::string p = join("monoid", i);
    gens.push_back({string_from(field(jm[i], "id", p), join(p, "id")),
                    side_from(field(jm[i], "side", p), join(p, "side")),
                    rational_from(field(jm[i], "d_degree", p), join(p, "d_degree"))});
  }
  CurveClassMonoid monoid = with_prefix("monoid", [&] { return CurveClassMonoid(std::move(gens)); });

  const int genus = small_int_from(field(value, "genus", ""), "genus");
  std::vector<LegSpec> legs;
  const json& jl = array_at(value, "legs", "");
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const std::string p = join("legs", i);
    LegSpec leg;
    leg.label = small_int_from(field(jl[i], "label", p), join(p, "label"));
    const json* e = optional_field(jl[i], "e");
    leg.index_e = e ? small_int_from(*e, join(p, "e")) : 1;
    if (const json* side = optional_field(jl[i], "side")) leg.side = side_from(*side, join(p, "side"));
    legs.push_back(leg);
  }
  const json& jbeta = field(value, "beta", "");
  if (!jbeta.is_object()) throw ValidationError("expected an object {generator: exponent}", "beta");
  std::map<std::string, std::int64_t> exps;
  for (const auto& [gen, exp] : jbeta.items()) exps[gen] = int_from(exp, join("beta", gen));
  for (const auto& [gen, exp] : exps)
    if (exp < 0) throw ValidationError("exponent must be nonnegative", join("beta", gen));
  CurveClass beta(std::move(exps));

  SectorCatalog divisor = catalog_from(field(value, "divisor", ""), "divisor");
  const json& jc = field(value, "contact", "");
  if (!jc.is_object()) throw ValidationError("expected an object", "contact");
  std::vector<ContactDatum> catalog;
  if (const json* c_max = optional_field(jc, "c_max")) {
    catalog = with_prefix("contact/c_max",
                          [&] { return contact_catalog_from(divisor, small_int_from(*c_max, "")); });
  } else if (const json* pairs = optional_field(jc, "pairs")) {
    if (!pairs->is_array()) throw ValidationError("expected an array", "contact/pairs");
    for (std::size_t i = 0; i < pairs->size(); ++i) {
      const std::string p = join("contact/pairs", i);
      catalog.push_back({small_int_from(field((*pairs)[i], "f", p), join(p, "f")),
                         small_int_from(field((*pairs)[i], "c", p), join(p, "c"))});
    }
  } else {
    throw ValidationError("missing required field (c_max or pairs)", "contact");
  }
  DegenerationProblem problem{std::move(monoid), genus, std::move(legs), std::move(beta),
                              std::move(catalog), std::move(divisor)};
  problem.validate();
  return problem;
}

std::vector<Insertion> insertions_from(const json& value) {
  if (!value.is_array()) throw ValidationError("insertions must be a JSON array");
  std::vector<Insertion> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string p = join("insertions", i);
    Insertion ins;
    ins.label = small_int_from(field(value[i], "label", p), join(p, "label"));
    const json* m = optional_field(value[i], "m");
    ins.descendant = m ? small_int_from(*m, join(p, "m")) : 0;
    ins.class_id = string_from(field(value[i], "class", p), join(p, "class"));
    const json* par = optional_field(value[i], "parity");
    ins.parity = par ? parity_from(*par, join(p, "parity")) : Parity::even;
    out.push_back(std::move(ins));
  }
  return out;
}

InvariantTable table_from(const json& value) {
  if (!value.is_array()) throw ValidationError("table must be a JSON array");
  InvariantTable table;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string p = join("table", i);
    const std::string text = string_from(field(value[i], "key", p), join(p, "key"));
    const Rational v = rational_from(field(value[i], "value", p), join(p, "value"));
    with_prefix(p, [&] {
      table.insert(CorrelatorKey::parse(text), v);
      return 0;
    });
  }
  return table;
}

TwistingChoice twisting_table_from(const json& value) {
  if (!value.is_array()) throw ValidationError("twisting table must be a JSON array");
  std::map<ContactMultiset, std::int64_t> entries;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string p = join("twisting", i);
    const json& jm = field(value[i], "multiset", p);
    std::vector<int> parts;
    if (jm.is_array()) {
      for (std::size_t k = 0; k < jm.size(); ++k) parts.push_back(small_int_from(jm[k], join(join(p, "multiset"), k)));
    } else {
      const std::string text = string_from(jm, join(p, "multiset"));
      std::size_t start = 0;
      while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
          std::size_t used = 0;
          const int c = std::stoi(part, &used);
          if (used != part.size()) throw std::invalid_argument(part);
          parts.push_back(c);
        } catch (const std::exception&) {
          throw ValidationError("bad contact order \"" + part + "\"", join(p, "multiset"));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    for (int c : parts)
      if (c < 1) throw ValidationError("contact orders must be positive", join(p, "multiset"));
    const auto key = make_multiset(parts);
    if (!entries.emplace(key, int_from(field(value[i], "value", p), join(p, "value"))).second)
      throw ValidationError("multiset listed twice", join(p, "multiset"));
  }
  return with_prefix("twisting", [&] { return TwistingChoice::from_table(std::move(entries)); });
}

json to_json(const Rational& value) { return to_string(value); }

json to_json(const CurveClass& weight) {
  json out = json::object();
  for (const auto& [gen, exp] : weight.exponents()) out[gen] = exp;
  return out;
}

json to_json(const ModularGraph& graph) {
  json out;
  out["vertices"] = json::array();
  for (const auto& v : graph.vertices) out["vertices"].push_back({{"genus", v.genus}, {"weight", to_json(v.weight)}});
  out["edges"] = json::array();
  for (const auto& [a, b] : graph.edges) out["edges"].push_back({a, b});
  out["legs"] = json::array();
  for (const auto& l : graph.legs) out["legs"].push_back({{"label", l.label}, {"e", l.index_e}, {"vertex", l.vertex}});
  out["roots"] = json::array();
  for (const auto& r : graph.roots)
    out["roots"].push_back({{"label", r.label}, {"f", r.index_f}, {"c", r.contact}, {"vertex", r.vertex}});
  return out;
}

json splittings_to_json(const std::vector<Splitting>& omega) {
  std::vector<std::size_t> orbit_id(omega.size()), stabilizer(omega.size()), orbit_size(omega.size());
  std::map<std::size_t, std::vector<std::size_t>> by_m;
  for (std::size_t i = 0; i < omega.size(); ++i) by_m[omega[i].root_count()].push_back(i);
  struct Found {
    std::size_t first;
    std::vector<std::size_t> members;
    std::size_t stabilizer;
  };
  std::vector<Found> all;
  for (const auto& [m, idx] : by_m) {
    std::vector<Splitting> group;
    for (auto i : idx) group.push_back(omega[i]);
    for (const auto& o : orbits(group)) {
      Found f{idx[o.members.front()], {}, o.stabilizer_order};
      for (auto k : o.members) f.members.push_back(idx[k]);
      all.push_back(std::move(f));
    }
  }
  std::sort(all.begin(), all.end(), [](const Found& a, const Found& b) { return a.first < b.first; });
  for (std::size_t id = 0; id < all.size(); ++id)
    for (auto i : all[id].members) {
      orbit_id[i] = id;
      stabilizer[i] = all[id].stabilizer;
      orbit_size[i] = all[id].members.size();
    }
  json out = json::array();
  for (std::size_t i = 0; i < omega.size(); ++i) {
    out.push_back({{"xi1", to_json(omega[i].xi1)},
                   {"xi2", to_json(omega[i].xi2)},
                   {"M", omega[i].root_labels()},
                   {"orbit",
                    {{"id", orbit_id[i]}, {"stabilizer_order", stabilizer[i]}, {"orbit_size", orbit_size[i]}}}});
  }
  return out;
}

json to_json(const EvaluationResult& result) {
  json out;
  out["value"] = to_json(result.value);
  out["splitting_count"] = result.splitting_count;
  out["term_count"] = result.term_count;
  json terms = json::array();
  for (const auto& t : result.terms)
    terms.push_back({{"splitting", t.splitting},
                     {"delta_choice", t.delta_choice},
                     {"sign", t.sign},
                     {"coefficient", to_json(t.coefficient)},
                     {"left_key", t.left_keys},
                     {"right_key", t.right_keys},
                     {"left_value", to_json(t.left_value)},
                     {"right_value", to_json(t.right_value)}});
  out["terms"] = std::move(terms);
  return out;
}

json keys_to_json(const std::vector<CanonicalKey>& keys) {
  json out = json::array();
  for (const auto& k : keys) out.push_back(k.text);
  return out;
}

json to_json(const InvariantTable& table) {
  json out = json::array();
  for (const auto& [key, value] : table.sorted_entries()) out.push_back({{"key", key}, {"value", to_json(value)}});
  return out;
}

json to_json(const LiftReport& report) {
  json out{{"lifts", report.lifts}, {"representable", report.representable}, {"transversal", report.transversal}};
  out["source_index"] = report.source_index ? json(*report.source_index) : json(nullptr);
  return out;
}

json to_json(const MultiplicityLedger& ledger) {
  json stages = json::array();
  for (const auto& s : ledger.stages)
    stages.push_back({{"stage", s.stage}, {"factor", to_json(s.factor)}, {"source", s.source}});
  return {{"stages", std::move(stages)}, {"net", to_json(ledger.net)}};
}

json to_json(const DegenerationCheckReport& report) {
  return {{"degree", report.degree},
          {"genus", report.genus},
          {"left_legs", report.left_legs},
          {"engine_value", to_json(report.engine_value)},
          {"oracle_value", to_json(report.oracle_value)},
          {"equal", report.equal},
          {"splitting_count", report.splitting_count}};
}

json to_json(const CheckReport& report) {
  json items = json::array();
  for (const auto& i : report.items)
    items.push_back({{"name", i.name}, {"passed", i.passed}, {"detail", i.detail}});
  return {{"suite", report.suite}, {"passed", report.passed()}, {"checks", std::move(items)}};
}

json dual_basis_to_json(const SectorCatalog& catalog) {
  json out = json::array();
  const auto duals = dual_basis(catalog);
  for (std::size_t i = 0; i < catalog.dimension(); ++i) {
    json coords = json::array();
    for (const auto& x : duals[i]) coords.push_back(to_json(x));
    json cr = json::array();
    for (const auto& x : chen_ruan_dual(i, catalog)) cr.push_back(to_json(x));
    out.push_back({{"class", catalog.basis()[i].id}, {"dual", std::move(coords)}, {"chen_ruan_dual", std::move(cr)}});
  }
  return out;
}

}  // namespace degenkit::json_io
