// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "degenkit.h"

#include <cstring>
#include <string>

#include "json_io.hpp"

struct dk_catalog {
  degenkit::SectorCatalog value;
};
struct dk_problem {
  degenkit::DegenerationProblem value;
};
struct dk_table {
  degenkit::InvariantTable value;
};
struct dk_twisting {
  degenkit::TwistingChoice value;
};

namespace {

using degenkit::json_io::json;

thread_local std::string last_message;
thread_local std::string last_json = "null";

const char* kind_name(degenkit::ErrorKind kind) {
  switch (kind) {
    case degenkit::ErrorKind::contract:
      return "contract";
    case degenkit::ErrorKind::validation:
      return "validation";
    case degenkit::ErrorKind::budget:
      return "budget";
    case degenkit::ErrorKind::missing_keys:
      return "missing_keys";
    case degenkit::ErrorKind::scale:
      return "scale";
    case degenkit::ErrorKind::infeasible:
      return "infeasible";
    case degenkit::ErrorKind::unsupported:
      return "unsupported";
  }
  return "error";
}

dk_status status_of(degenkit::ErrorKind kind) {
  switch (kind) {
    case degenkit::ErrorKind::budget:
      return DK_ERR_BUDGET;
    case degenkit::ErrorKind::missing_keys:
      return DK_ERR_MISSING_KEYS;
    case degenkit::ErrorKind::scale:
      return DK_ERR_SCALE;
    default:
      return DK_ERR_INVALID;
  }
}

dk_status fail(dk_status status, json detail) {
  last_message = detail.value("message", std::string("error"));
  last_json = detail.dump();
  return status;
}

char* copy_out(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

template <class F>
dk_status guard(F&& f) {
  try {
    return f();
  } catch (const degenkit::BudgetExceeded& e) {
    return fail(DK_ERR_BUDGET, {{"error", "budget"},
                                {"message", e.what()},
                                {"resume_from", e.resume_from()},
                                {"next_branch", e.next_branch()},
                                {"total_branches", e.total_branches()},
                                {"completed", e.completed().size()}});
  } catch (const degenkit::MissingKeysError& e) {
    return fail(DK_ERR_MISSING_KEYS, {{"error", "missing_keys"}, {"message", e.what()}, {"keys", e.keys()}});
  } catch (const degenkit::ValidationError& e) {
    json detail{{"error", "validation"}, {"message", e.message()}};
    if (!e.path().empty()) detail["path"] = e.path();
    last_message = e.what();
    last_json = detail.dump();
    return DK_ERR_INVALID;
  } catch (const degenkit::Error& e) {
    return fail(status_of(e.kind()), {{"error", kind_name(e.kind())}, {"message", e.what()}});
  } catch (const std::bad_alloc&) {
    return fail(DK_ERR_FAILED, {{"error", "internal"}, {"message", "out of memory"}});
  } catch (const std::exception& e) {
    return fail(DK_ERR_FAILED, {{"error", "internal"}, {"message", e.what()}});
  }
}

dk_status need(const void* p, const char* what) {
  if (p != nullptr) return DK_OK;
  return fail(DK_ERR_INVALID, {{"error", "contract"}, {"message", std::string(what) + " must not be NULL"}});
}

dk_status emit(const json& value, char** out) {
  *out = copy_out(degenkit::json_io::dump(value));
  return DK_OK;
}

degenkit::EvaluationOptions to_options(const dk_options* o) {
  const dk_options d = o ? *o : dk_default_options();
  degenkit::EvaluationOptions out;
  if (d.convention != DK_CONVENTION_STANDARD_DUAL && d.convention != DK_CONVENTION_CHEN_RUAN)
    throw degenkit::ValidationError("unknown convention", "options/convention");
  if (d.normalization != DK_NORMALIZATION_LABELED && d.normalization != DK_NORMALIZATION_ORBITS)
    throw degenkit::ValidationError("unknown normalization", "options/normalization");
  out.convention = d.convention == DK_CONVENTION_CHEN_RUAN ? degenkit::Convention::chen_ruan
                                                            : degenkit::Convention::standard_dual;
  out.normalization = d.normalization == DK_NORMALIZATION_ORBITS ? degenkit::Normalization::orbits
                                                                  : degenkit::Normalization::labeled;
  out.record_terms = d.record_terms != 0;
  out.enumeration.budget = d.budget;
  out.enumeration.resume_from = d.resume_from;
  out.enumeration.threads = d.threads == 0 ? 1 : d.threads;
  return out;
}

}  // namespace

extern "C" {

const char* dk_version(void) { return "0.1.0"; }

dk_options dk_default_options(void) {
  dk_options o;
  o.convention = DK_CONVENTION_STANDARD_DUAL;
  o.normalization = DK_NORMALIZATION_LABELED;
  o.threads = 1;
  o.budget = 0;
  o.resume_from = 0;
  o.record_terms = 0;
  return o;
}

const char* dk_last_error_message(void) { return last_message.c_str(); }
const char* dk_last_error_json(void) { return last_json.c_str(); }

void dk_string_free(char* text) { std::free(text); }

dk_status dk_catalog_from_json(const char* text, dk_catalog** out) {
  if (auto s = need(text, "json"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    *out = new dk_catalog{degenkit::json_io::catalog_from(degenkit::json_io::parse(text))};
    return DK_OK;
  });
}

void dk_catalog_free(dk_catalog* catalog) { delete catalog; }

dk_status dk_catalog_dual_basis_json(const dk_catalog* catalog, char** out) {
  if (auto s = need(catalog, "catalog"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] { return emit(degenkit::json_io::dual_basis_to_json(catalog->value), out); });
}

dk_status dk_catalog_warnings_json(const dk_catalog* catalog, char** out) {
  if (auto s = need(catalog, "catalog"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] { return emit(json(catalog->value.warnings()), out); });
}

dk_status dk_problem_from_json(const char* text, dk_problem** out) {
  if (auto s = need(text, "json"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    *out = new dk_problem{degenkit::json_io::problem_from(degenkit::json_io::parse(text))};
    return DK_OK;
  });
}

void dk_problem_free(dk_problem* problem) { delete problem; }

dk_status dk_table_from_json(const char* text, dk_table** out) {
  if (auto s = need(text, "json"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    *out = new dk_table{degenkit::json_io::table_from(degenkit::json_io::parse(text))};
    return DK_OK;
  });
}

void dk_table_free(dk_table* table) { delete table; }

size_t dk_table_size(const dk_table* table) { return table ? table->value.size() : 0; }

dk_status dk_twisting_parse(const char* rule, dk_twisting** out) {
  if (auto s = need(rule, "rule"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    const std::string text(rule);
    if (text == "minimal") {
      *out = new dk_twisting{degenkit::TwistingChoice::minimal()};
      return DK_OK;
    }
    const std::string prefix = "multiple:";
    if (text.rfind(prefix, 0) == 0) {
      const std::string k = text.substr(prefix.size());
      std::size_t used = 0;
      long long factor = 0;
      try {
        factor = std::stoll(k, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == k.size() && !k.empty() && factor >= 1) {
        *out = new dk_twisting{degenkit::TwistingChoice::multiple_of_minimal(factor)};
        return DK_OK;
      }
    }
    throw degenkit::ValidationError("twisting must be \"minimal\", \"multiple:K\" with K >= 1, or a table file",
                                    "twisting");
  });
}

dk_status dk_twisting_from_json(const char* text, dk_twisting** out) {
  if (auto s = need(text, "json"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    *out = new dk_twisting{degenkit::json_io::twisting_table_from(degenkit::json_io::parse(text))};
    return DK_OK;
  });
}

void dk_twisting_free(dk_twisting* twisting) { delete twisting; }

dk_status dk_twisting_describe(const dk_twisting* twisting, char** out) {
  if (auto s = need(twisting, "twisting"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    *out = copy_out(twisting->value.describe());
    return DK_OK;
  });
}

dk_status dk_splittings_json(const dk_problem* problem, const dk_options* options, char** out) {
  if (auto s = need(problem, "problem"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    const auto opts = to_options(options);
    return emit(degenkit::json_io::splittings_to_json(
                    degenkit::enumerate_splittings(problem->value, opts.enumeration)),
                out);
  });
}

dk_status dk_needed_keys_json(const dk_problem* problem, const char* insertions_json,
                              const dk_options* options, char** out) {
  if (auto s = need(problem, "problem"); s != DK_OK) return s;
  if (auto s = need(insertions_json, "insertions"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    const auto ins = degenkit::json_io::insertions_from(degenkit::json_io::parse(insertions_json));
    return emit(degenkit::json_io::keys_to_json(degenkit::needed_keys(problem->value, ins, to_options(options))),
                out);
  });
}

dk_status dk_evaluate_json(const dk_problem* problem, const char* insertions_json, const dk_table* table,
                           const dk_twisting* twisting, const dk_options* options, char** out) {
  if (auto s = need(problem, "problem"); s != DK_OK) return s;
  if (auto s = need(insertions_json, "insertions"); s != DK_OK) return s;
  if (auto s = need(table, "table"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    const auto ins = degenkit::json_io::insertions_from(degenkit::json_io::parse(insertions_json));
    const auto rule = twisting ? twisting->value : degenkit::TwistingChoice::minimal();
    const auto opts = to_options(options);
    const auto result = degenkit::evaluate_degeneration(problem->value, ins, table->value, rule, opts);
    json j = degenkit::json_io::to_json(result);
    j["convention"] = std::string(degenkit::to_string(opts.convention));
    j["normalization"] = std::string(degenkit::to_string(opts.normalization));
    j["twisting"] = rule.describe();
    if (!opts.record_terms) j.erase("terms");
    return emit(j, out);
  });
}

dk_status dk_lift_json(int64_t contact, int64_t target_index, int64_t source_index, char** out) {
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    json j = degenkit::json_io::to_json(degenkit::lift_analysis(contact, target_index, source_index));
    j["contact"] = contact;
    j["target_index"] = target_index;
    j["input_source_index"] = source_index;
    j["required_source_index"] = degenkit::required_source_index(contact, target_index);
    return emit(j, out);
  });
}

dk_status dk_ledger_json(const int* contacts, size_t count, const dk_twisting* twisting, char** out) {
  if (count > 0)
    if (auto s = need(contacts, "contacts"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    std::vector<int> c(contacts, contacts + count);
    for (int x : c)
      if (x < 1) throw degenkit::ValidationError("contact orders must be positive", "contacts");
    const auto rule = twisting ? twisting->value : degenkit::TwistingChoice::minimal();
    json j = degenkit::json_io::to_json(degenkit::degeneration_ledger(c, rule));
    j["contacts"] = c;
    j["twisting"] = rule.describe();
    j["r"] = rule(c);
    return emit(j, out);
  });
}

dk_status dk_oracle_table_json(int d_max, int g_max, char** out) {
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] { return emit(degenkit::json_io::to_json(degenkit::build_p1_table(d_max, g_max)), out); });
}

dk_status dk_oracle_check_json(int degree, int genus, int left_legs, const dk_options* options, char** out) {
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    std::optional<int> left;
    if (left_legs >= 0) left = left_legs;
    const auto report = degenkit::degeneration_check(degree, genus, left, to_options(options));
    return emit(degenkit::json_io::to_json(report), out);
  });
}

dk_status dk_hurwitz_json(int degree, int genus, const char* profiles_json, char** out) {
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    degenkit::HurwitzInstance inst{degree, genus, {}};
    json profiles = json::array();
    if (profiles_json != nullptr) {
      profiles = degenkit::json_io::parse(profiles_json);
      if (!profiles.is_array()) throw degenkit::ValidationError("expected an array of partitions", "profiles");
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        const std::string p = "profiles/" + std::to_string(i);
        if (!profiles[i].is_array()) throw degenkit::ValidationError("expected an array of parts", p);
        std::vector<int> parts;
        for (const auto& x : profiles[i]) {
          if (!x.is_number_integer()) throw degenkit::ValidationError("parts must be integers", p);
          parts.push_back(x.get<int>());
        }
        inst.profiles.push_back(degenkit::RamificationProfile::from(std::move(parts)));
      }
    }
    json j{{"degree", degree}, {"genus", genus}, {"simple_branch_count", inst.simple_branch_count()}};
    json prof = json::array();
    for (const auto& mu : inst.profiles) prof.push_back(mu.parts);
    j["profiles"] = prof;
    j["count"] = degenkit::json_io::to_json(degenkit::hurwitz_count(inst));
    return emit(j, out);
  });
}

dk_status dk_run_check(const char* suite, char** out) {
  if (auto s = need(suite, "suite"); s != DK_OK) return s;
  if (auto s = need(out, "out"); s != DK_OK) return s;
  return guard([&] {
    const auto report = degenkit::run_check_suite(suite);
    emit(degenkit::json_io::to_json(report), out);
    if (report.passed()) return DK_OK;
    last_message = "check suite " + report.suite + " failed";
    last_json = json{{"error", "check_failed"}, {"message", last_message}}.dump();
    return DK_ERR_FAILED;
  });
}

}  // extern "C"
