// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C API.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "degenkit.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct InputFile {
  std::string path;
  std::string bytes;
};

class CliError {
 public:
  CliError(int code, json detail) : code(code), detail(std::move(detail)) {}
  int code;
  json detail;
};

InputFile read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(DK_ERR_INVALID, {{"error", "io"}, {"message", "cannot read file"}, {"path", path}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return {path, ss.str()};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw CliError(DK_ERR_FAILED, {{"error", "internal"}, {"message", "SHA-256 failed"}});
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

void check(dk_status status) {
  if (status != DK_OK) throw CliError(status, json::parse(dk_last_error_json()));
}

std::string take(char* text) {
  std::string out(text);
  dk_string_free(text);
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
};

using Problem = Handle<dk_problem, dk_problem_free>;
using Table = Handle<dk_table, dk_table_free>;
using Twisting = Handle<dk_twisting, dk_twisting_free>;

struct Common {
  unsigned threads = 1;
  std::optional<std::uint64_t> budget;
  std::uint64_t resume_from = 0;
  std::string convention = "standard_dual";
  std::string normalization = "labeled";
  std::string twisting = "minimal";
  bool terms = false;
  std::string manifest;
};

dk_options make_options(const Common& c) {
  dk_options o = dk_default_options();
  o.threads = c.threads;
  o.resume_from = c.resume_from;
  if (c.budget) {
    o.budget = *c.budget;
  } else if (const char* env = std::getenv("DEGENKIT_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-')
      throw CliError(DK_ERR_INVALID, {{"error", "validation"},
                                      {"message", "DEGENKIT_BUDGET must be a nonnegative integer"},
                                      {"path", "DEGENKIT_BUDGET"}});
    o.budget = v;
  }
  o.convention = c.convention == "chen_ruan" ? DK_CONVENTION_CHEN_RUAN : DK_CONVENTION_STANDARD_DUAL;
  o.normalization = c.normalization == "orbits" ? DK_NORMALIZATION_ORBITS : DK_NORMALIZATION_LABELED;
  o.record_terms = c.terms ? 1 : 0;
  return o;
}

void load_twisting(const std::string& rule, Twisting& out, std::vector<InputFile>& inputs) {
  if (rule == "minimal" || rule.rfind("multiple:", 0) == 0) {
    check(dk_twisting_parse(rule.c_str(), &out.ptr));
    return;
  }
  inputs.push_back(read_file(rule));
  check(dk_twisting_from_json(inputs.back().bytes.c_str(), &out.ptr));
}

std::string describe(const dk_twisting* t) {
  char* text = nullptr;
  check(dk_twisting_describe(t, &text));
  return take(text);
}

void write_manifest(const std::string& path, const std::vector<std::string>& argv,
                    const std::vector<InputFile>& inputs, const std::string& twisting,
                    const std::string& output, double seconds) {
  json m;
  m["command"] = argv;
  m["engine_version"] = dk_version();
  json files = json::array();
  for (const auto& f : inputs) files.push_back({{"path", f.path}, {"sha256", sha256_hex(f.bytes)}});
  m["inputs"] = files;
  m["twisting"] = twisting;
  m["output_sha256"] = sha256_hex(output);
  m["timing_seconds"] = seconds;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(DK_ERR_INVALID, {{"error", "io"}, {"message", "cannot write manifest"}, {"path", path}});
  out << m.dump(2) << "\n";
}

void add_enumeration_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "Enumeration worker threads")->check(CLI::Range(1u, 256u));
  cmd->add_option("--budget", c.budget, "Enumeration node budget (0 = unlimited; default $DEGENKIT_BUDGET)");
  cmd->add_option("--resume-from", c.resume_from, "First enumeration branch to visit");
  cmd->add_option("--manifest", c.manifest, "Write a run manifest to this file");
}

void add_evaluation_flags(CLI::App* cmd, Common& c) {
  add_enumeration_flags(cmd, c);
  cmd->add_option("--convention", c.convention, "standard_dual or chen_ruan")
      ->check(CLI::IsMember({"standard_dual", "chen_ruan"}));
  cmd->add_option("--normalization", c.normalization, "labeled or orbits")
      ->check(CLI::IsMember({"labeled", "orbits"}));
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw CliError(DK_ERR_INVALID,
                     {{"error", "validation"}, {"message", "expected comma-separated integers"}, {"path", what}});
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degenkit: exact evaluation of the orbifold degeneration formula"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dk_version()));
  Common common;

  std::string problem_path, insertions_path, table_path, suite;
  auto* splittings = app.add_subcommand("splittings", "Enumerate splittings with orbit annotations");
  splittings->add_option("problem", problem_path, "Problem JSON")->required();
  add_enumeration_flags(splittings, common);

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate the degeneration formula against a table");
  evaluate->add_option("problem", problem_path, "Problem JSON")->required();
  evaluate->add_option("insertions", insertions_path, "Insertions JSON")->required();
  evaluate->add_option("table", table_path, "Invariant table JSON")->required();
  add_evaluation_flags(evaluate, common);
  evaluate->add_option("--twisting", common.twisting, "minimal, multiple:K, or a twisting table file");
  evaluate->add_flag("--terms", common.terms, "List every nonzero term");

  auto* keys = app.add_subcommand("keys", "List the table keys an evaluation needs");
  keys->add_option("problem", problem_path, "Problem JSON")->required();
  keys->add_option("insertions", insertions_path, "Insertions JSON")->required();
  add_evaluation_flags(keys, common);

  std::int64_t contact = 1, target = 1, source = 1;
  auto* lift = app.add_subcommand("lift", "Lift arithmetic for a contact point");
  lift->add_option("--contact,-c", contact, "Contact order c")->required();
  lift->add_option("--target,-r", target, "Root index r of the target")->required();
  lift->add_option("--source,-s", source, "Twisting index of the source marking")->required();

  std::string contacts_text;
  auto* ledger = app.add_subcommand("ledger", "Multiplicity ledger for a set of contact orders");
  ledger->add_option("--contacts", contacts_text, "Comma-separated contact orders")->required();
  ledger->add_option("--twisting", common.twisting, "minimal, multiple:K, or a twisting table file");

  int d_max = 2, g_max = 0, degree = 1, genus = 0, left_legs = -1;
  std::vector<std::string> profiles;
  auto* oracle = app.add_subcommand("oracle", "Hurwitz oracle for P^1");
  oracle->require_subcommand(1);
  auto* oracle_table = oracle->add_subcommand("table", "Relative invariants of (P^1, point)");
  oracle_table->add_option("--d-max", d_max, "Largest degree")->required();
  oracle_table->add_option("--g-max", g_max, "Largest genus")->required();
  auto* oracle_check = oracle->add_subcommand("check", "Degeneration formula against the smooth count");
  oracle_check->add_option("--degree,-d", degree, "Degree")->required();
  oracle_check->add_option("--genus,-g", genus, "Genus")->required();
  oracle_check->add_option("--left-legs", left_legs, "Legs constrained to X1");
  oracle_check->add_option("--threads", common.threads, "Enumeration worker threads")->check(CLI::Range(1u, 256u));
  auto* oracle_hurwitz = oracle->add_subcommand("hurwitz", "Hurwitz count");
  oracle_hurwitz->add_option("--degree,-d", degree, "Degree")->required();
  oracle_hurwitz->add_option("--genus,-g", genus, "Genus")->required();
  oracle_hurwitz->add_option("--profile", profiles, "Ramification profile, e.g. 2,1 (repeatable)");

  auto* check_cmd = app.add_subcommand("check", "Run a property suite");
  check_cmd->add_option("suite", suite, "algebra, lifts, ledger, orbits, hurwitz or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : DK_ERR_INVALID;
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<InputFile> inputs;
  std::string twisting_description = "minimal";
  std::string output;
  int status = DK_OK;
  try {
    const dk_options options = make_options(common);
    char* out = nullptr;
    if (*splittings || *evaluate || *keys) {
      inputs.push_back(read_file(problem_path));
      Problem problem;
      check(dk_problem_from_json(inputs.back().bytes.c_str(), &problem.ptr));
      if (*splittings) {
        check(dk_splittings_json(problem.ptr, &options, &out));
      } else {
        inputs.push_back(read_file(insertions_path));
        const std::string insertions = inputs.back().bytes;
        if (*keys) {
          check(dk_needed_keys_json(problem.ptr, insertions.c_str(), &options, &out));
        } else {
          inputs.push_back(read_file(table_path));
          Table table;
          check(dk_table_from_json(inputs.back().bytes.c_str(), &table.ptr));
          Twisting twisting;
          load_twisting(common.twisting, twisting, inputs);
          twisting_description = describe(twisting.ptr);
          check(dk_evaluate_json(problem.ptr, insertions.c_str(), table.ptr, twisting.ptr, &options, &out));
        }
      }
    } else if (*lift) {
      check(dk_lift_json(contact, target, source, &out));
    } else if (*ledger) {
      const auto contacts = parse_int_list(contacts_text, "contacts");
      Twisting twisting;
      load_twisting(common.twisting, twisting, inputs);
      twisting_description = describe(twisting.ptr);
      check(dk_ledger_json(contacts.data(), contacts.size(), twisting.ptr, &out));
    } else if (*oracle_table) {
      check(dk_oracle_table_json(d_max, g_max, &out));
    } else if (*oracle_check) {
      check(dk_oracle_check_json(degree, genus, left_legs, &options, &out));
    } else if (*oracle_hurwitz) {
      json parts = json::array();
      for (const auto& p : profiles) parts.push_back(parse_int_list(p, "profile"));
      check(dk_hurwitz_json(degree, genus, parts.dump().c_str(), &out));
    } else if (*check_cmd) {
      const dk_status s = dk_run_check(suite.c_str(), &out);
      if (s != DK_OK && s != DK_ERR_FAILED) check(s);
      status = s;
    }
    output = take(out);
    std::cout << output;
    std::cout.flush();
  } catch (const CliError& e) {
    std::cerr << e.detail.dump() << "\n";
    return e.code;
  }
  if (!common.manifest.empty()) {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::vector<std::string> args(argv, argv + argc);
    try {
      write_manifest(common.manifest, args, inputs, twisting_description, output, seconds);
    } catch (const CliError& e) {
      std::cerr << e.detail.dump() << "\n";
      return e.code;
    }
  }
  return status;
}
