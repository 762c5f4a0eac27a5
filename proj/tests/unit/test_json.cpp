// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include "../../src/json_io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace degenkit;
using json_io::json;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(DEGENKIT_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return json_io::parse(ss.str());
}

std::string path_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("malformed json") {
  CHECK_THROWS_AS(json_io::parse("{"), ValidationError);
  CHECK_THROWS_AS(json_io::parse(""), ValidationError);
}

TEST_CASE("rationals") {
  CHECK(json_io::rational_from(json("3/6"), "x") == Rational(1, 2));
  CHECK(json_io::rational_from(json(-4), "x") == -4);
  CHECK(path_of([] { json_io::rational_from(json(1.5), "a/b"); }) == "a/b");
  CHECK(json_io::to_json(Rational(0)) == "0/1");
  CHECK(json_io::to_json(Rational(1)) == "1/1");
}

TEST_CASE("problem parsing and error paths") {
  const json base = load("p1_d2_problem.json");
  const DegenerationProblem p = json_io::problem_from(base);
  CHECK(p.genus == 0);
  CHECK(p.legs.size() == 2);
  CHECK(p.legs[0].side == Side::X1);
  CHECK(p.contact_catalog.size() == 2);
  CHECK(p.divisor->dimension() == 1);

  auto broken = [&](const std::function<void(json&)>& edit) {
    json j = base;
    edit(j);
    return path_of([&] { json_io::problem_from(j); });
  };
  CHECK(broken([](json& j) { j.erase("divisor"); }) == "divisor");
  CHECK(broken([](json& j) { j.erase("contact"); }) == "contact");
  CHECK(broken([](json& j) { j["divisor"]["basis"][0].erase("sector"); }) == "divisor/basis/0/sector");
  CHECK(broken([](json& j) { j["legs"][1]["label"] = 7; }) == "legs/1/label");
  CHECK(broken([](json& j) { j["beta"]["zz"] = 1; }) == "beta");
  CHECK(broken([](json& j) { j["genus"] = -1; }) == "genus");
  CHECK(broken([](json& j) { j["divisor"]["pairing"] = json::parse(R"([["0"]])"); }).rfind("divisor", 0) == 0);
  CHECK(broken([](json& j) { j["contact"] = json::parse(R"({"pairs": [{"f": 1, "c": 0}]})"); })
            .rfind("contact", 0) == 0);
}

TEST_CASE("catalog with sparse involution") {
  const json j = json::parse(R"({
    "sectors": [{"id": "s1", "band_order": 2, "involution_image": "s2"},
                {"id": "s2", "band_order": 2, "involution_image": "s1"}],
    "basis": [{"id": "x1", "sector": "s1"}, {"id": "x2", "sector": "s2"}],
    "pairing": [["2", "0"], ["0", "3"]],
    "basis_involution": [{"class": "x1", "image": "x2", "sign": -1},
                         {"class": "x2", "image": "x1", "sign": -1}]
  })");
  const SectorCatalog c = json_io::catalog_from(j);
  CHECK(c.involution()[1][0] == -1);
  CHECK(c.involution()[0][1] == -1);
  CHECK(c.involution()[0][0] == 0);
  const json duals = json_io::dual_basis_to_json(c);
  CHECK(duals.size() == 2);
}

TEST_CASE("table and insertions") {
  const InvariantTable t = json_io::table_from(load("p1_d2_table.json"));
  CHECK(t.size() > 10);
  CHECK(json_io::to_json(t).size() == t.size());
  const auto ins = json_io::insertions_from(load("p1_d2_insertions.json"));
  REQUIRE(ins.size() == 2);
  CHECK(ins[0].descendant == 1);
  CHECK(ins[1].class_id == "pt");

  const json dup = json::parse(R"j([{"key": "X1;g=0;w=a:1;L=;R=(1,1,1,+)", "value": "1"},
                                   {"key": "X1;g=0;w=a:1;L=;R=(1,1,1,+)", "value": "2"}])j");
  CHECK_THROWS_AS(json_io::table_from(dup), ValidationError);
  CHECK(path_of([] { json_io::table_from(json::parse(R"([{"key": "nonsense", "value": "1"}])")); })
            .rfind("table/0", 0) == 0);
}

TEST_CASE("end-to-end evaluation from files") {
  const DegenerationProblem p = json_io::problem_from(load("p1_d2_problem.json"));
  const InvariantTable t = json_io::table_from(load("p1_d2_table.json"));
  const auto ins = json_io::insertions_from(load("p1_d2_insertions.json"));
  const auto r = evaluate_degeneration(p, ins, t, TwistingChoice::minimal());
  CHECK(r.value == degeneration_check(2, 0, 1).oracle_value);
  const json out = json_io::to_json(r);
  CHECK(out["value"] == json_io::to_json(r.value));
}

TEST_CASE("twisting tables") {
  const auto t = json_io::twisting_table_from(json::parse(R"([{"multiset": [3, 2], "value": 12},
                                                             {"multiset": "4", "value": 8}])"));
  const std::vector<int> c{2, 3};
  CHECK(t(c) == 12);
  CHECK_THROWS_AS(json_io::twisting_table_from(json::parse(R"([{"multiset": [2], "value": 3}])")),
                  ValidationError);
  CHECK(path_of([] { json_io::twisting_table_from(json::parse(R"([{"multiset": "2,x", "value": 2}])")); }) ==
        "twisting/0/multiset");
}
