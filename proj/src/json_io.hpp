// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

// JSON reading and writing for the C API and the command line.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "degenkit/checks.hpp"
#include "degenkit/correlator.hpp"
#include "degenkit/oracle.hpp"
#include "json.hpp"

namespace degenkit::json_io {

using nlohmann::json;

/// Throws ValidationError naming the parse position.
json parse(std::string_view text);
std::string dump(const json& value);

Rational rational_from(const json& value, const std::string& path);
SectorCatalog catalog_from(const json& value, const std::string& path = "");
DegenerationProblem problem_from(const json& value);
std::vector<Insertion> insertions_from(const json& value);
InvariantTable table_from(const json& value);
TwistingChoice twisting_table_from(const json& value);

json to_json(const Rational& value);
json to_json(const CurveClass& weight);
json to_json(const ModularGraph& graph);
json splittings_to_json(const std::vector<Splitting>& omega);
json to_json(const EvaluationResult& result);
json keys_to_json(const std::vector<CanonicalKey>& keys);
json to_json(const InvariantTable& table);
json to_json(const LiftReport& report);
json to_json(const MultiplicityLedger& ledger);
json to_json(const DegenerationCheckReport& report);
json to_json(const CheckReport& report);
json dual_basis_to_json(const SectorCatalog& catalog);

}  // namespace degenkit::json_io
