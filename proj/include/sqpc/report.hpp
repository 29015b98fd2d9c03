// Copyright 2026 The SQPC Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQPC_REPORT_HPP
#define SQPC_REPORT_HPP

// JSON encoding of reports. Field names are snake_case; every document
// carries "schema_version" and the seed it was produced from.

#include <string>
#include <vector>

#include "json.hpp"

#include "sqpc/adversary.hpp"
#include "sqpc/harness.hpp"
#include "sqpc/protocol.hpp"
#include "sqpc/sqkd.hpp"

namespace sqpc {

inline constexpr int kSchemaVersion = 1;

/// "0110..." with bits[0] first.
std::string bit_string(const Bits& bits);

nlohmann::json to_json(const RoundRecord& r);
nlohmann::json to_json(const RunReport& r, bool include_round_log = true);
nlohmann::json to_json(const AttackReport& r);
nlohmann::json to_json(const SqkdResult& r);
nlohmann::json to_json(const StatSummary& s);
nlohmann::json to_json(const SweepResult& s);

/// Stable text form: two-space indent plus trailing newline.
std::string dump(const nlohmann::json& j);

/// case,estimate,std_error,samples,exact rows for spreadsheet use.
std::string per_case_csv(const std::vector<StatSummary>& per_case);
std::string per_case_csv(const AttackReport& exact);

}  // namespace sqpc

#endif  // SQPC_REPORT_HPP
