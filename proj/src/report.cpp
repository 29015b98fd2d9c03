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

#include "sqpc/report.hpp"

#include <sstream>

namespace sqpc {

using nlohmann::json;

namespace {

constexpr const char* kCaseNames[] = {"a", "b", "c", "d"};

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string_view method_name(Method m) {
    return m == Method::Exact ? "exact" : "monte-carlo";
}

}  // namespace

std::string bit_string(const Bits& bits) {
    std::string s;
    s.reserve(bits.size());
    for (Bit b : bits) s.push_back(b ? '1' : '0');
    return s;
}

json to_json(const RoundRecord& r) {
    json j;
    j["round_id"] = r.round_id;
    j["bob_action"] = to_string(r.bob_action);
    j["charlie_action"] = to_string(r.charlie_action);
    j["case"] = to_string(r.round_case);
    j["bob_sift_bit"] = r.bob_sift_bit ? json(int{*r.bob_sift_bit}) : json(nullptr);
    j["charlie_sift_bit"] = r.charlie_sift_bit ? json(int{*r.charlie_sift_bit}) : json(nullptr);
    j["tp_bits"] = json::array();
    for (const auto& o : r.tp_bits) {
        j["tp_bits"].push_back({{"basis", to_string(o.basis)}, {"bit", int{o.bit}}});
    }
    j["ctrl_error"] = r.ctrl_error ? json(*r.ctrl_error) : json(nullptr);
    j["table2_mismatch"] = r.table2_mismatch ? json(*r.table2_mismatch) : json(nullptr);
    return j;
}

json to_json(const RunReport& r, bool include_round_log) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["seed"] = r.seed;
    j["L"] = r.L;
    j["rounds"] = r.rounds;
    j["attack"] = r.attack;
    j["verdict"] = to_string(r.verdict);
    j["abort"] = r.verdict == Verdict::Aborted
                     ? json{{"step", to_string(r.abort_step)}, {"reason", r.abort_reason}}
                     : json(nullptr);
    json counts;
    json rates;
    json errors;
    for (std::size_t c = 0; c < 4; ++c) {
        counts[kCaseNames[c]] = r.case_counts[c];
        errors[kCaseNames[c]] = r.error_counts[c];
        rates[kCaseNames[c]] = optional_number(r.error_rates[c]);
    }
    j["case_counts"] = counts;
    j["error_counts"] = errors;
    j["error_rates"] = rates;
    j["test_positions"] = r.test_positions;
    j["k_bc"] = bit_string(r.keys.k_bc);
    auto otp = [](const OtpKey& k) {
        return json{{"positions", k.positions},
                    {"user_bits", bit_string(k.user_bits)},
                    {"tp_bits", bit_string(k.tp_bits)}};
    };
    j["m_b"] = otp(r.keys.m_b);
    j["m_c"] = otp(r.keys.m_c);
    j["r_b"] = bit_string(r.r_b);
    j["r_c"] = bit_string(r.r_c);
    j["r"] = bit_string(r.r);
    j["sqkd"] = r.sqkd ? to_json(*r.sqkd) : json(nullptr);
    if (include_round_log) {
        json log = json::array();
        for (const auto& rec : r.round_log) log.push_back(to_json(rec));
        j["round_log"] = std::move(log);
    }
    return j;
}

json to_json(const AttackReport& r) {
    json j;
    json per_case;
    json active;
    for (std::size_t c = 0; c < 4; ++c) {
        per_case[kCaseNames[c]] = r.per_case_detection[c];
        active[kCaseNames[c]] = r.active[c];
    }
    j["per_case_detection"] = per_case;
    j["active_cases"] = active;
    j["average_detection"] = r.average_detection;
    j["probe_distinguishability"] = optional_number(r.probe_distinguishability);
    j["method"] = method_name(r.method);
    if (r.method == Method::MonteCarlo) j["samples"] = r.samples;
    return j;
}

json to_json(const SqkdResult& r) {
    return json{
        {"status", to_string(r.status)},
        {"key", bit_string(r.key)},
        {"charlie_key", bit_string(r.charlie_key)},
        {"qber_ctrl", r.qber_ctrl},
        {"qber_sift", r.qber_sift},
        {"class_counts", {{"p0", r.class_counts[0]}, {"p1", r.class_counts[1]}, {"p2", r.class_counts[2]}}},
        {"rounds_used", r.rounds_used},
        {"ctrl_runs", r.ctrl_runs},
        {"ctrl_failures", r.ctrl_failures},
        {"sift_bits", r.sift_bits},
        {"sift_checked", r.sift_checked},
        {"sift_errors", r.sift_errors},
    };
}

json to_json(const StatSummary& s) {
    json j{{"metric", s.metric},
           {"estimate", s.estimate},
           {"std_error", s.std_error},
           {"samples", s.samples},
           {"exact_value", optional_number(s.exact_value)}};
    if (s.exact_value) j["within_4_sigma"] = within_sigma(s, 4.0);
    return j;
}

json to_json(const SweepResult& s) {
    json points = json::array();
    for (const auto& p : s.points) {
        points.push_back({{"theta_b", p.theta_b},
                          {"theta_c", p.theta_c},
                          {"return_unitary", p.return_unitary},
                          {"per_case_detection", to_json(p.result.detection)["per_case_detection"]},
                          {"average_detection", p.result.detection.average_detection},
                          {"distinguishability", p.result.distinguishability},
                          {"charlie_distinguishability", p.result.charlie_distinguishability},
                          {"verdict", p.result.violated ? "violated" : "consistent"}});
    }
    return json{{"grid", s.grid},
                {"grid_points", s.grid * s.grid},
                {"attacks", s.points.size()},
                {"probe_qubits", s.probe_qubits},
                {"all_consistent", s.all_consistent},
                {"points", std::move(points)}};
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

std::string per_case_csv(const std::vector<StatSummary>& per_case) {
    std::ostringstream os;
    os.precision(17);
    os << "case,estimate,std_error,samples,exact\n";
    for (std::size_t c = 0; c < per_case.size() && c < 4; ++c) {
        const auto& s = per_case[c];
        os << kCaseNames[c] << ',' << s.estimate << ',' << s.std_error << ',' << s.samples << ',';
        if (s.exact_value) os << *s.exact_value;
        os << '\n';
    }
    return os.str();
}

std::string per_case_csv(const AttackReport& exact) {
    std::ostringstream os;
    os.precision(17);
    os << "case,estimate,std_error,samples,exact\n";
    for (std::size_t c = 0; c < 4; ++c) {
        os << kCaseNames[c] << ',' << exact.per_case_detection[c] << ",0,0," << exact.per_case_detection[c] << '\n';
    }
    return os.str();
}

}  // namespace sqpc
