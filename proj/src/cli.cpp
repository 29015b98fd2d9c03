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

#include "sqpc/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"

#include "sqpc/execution.hpp"
#include "sqpc/harness.hpp"
#include "sqpc/protocol.hpp"
#include "sqpc/report.hpp"
#include "sqpc/sqkd.hpp"

namespace sqpc {

using nlohmann::json;

namespace {

Ket parse_ket(char c) {
    switch (c) {
        case '0': return Ket::Zero;
        case '1': return Ket::One;
        case '+': return Ket::Plus;
        case '-': return Ket::Minus;
        default: throw std::invalid_argument(std::string("unknown ket '") + c + "' (expected 0, 1, + or -)");
    }
}

UnitaryMatrix cnot_ue(std::size_t probe_qubits) {
    // CNOT from B onto the first probe qubit.
    const std::size_t targets[] = {kQubitB, 2};
    return embed(UnitaryMatrix::controlled(UnitaryMatrix::pauli_x()), targets, 2 + probe_qubits);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace

const std::vector<std::string>& attack_names() {
    static const std::vector<std::string> names = {
        "none",
        "intercept-resend",
        "intercept-resend-random",
        "measure-resend-z",
        "measure-resend-x",
        "measure-resend-random",
        "dishonest-bob-1",
        "dishonest-bob-2",
        "dishonest-bob-3",
        "entangle-cnot",
        "entangle-rotation",
        "entangle-compliant",
    };
    return names;
}

AttackSpec parse_attack(const AttackOptions& o) {
    const std::string& n = o.name;
    if (n == "none") return NoAttack{};
    if (n == "intercept-resend") {
        if (o.fake.size() != 2) throw std::invalid_argument("--fake takes two kets, e.g. +0");
        return InterceptResend{FixedPair{parse_ket(o.fake[0]), parse_ket(o.fake[1])}};
    }
    if (n == "intercept-resend-random") return InterceptResend{UniformRandomProduct{}};
    if (n == "measure-resend-z") return MeasureResend{BasisPolicy::AlwaysZ};
    if (n == "measure-resend-x") return MeasureResend{BasisPolicy::AlwaysX};
    if (n == "measure-resend-random") return MeasureResend{BasisPolicy::UniformRandom};
    if (n == "dishonest-bob-1") return DishonestBob{DishonestScheme::I};
    if (n == "dishonest-bob-2") return DishonestBob{DishonestScheme::II};
    if (n == "dishonest-bob-3") return DishonestBob{DishonestScheme::III};
    if (n.starts_with("entangle-")) {
        if (o.probe_qubits == 0 || o.probe_qubits > 6) {
            throw std::invalid_argument("--probe-qubits must lie in [1, 6]");
        }
        const std::size_t p = o.probe_qubits;
        if (n == "entangle-cnot") return make_entangle_measure(cnot_ue(p), UnitaryMatrix::identity(2 + p), p);
        const UnitaryMatrix u_e = controlled_rotation_ue(o.theta_b, o.theta_c, p);
        if (n == "entangle-rotation") return make_entangle_measure(u_e, UnitaryMatrix::identity(2 + p), p);
        if (n == "entangle-compliant") return compliant_attack(u_e, p);
    }
    throw std::invalid_argument("unknown attack '" + n + "'");
}

Bits parse_hex_key(const std::string& hex, std::size_t L) {
    std::string digits = hex;
    if (digits.starts_with("0x") || digits.starts_with("0X")) digits = digits.substr(2);
    if (digits.empty()) throw std::invalid_argument("empty hex key");
    Bits bits;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*it)));
        int v;
        if (c >= '0' && c <= '9') {
            v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            v = c - 'a' + 10;
        } else {
            throw std::invalid_argument("bad hex digit in key");
        }
        for (int b = 0; b < 4; ++b) bits.push_back(static_cast<Bit>((v >> b) & 1));
    }
    if (bits.size() < L) bits.resize(L, 0);
    if (std::any_of(bits.begin() + static_cast<std::ptrdiff_t>(L), bits.end(), [](Bit b) { return b != 0; })) {
        throw std::invalid_argument("hex key does not fit in L bits");
    }
    bits.resize(L);
    return bits;
}

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Semi-quantum private comparison simulator", "sqpc_cli"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    AttackOptions attack_opts;
    std::string csv_path;
    std::string out_path;
    int threads = 0;
    bool serial = false;

    auto add_attack = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--attack", attack_opts.name, "Attack model")
                        ->check(CLI::IsMember(attack_names()));
        if (required) opt->required();
        sub->add_option("--fake", attack_opts.fake, "Fake pair for intercept-resend, e.g. +0")
            ->capture_default_str();
        sub->add_option("--theta-b", attack_opts.theta_b, "Entangle rotation angle on B")->capture_default_str();
        sub->add_option("--theta-c", attack_opts.theta_c, "Entangle rotation angle on C")->capture_default_str();
        sub->add_option("--probe-qubits", attack_opts.probe_qubits, "Probe qubits for entangle attacks")
            ->capture_default_str();
    };
    auto add_exec = [&](CLI::App* sub) {
        sub->add_option("--threads", threads, "Worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
        sub->add_flag("--serial", serial, "Use the serial reference path");
    };

    // run
    auto* run = app.add_subcommand("run", "Run the comparison protocol once");
    std::size_t L = 16;
    double delta = 1.0;
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::string key_source = "sqkd";
    bool no_round_log = false;
    run->add_option("--L", L, "Secret length in bits")->capture_default_str()->check(CLI::Range(1, 64));
    run->add_option("--delta", delta, "Round overhead")->capture_default_str();
    run->add_option("--x", x, "Bob's secret")->required();
    run->add_option("--y", y, "Charlie's secret")->required();
    run->add_option("--key-source", key_source, "sqkd or fixed:<hex>")->capture_default_str();
    run->add_option("--seed", seed, "Seed")->required();
    run->add_option("--out", out_path, "Also write the report here");
    run->add_flag("--no-round-log", no_round_log, "Omit per-round records");
    add_attack(run, false);
    add_exec(run);

    // attack-sweep
    auto* sweep = app.add_subcommand("attack-sweep", "Monte Carlo detection rates against the exact oracle");
    std::uint64_t samples = 100000;
    add_attack(sweep, true);
    sweep->add_option("--samples", samples, "Rounds to sample")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--seed", seed, "Seed")->capture_default_str();
    sweep->add_option("--csv", csv_path, "Write per-case rates as CSV");
    sweep->add_option("--out", out_path, "Also write the report here");
    add_exec(sweep);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exact per-case detection probabilities");
    add_attack(oracle, true);
    oracle->add_option("--seed", seed, "Recorded only")->capture_default_str();
    oracle->add_option("--csv", csv_path, "Write per-case rates as CSV");
    oracle->add_option("--out", out_path, "Also write the report here");

    // theorem1
    auto* thm = app.add_subcommand("theorem1", "Probe-independence sweep over entangle-measure attacks");
    std::size_t grid = 10;
    std::size_t probe_qubits = 2;
    thm->add_option("--grid", grid, "Angles per axis")->capture_default_str()->check(CLI::Range(1, 1000));
    thm->add_option("--probe-qubits", probe_qubits, "Probe qubits")->capture_default_str()->check(CLI::Range(1, 6));
    thm->add_option("--seed", seed, "Seed")->capture_default_str();
    thm->add_option("--out", out_path, "Also write the report here");
    add_exec(thm);

    // sqkd
    auto* sqkd = app.add_subcommand("sqkd", "Establish a shared key between Bob and Charlie");
    std::size_t key_length = 16;
    double check_fraction = 0.25;
    std::uint64_t sqkd_samples = 0;
    sqkd->add_option("--L", key_length, "Key length")->capture_default_str()->check(CLI::PositiveNumber);
    sqkd->add_option("--check-fraction", check_fraction, "Fraction of SIFT bits disclosed")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    sqkd->add_option("--seed", seed, "Seed")->capture_default_str();
    sqkd->add_option("--samples", sqkd_samples, "Also run this many single-round statistics samples");
    sqkd->add_option("--out", out_path, "Also write the report here");
    add_exec(sqkd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (threads > 0) set_max_threads(threads);
    const Execution exec = serial ? Execution::Serial : Execution::Parallel;

    json doc;
    int status = kExitOk;
    try {
        if (*run) {
            SqpcConfig config;
            config.L = L;
            config.delta = delta;
            config.seed = seed;
            config.attack = parse_attack(attack_opts);
            if (key_source == "sqkd") {
                config.key_source = RunSqkd{};
            } else if (key_source.starts_with("fixed:")) {
                config.key_source = FixedKey{parse_hex_key(key_source.substr(6), L)};
            } else {
                throw std::invalid_argument("--key-source must be sqkd or fixed:<hex>");
            }
            validate(config);
            const Secret sx = to_groups(x, L);
            const Secret sy = to_groups(y, L);
            const RunReport rep = run_protocol(config, sx, sy, exec);
            doc = to_json(rep, !no_round_log);
            doc["command"] = "run";
            doc["config"] = {{"L", L},
                             {"delta", delta},
                             {"x", x},
                             {"y", y},
                             {"key_source", key_source},
                             {"rounds", round_count(config)}};
            if (rep.verdict == Verdict::Aborted) status = kExitAbort;
        } else if (*sweep) {
            const AttackSpec attack = parse_attack(attack_opts);
            const Workflow wf = detection_workflow(attack);
            const auto stats = monte_carlo(wf, samples, seed, exec);
            std::array<double, 4> est{};
            bool within = true;
            json rows = json::array();
            for (std::size_t c = 0; c < 4; ++c) {
                est[c] = stats[c].estimate;
                within = within && within_sigma(stats[c], 4.0);
                rows.push_back(to_json(stats[c]));
            }
            const auto active = active_cases(attack);
            const AttackReport exact = exact_detection(attack);
            doc = {{"schema_version", kSchemaVersion},
                   {"command", "attack-sweep"},
                   {"seed", seed},
                   {"attack", describe(attack)},
                   {"samples", samples},
                   {"per_case", rows},
                   {"average_detection", active_average(est, active)},
                   {"exact", to_json(exact)},
                   {"all_within_4_sigma", within}};
            if (!csv_path.empty()) write_file(csv_path, per_case_csv(stats));
        } else if (*oracle) {
            const AttackSpec attack = parse_attack(attack_opts);
            const AttackReport exact = exact_detection(attack);
            doc = to_json(exact);
            doc["schema_version"] = kSchemaVersion;
            doc["command"] = "oracle";
            doc["seed"] = seed;
            doc["attack"] = describe(attack);
            if (!csv_path.empty()) write_file(csv_path, per_case_csv(exact));
        } else if (*thm) {
            const SweepResult res = theorem1_sweep(grid, probe_qubits, seed, Theorem1Tolerances{}, exec);
            doc = to_json(res);
            doc["schema_version"] = kSchemaVersion;
            doc["command"] = "theorem1";
            doc["seed"] = seed;
            if (!res.all_consistent) status = kExitAbort;
        } else if (*sqkd) {
            if (!(check_fraction > 0.0 && check_fraction < 1.0)) {
                throw std::invalid_argument("--check-fraction must lie in (0, 1)");
            }
            SqkdParams params;
            params.key_length = key_length;
            params.check_fraction = check_fraction;
            const SqkdResult res = establish_key(params, seed);
            doc = to_json(res);
            doc["schema_version"] = kSchemaVersion;
            doc["command"] = "sqkd";
            doc["seed"] = seed;
            doc["check_fraction"] = check_fraction;
            doc["round_budget"] = sqkd_round_budget(key_length, check_fraction);
            if (sqkd_samples > 0) {
                json rows = json::array();
                for (const auto& s : monte_carlo(sqkd_workflow(), sqkd_samples, seed, exec)) rows.push_back(to_json(s));
                doc["statistics"] = rows;
            }
            if (!res.ok()) status = kExitAbort;
        }
        const std::string text = dump(doc);
        if (!out_path.empty()) write_file(out_path, text);
        out << text;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return status;
}

}  // namespace sqpc
