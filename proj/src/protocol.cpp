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

#include "sqpc/protocol.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

namespace sqpc {

namespace {

std::string format_rate(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

Secret to_groups(std::uint64_t value, std::size_t L) {
    if (L == 0 || L > 64) {
        throw std::invalid_argument("to_groups: L must lie in [1, 64]");
    }
    if (L < 64 && value >> L != 0) {
        throw std::invalid_argument("to_groups: value does not fit in L bits");
    }
    Secret s;
    s.bits.resize(L);
    for (std::size_t i = 0; i < L; ++i) s.bits[i] = static_cast<Bit>((value >> i) & 1U);
    s.source_integer = value;
    return s;
}

void validate(const SqpcConfig& config) {
    if (config.L == 0) throw std::invalid_argument("config: L must be at least 1");
    if (!(config.delta > 0.0) || !std::isfinite(config.delta)) {
        throw std::invalid_argument("config: delta must be positive");
    }
    for (double t : config.thresholds) {
        if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("config: thresholds must lie in [0, 1]");
    }
    if (!(config.sift_probability > 0.0 && config.sift_probability < 1.0)) {
        throw std::invalid_argument("config: sift probability must lie in (0, 1)");
    }
    if (const auto* k = std::get_if<FixedKey>(&config.key_source); k && k->k_bc.size() != config.L) {
        throw std::invalid_argument("config: fixed K_BC must have L bits");
    }
    if (const auto* k = std::get_if<RunSqkd>(&config.key_source);
        k && !(k->check_fraction > 0.0 && k->check_fraction < 1.0)) {
        throw std::invalid_argument("config: SQKD check fraction must lie in (0, 1)");
    }
}

std::size_t round_count(const SqpcConfig& config) {
    const double n = 8.0 * static_cast<double>(config.L) * (1.0 + config.delta);
    return static_cast<std::size_t>(std::ceil(n - 1e-9));
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Equal: return "Equal";
        case Verdict::NotEqual: return "NotEqual";
        case Verdict::Aborted: return "Aborted";
    }
    return "?";
}

std::string_view to_string(AbortStep s) {
    switch (s) {
        case AbortStep::None: return "none";
        case AbortStep::KeySetup: return "key-setup";
        case AbortStep::Step5: return "step5";
        case AbortStep::Step6: return "step6";
        case AbortStep::Step7: return "step7";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Rounds

std::pair<UserAction, UserAction> plan_round(std::uint64_t seed, std::uint64_t round_id, double sift_probability) {
    CounterRng rng(seed, Stream::Rounds, round_id);
    const UserAction bob = rng.bernoulli(sift_probability) ? UserAction::Sift : UserAction::Ctrl;
    const UserAction charlie = rng.bernoulli(sift_probability) ? UserAction::Sift : UserAction::Ctrl;
    return {bob, charlie};
}

RoundRecord simulate_round(const AttackSpec& attack, UserAction bob, UserAction charlie, UniformSource& rand,
                           std::uint64_t round_id) {
    RoundRecord rec;
    rec.round_id = round_id;
    rec.bob_action = bob;
    rec.charlie_action = charlie;
    rec.round_case = classify_case(bob, charlie);

    // Step 1: TP prepares |++>; the forward leg may be attacked.
    StateVector state = interpose_forward(attack, tensor(ket("+"), ket("+")), rand);
    const auto* dishonest = std::get_if<DishonestBob>(&attack);
    if (dishonest) {
        state = dishonest_bob_interpose(dishonest->scheme, Link::Forward, state, kQubitC, bob, rand).state;
    }

    // Step 2: CTRL or SIFT.
    UserResponse b = user_act(state, kQubitB, bob, rand);
    rec.bob_sift_bit = b.sift;
    UserResponse c = user_act(b.returned, kQubitC, charlie, rand);
    rec.charlie_sift_bit = c.sift;

    // Return leg.
    state = interpose_backward(attack, c.returned);
    if (dishonest) {
        state = dishonest_bob_interpose(dishonest->scheme, Link::Backward, state, kQubitC, bob, rand).state;
    }

    // Steps 3-4: TP measures after the announcements.
    rec.tp_bits = tp_operate(rec.round_case, state, rand);
    score_round(rec);
    return rec;
}

RoundRecord simulate_round(const AttackSpec& attack, std::uint64_t seed, std::uint64_t round_id,
                           double sift_probability) {
    CounterRng rng(seed, Stream::Rounds, round_id);
    const UserAction bob = rng.bernoulli(sift_probability) ? UserAction::Sift : UserAction::Ctrl;
    const UserAction charlie = rng.bernoulli(sift_probability) ? UserAction::Sift : UserAction::Ctrl;
    return simulate_round(attack, bob, charlie, rng, round_id);
}

std::vector<RoundRecord> simulate_rounds_serial(const AttackSpec& attack, std::size_t n, std::uint64_t seed,
                                                double sift_probability) {
    std::vector<RoundRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(simulate_round(attack, seed, i, sift_probability));
    return out;
}

std::vector<RoundRecord> simulate_rounds_parallel(const AttackSpec& attack, std::size_t n, std::uint64_t seed,
                                                  double sift_probability) {
    std::vector<RoundRecord> out(n);
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] =
                simulate_round(attack, seed, static_cast<std::uint64_t>(i), sift_probability);
        } catch (...) {
#pragma omp critical(sqpc_round_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<RoundRecord> simulate_rounds(const AttackSpec& attack, std::size_t n, std::uint64_t seed,
                                         double sift_probability, Execution exec) {
    return exec == Execution::Serial ? simulate_rounds_serial(attack, n, seed, sift_probability)
                                     : simulate_rounds_parallel(attack, n, seed, sift_probability);
}

// ---------------------------------------------------------------------------
// Steps 6-8

std::optional<std::vector<std::size_t>> select_test_pairs(std::span<const RoundRecord> case_d_rounds, std::size_t L,
                                                          CounterRng& rand) {
    if (case_d_rounds.size() < L) return std::nullopt;
    return sample_without_replacement(case_d_rounds.size(), L, rand);
}

double test_error_rate(std::span<const RoundRecord> case_d_rounds, std::span<const std::size_t> positions) {
    if (positions.empty()) return 0.0;
    std::size_t errors = 0;
    for (auto p : positions) {
        const RoundRecord& r = case_d_rounds[p];
        if (r.round_case != RoundCase::D) {
            throw std::invalid_argument("test_error_rate: TEST positions must be case-D rounds");
        }
        if (!sift_consistent({r.tp_bits[0].bit, r.tp_bits[1].bit}, *r.bob_sift_bit, *r.charlie_sift_bit)) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(positions.size());
}

std::optional<OtpKey> select_otp_key(std::span<const RoundRecord> remaining, std::size_t L, Party who,
                                     CounterRng& rand) {
    if (remaining.size() < L) return std::nullopt;
    OtpKey key;
    for (auto p : sample_without_replacement(remaining.size(), L, rand)) {
        const RoundRecord& r = remaining[p];
        if (r.round_case != RoundCase::D) {
            throw std::invalid_argument("select_otp_key: key bits must come from case-D rounds");
        }
        key.positions.push_back(r.round_id);
        if (who == Party::Bob) {
            key.user_bits.push_back(*r.bob_sift_bit);
            key.tp_bits.push_back(r.tp_bits[0].bit);
        } else {
            key.user_bits.push_back(*r.charlie_sift_bit);
            key.tp_bits.push_back(r.tp_bits[1].bit);
        }
    }
    return key;
}

Bit encrypt(Bit g, Bit m, Bit k) {
    return static_cast<Bit>((g ^ m ^ k) & 1U);
}

Comparison compare(std::span<const Bit> r_b, std::span<const Bit> r_c, std::span<const Bit> m_b,
                   std::span<const Bit> m_c) {
    const std::size_t L = r_b.size();
    if (r_c.size() != L || m_b.size() != L || m_c.size() != L) {
        throw std::invalid_argument("compare: all sequences must have length L");
    }
    Comparison out{Bits(L), Verdict::Equal};
    for (std::size_t i = 0; i < L; ++i) {
        out.r[i] = static_cast<Bit>((r_b[i] ^ r_c[i] ^ m_b[i] ^ m_c[i]) & 1U);
        // The sequential loop stops at the first nonzero R^i with X != Y; the
        // verdict is the same, the full vector is kept for the report.
        if (out.r[i] != 0) out.verdict = Verdict::NotEqual;
    }
    return out;
}

RunReport run_protocol(const SqpcConfig& config, const Secret& x, const Secret& y, Execution exec) {
    validate(config);
    if (x.bits.size() != config.L || y.bits.size() != config.L) {
        throw std::invalid_argument("run_protocol: secrets must have L groups");
    }

    RunReport rep;
    rep.seed = config.seed;
    rep.L = config.L;
    rep.rounds = round_count(config);
    rep.attack = describe(config.attack);

    auto abort = [&](AbortStep step, std::string reason) {
        rep.verdict = Verdict::Aborted;
        rep.abort_step = step;
        rep.abort_reason = std::move(reason);
        return rep;
    };

    // Preliminary: K_BC.
    if (const auto* fixed = std::get_if<FixedKey>(&config.key_source)) {
        rep.keys.k_bc = fixed->k_bc;
    } else {
        const auto& sq = std::get<RunSqkd>(config.key_source);
        SqkdParams params;
        params.key_length = config.L;
        params.check_fraction = sq.check_fraction;
        rep.sqkd = establish_key(params, config.seed);
        if (!rep.sqkd->ok()) {
            return abort(AbortStep::KeySetup, "sqkd " + std::string(to_string(rep.sqkd->status)));
        }
        rep.keys.k_bc = rep.sqkd->key;
    }

    // Steps 1-4.
    rep.round_log = simulate_rounds(config.attack, rep.rounds, config.seed, config.sift_probability, exec);
    std::vector<RoundRecord> case_d;
    for (const auto& r : rep.round_log) {
        const std::size_t c = index_of(r.round_case);
        ++rep.case_counts[c];
        if (r.ctrl_error.value_or(false)) ++rep.error_counts[c];
        if (r.round_case == RoundCase::D) case_d.push_back(r);
    }

    // Step 5.
    for (RoundCase c : {RoundCase::A, RoundCase::B, RoundCase::C}) {
        const std::size_t i = index_of(c);
        if (rep.case_counts[i] == 0) continue;
        rep.error_rates[i] = static_cast<double>(rep.error_counts[i]) / static_cast<double>(rep.case_counts[i]);
    }
    for (RoundCase c : {RoundCase::A, RoundCase::B, RoundCase::C}) {
        const std::size_t i = index_of(c);
        if (rep.error_rates[i] && *rep.error_rates[i] > config.thresholds[i]) {
            return abort(AbortStep::Step5, "case " + std::string(to_string(c)) + " error rate " +
                                               format_rate(*rep.error_rates[i]) + " exceeds threshold " +
                                               format_rate(config.thresholds[i]));
        }
    }

    // Step 6: TEST pairs.
    CounterRng test_rng(config.seed, Stream::Protocol, 0);
    const auto test = select_test_pairs(case_d, config.L, test_rng);
    if (!test) return abort(AbortStep::Step6, "insufficient-bits");
    std::vector<bool> is_test(case_d.size(), false);
    for (auto p : *test) {
        is_test[p] = true;
        rep.test_positions.push_back(case_d[p].round_id);
        if (case_d[p].table2_mismatch.value_or(false)) ++rep.error_counts[index_of(RoundCase::D)];
    }
    rep.error_rates[index_of(RoundCase::D)] = test_error_rate(case_d, *test);
    if (*rep.error_rates[3] > config.thresholds[3]) {
        return abort(AbortStep::Step6, "TEST error rate " + format_rate(*rep.error_rates[3]) +
                                           " exceeds threshold " + format_rate(config.thresholds[3]));
    }

    // Step 7: one-time pads from the remaining case-D SIFT bits.
    std::vector<RoundRecord> remaining;
    for (std::size_t i = 0; i < case_d.size(); ++i) {
        if (!is_test[i]) remaining.push_back(case_d[i]);
    }
    CounterRng bob_rng(config.seed, Stream::Protocol, 1);
    CounterRng charlie_rng(config.seed, Stream::Protocol, 2);
    auto m_b = select_otp_key(remaining, config.L, Party::Bob, bob_rng);
    auto m_c = select_otp_key(remaining, config.L, Party::Charlie, charlie_rng);
    if (!m_b || !m_c) return abort(AbortStep::Step7, "insufficient-bits");
    rep.keys.m_b = std::move(*m_b);
    rep.keys.m_c = std::move(*m_c);

    rep.r_b.resize(config.L);
    rep.r_c.resize(config.L);
    for (std::size_t i = 0; i < config.L; ++i) {
        rep.r_b[i] = encrypt(x.bits[i], rep.keys.m_b.user_bits[i], rep.keys.k_bc[i]);
        rep.r_c[i] = encrypt(y.bits[i], rep.keys.m_c.user_bits[i], rep.keys.k_bc[i]);
    }

    // Step 8: TP decrypts with the pads he reconstructed from OPERATION 4.
    Comparison cmp = compare(rep.r_b, rep.r_c, rep.keys.m_b.tp_bits, rep.keys.m_c.tp_bits);
    rep.r = std::move(cmp.r);
    rep.verdict = cmp.verdict;
    return rep;
}

}  // namespace sqpc
