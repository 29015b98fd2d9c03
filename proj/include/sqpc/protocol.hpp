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

#ifndef SQPC_PROTOCOL_HPP
#define SQPC_PROTOCOL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sqpc/adversary.hpp"
#include "sqpc/execution.hpp"
#include "sqpc/parties.hpp"
#include "sqpc/sqkd.hpp"

namespace sqpc {

/// A secret split into one-bit groups; bits[i-1] is G^i, the coefficient of
/// 2^(i-1).
struct Secret {
    Bits bits;
    std::optional<std::uint64_t> source_integer;
};

/// Least-significant bit first; throws if value >= 2^L or L is not in [1, 64].
Secret to_groups(std::uint64_t value, std::size_t L);

struct FixedKey {
    Bits k_bc;
};
struct RunSqkd {
    double check_fraction = 0.25;
};
using KeySource = std::variant<RunSqkd, FixedKey>;

struct SqpcConfig {
    std::size_t L = 16;
    double delta = 1.0;
    /// Error-rate thresholds for cases A, B, C (Step 5) and the TEST pairs (Step 6).
    std::array<double, 4> thresholds{0.05, 0.05, 0.05, 0.05};
    std::uint64_t seed = 0;
    KeySource key_source = RunSqkd{};
    AttackSpec attack = NoAttack{};
    /// Probability that a user SIFTs a particle.
    double sift_probability = 0.5;
};

/// Throws std::invalid_argument on out-of-range fields.
void validate(const SqpcConfig& config);

/// N = ceil(8 L (1 + delta)).
std::size_t round_count(const SqpcConfig& config);

enum class Verdict : std::uint8_t { Equal, NotEqual, Aborted };
enum class AbortStep : std::uint8_t { None, KeySetup, Step5, Step6, Step7 };

std::string_view to_string(Verdict v);
std::string_view to_string(AbortStep s);

enum class Party : std::uint8_t { Bob, Charlie };

/// One user's one-time-pad key and TP's reconstruction of it.
struct OtpKey {
    std::vector<std::uint64_t> positions;  ///< round ids, all case D, none TEST
    Bits user_bits;
    Bits tp_bits;
};

struct KeyMaterial {
    Bits k_bc;
    OtpKey m_b;
    OtpKey m_c;
};

struct RunReport {
    std::uint64_t seed = 0;
    std::size_t L = 0;
    std::size_t rounds = 0;
    std::string attack;
    std::array<std::uint64_t, 4> case_counts{};
    std::array<std::uint64_t, 4> error_counts{};
    /// Per-case error rates; case D is the TEST-pair rate. Absent when the
    /// case had no rounds or the step was not reached.
    std::array<std::optional<double>, 4> error_rates{};
    Verdict verdict = Verdict::Aborted;
    AbortStep abort_step = AbortStep::None;
    std::string abort_reason;
    std::vector<std::uint64_t> test_positions;  ///< round ids
    KeyMaterial keys;
    Bits r_b;
    Bits r_c;
    Bits r;
    std::optional<SqkdResult> sqkd;
    std::vector<RoundRecord> round_log;
};

/// First two draws of a round: Bob's then Charlie's action.
std::pair<UserAction, UserAction> plan_round(std::uint64_t seed, std::uint64_t round_id, double sift_probability = 0.5);

/// One round with the given actions: TP sends |++>, the attack interposes,
/// the users act, TP measures per Table 1 and scores the result.
RoundRecord simulate_round(const AttackSpec& attack, UserAction bob, UserAction charlie, UniformSource& rand,
                           std::uint64_t round_id = 0);

/// One round with actions drawn from CounterRng(seed, Stream::Rounds, round_id).
RoundRecord simulate_round(const AttackSpec& attack, std::uint64_t seed, std::uint64_t round_id,
                           double sift_probability = 0.5);

/// Rounds 0..n-1. Both paths return identical records.
std::vector<RoundRecord> simulate_rounds(const AttackSpec& attack, std::size_t n, std::uint64_t seed,
                                         double sift_probability, Execution exec);
std::vector<RoundRecord> simulate_rounds_serial(const AttackSpec& attack, std::size_t n, std::uint64_t seed,
                                                double sift_probability);
std::vector<RoundRecord> simulate_rounds_parallel(const AttackSpec& attack, std::size_t n, std::uint64_t seed,
                                                  double sift_probability);

/// L distinct positions into `case_d_rounds`, or nullopt if fewer than L exist.
std::optional<std::vector<std::size_t>> select_test_pairs(std::span<const RoundRecord> case_d_rounds, std::size_t L,
                                                          CounterRng& rand);

/// Fraction of the selected pairs violating the Table 2 relation.
double test_error_rate(std::span<const RoundRecord> case_d_rounds, std::span<const std::size_t> positions);

/// L positions from `remaining` (case-D records not used for TEST) with the
/// user's SIFT bits and TP's Z outcomes at those positions.
std::optional<OtpKey> select_otp_key(std::span<const RoundRecord> remaining, std::size_t L, Party who,
                                     CounterRng& rand);

Bit encrypt(Bit g, Bit m, Bit k);

struct Comparison {
    Bits r;
    Verdict verdict;
};

/// R^i = R_B^i ^ R_C^i ^ M_B^i ^ M_C^i; Equal iff every R^i is 0.
Comparison compare(std::span<const Bit> r_b, std::span<const Bit> r_c, std::span<const Bit> m_b,
                   std::span<const Bit> m_c);

/// Runs the protocol end to end. `exec` only selects how rounds are scheduled;
/// the report is identical either way.
RunReport run_protocol(const SqpcConfig& config, const Secret& x, const Secret& y,
                       Execution exec = Execution::Parallel);

}  // namespace sqpc

#endif  // SQPC_PROTOCOL_HPP
