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

#ifndef SQPC_SQKD_HPP
#define SQPC_SQKD_HPP

// Three-party circled semi-quantum key distribution: one qubit per run travels
// TP -> Bob -> Charlie -> TP, and Bob and Charlie end up sharing K_BC.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sqpc/qstate.hpp"
#include "sqpc/rng.hpp"

namespace sqpc {

/// A classical user's handling of the travel qubit.
struct SqkdUserOp {
    bool refreshed = false;  ///< false: Pass; true: MeasureRefresh
    Bit measured_bit = 0;    ///< Z outcome (MeasureRefresh only)
    Bit fresh_bit = 0;       ///< Z ket sent on (MeasureRefresh only)

    friend bool operator==(const SqkdUserOp&, const SqkdUserOp&) = default;
};

enum class SqkdClass : std::uint8_t {
    P0,  ///< neither user measured
    P1,  ///< exactly one measured
    P2,  ///< both measured
};

std::string_view to_string(SqkdClass c);

struct SqkdRound {
    std::uint64_t round_id = 0;
    Bit tp_prepared = 0;  ///< 0: |+>, 1: |->
    SqkdUserOp bob;
    SqkdUserOp charlie;
    Basis tp_back_basis = Basis::X;
    Bit tp_back_outcome = 0;
    SqkdClass cls = SqkdClass::P0;

    friend bool operator==(const SqkdRound&, const SqkdRound&) = default;
};

/// Disturbance on one leg of the circle; used to exercise the CTRL checks.
enum class SqkdLink : std::uint8_t { TpToBob, BobToCharlie, CharlieToTp };
enum class SqkdTapKind : std::uint8_t {
    BitFlip,          ///< Pauli X on the travelling qubit
    InterceptResend,  ///< replaced by a uniformly random one of |0>,|1>,|+>,|->
};
struct SqkdTap {
    SqkdLink link;
    SqkdTapKind kind;
};

SqkdClass classify(const SqkdUserOp& bob, const SqkdUserOp& charlie);

/// One run of the circle. Randomness is consumed in a fixed order: TP's
/// preparation, Bob, Charlie, the tap (if any), TP's basis, TP's outcome.
SqkdRound sqkd_round(UniformSource& rand, std::uint64_t round_id = 0, const std::optional<SqkdTap>& tap = {});

struct SqkdCheck {
    std::optional<bool> ctrl_pass;                ///< usable CTRL run
    std::optional<std::pair<Bit, Bit>> sift_bits; ///< (Bob's, Charlie's) SIFT bit
};

/// Post-distribution classification: P0 with TP basis X and P1 with TP basis
/// Z are CTRL runs; P2 yields a SIFT bit; everything else is discarded.
SqkdCheck classify_and_check(const SqkdRound& round);

struct SqkdParams {
    std::size_t key_length = 16;
    double check_fraction = 0.25;
    double qber_ctrl_threshold = 0.0;
    double qber_sift_threshold = 0.0;
    std::optional<SqkdTap> tap;
};

enum class SqkdStatus : std::uint8_t { Ok, QberExceeded, RoundBudgetExhausted };

std::string_view to_string(SqkdStatus s);

struct SqkdResult {
    SqkdStatus status = SqkdStatus::Ok;
    Bits key;          ///< Bob's copy of K_BC
    Bits charlie_key;  ///< Charlie's copy
    double qber_ctrl = 0.0;
    double qber_sift = 0.0;
    std::array<std::uint64_t, 3> class_counts{};
    std::uint64_t rounds_used = 0;
    std::uint64_t ctrl_runs = 0;
    std::uint64_t ctrl_failures = 0;
    std::uint64_t sift_bits = 0;
    std::uint64_t sift_checked = 0;
    std::uint64_t sift_errors = 0;

    bool ok() const { return status == SqkdStatus::Ok; }
};

/// ceil(12 L / ((1/4)(1 - check_fraction))) runs before giving up.
std::uint64_t sqkd_round_budget(std::size_t key_length, double check_fraction);

/// SIFT bits to accumulate: ceil(L / (1 - check_fraction)) + 1.
std::uint64_t sqkd_sift_target(std::size_t key_length, double check_fraction);

/// Runs the circle until enough SIFT bits exist, sacrifices a random
/// check_fraction of them for the SIFT QBER, and keeps the first L of the rest.
/// Run i draws from CounterRng(seed, Stream::Sqkd, i).
SqkdResult establish_key(const SqkdParams& params, std::uint64_t seed);

/// Rate at which TP's back-measurement bit equals the SIFT bit over P2 runs.
double tp_secrecy_probe(std::span<const SqkdRound> rounds);

}  // namespace sqpc

#endif  // SQPC_SQKD_HPP
