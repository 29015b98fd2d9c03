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

#ifndef SQPC_PARTIES_HPP
#define SQPC_PARTIES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "sqpc/qstate.hpp"

namespace sqpc {

/// Particle B travels TP <-> Bob and is qubit 0; particle C travels
/// TP <-> Charlie and is qubit 1. Probe qubits, if any, follow.
inline constexpr std::size_t kQubitB = 0;
inline constexpr std::size_t kQubitC = 1;

enum class UserAction : std::uint8_t {
    Ctrl,  ///< reflect undisturbed
    Sift,  ///< measure Z and resend the state found
};

enum class RoundCase : std::uint8_t { A, B, C, D };

std::string_view to_string(UserAction a);
std::string_view to_string(RoundCase c);
inline std::size_t index_of(RoundCase c) { return static_cast<std::size_t>(c); }

struct TpOutcome {
    Basis basis;
    Bit bit;

    friend bool operator==(const TpOutcome&, const TpOutcome&) = default;
};

using TpOutcomes = std::array<TpOutcome, 2>;

struct RoundRecord {
    std::uint64_t round_id = 0;
    UserAction bob_action = UserAction::Ctrl;
    UserAction charlie_action = UserAction::Ctrl;
    RoundCase round_case = RoundCase::A;
    std::optional<Bit> bob_sift_bit;      ///< present iff Bob SIFTed
    std::optional<Bit> charlie_sift_bit;  ///< present iff Charlie SIFTed
    TpOutcomes tp_bits{};                 ///< TP's outcomes on B and C
    std::optional<bool> ctrl_error;       ///< present iff case A, B or C
    std::optional<bool> table2_mismatch;  ///< present iff case D

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct UserResponse {
    StateVector returned;
    std::optional<Bit> sift;
};

/// A classical user's handling of one single-qubit particle.
UserResponse user_handle(const StateVector& particle, UserAction action, UniformSource& rand);

/// The same handling applied to `qubit` of a composite state (the particle may
/// be entangled with its partner or a probe).
UserResponse user_act(const StateVector& state, std::size_t qubit, UserAction action, UniformSource& rand);

RoundCase classify_case(UserAction bob, UserAction charlie);

/// TP's measurement bases on (B, C) for each case: OPERATION 1..4.
std::array<Basis, 2> tp_bases(RoundCase c);

/// Measures B and C of `state` in the case's bases. Extra qubits are left
/// unmeasured.
TpOutcomes tp_operate(RoundCase c, const StateVector& state, UniformSource& rand);

/// True iff an X-measured CTRL particle came back as |->. Invalid for case D.
bool ctrl_error(RoundCase c, const TpOutcomes& outcomes);

/// Table 2 relation: TP's Z pair equals (Bob's bit, Charlie's bit).
bool sift_consistent(std::array<Bit, 2> tp_pair, Bit bob, Bit charlie);

/// Fills the error flags of a record whose actions and outcomes are set.
void score_round(RoundRecord& record);

}  // namespace sqpc

#endif  // SQPC_PARTIES_HPP
