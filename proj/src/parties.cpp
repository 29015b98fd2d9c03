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

#include "sqpc/parties.hpp"

#include <stdexcept>

namespace sqpc {

std::string_view to_string(UserAction a) {
    return a == UserAction::Ctrl ? "CTRL" : "SIFT";
}

std::string_view to_string(RoundCase c) {
    switch (c) {
        case RoundCase::A: return "A";
        case RoundCase::B: return "B";
        case RoundCase::C: return "C";
        case RoundCase::D: return "D";
    }
    return "?";
}

UserResponse user_handle(const StateVector& particle, UserAction action, UniformSource& rand) {
    if (particle.num_qubits() != 1) {
        throw std::invalid_argument("user_handle: particle must be a single qubit");
    }
    return user_act(particle, 0, action, rand);
}

UserResponse user_act(const StateVector& state, std::size_t qubit, UserAction action, UniformSource& rand) {
    if (action == UserAction::Ctrl) {
        return {state, std::nullopt};
    }
    // Resending "the state found" is the collapsed Z eigenstate itself.
    Measurement m = measure(state, qubit, Basis::Z, rand);
    return {std::move(m.state), m.bit};
}

RoundCase classify_case(UserAction bob, UserAction charlie) {
    if (bob == UserAction::Ctrl) {
        return charlie == UserAction::Ctrl ? RoundCase::A : RoundCase::B;
    }
    return charlie == UserAction::Ctrl ? RoundCase::C : RoundCase::D;
}

std::array<Basis, 2> tp_bases(RoundCase c) {
    switch (c) {
        case RoundCase::A: return {Basis::X, Basis::X};
        case RoundCase::B: return {Basis::X, Basis::Z};
        case RoundCase::C: return {Basis::Z, Basis::X};
        case RoundCase::D: return {Basis::Z, Basis::Z};
    }
    throw std::logic_error("tp_bases: bad case");
}

TpOutcomes tp_operate(RoundCase c, const StateVector& state, UniformSource& rand) {
    if (state.num_qubits() < 2) {
        throw std::invalid_argument("tp_operate: state must hold particles B and C");
    }
    const auto bases = tp_bases(c);
    Measurement mb = measure(state, kQubitB, bases[0], rand);
    Measurement mc = measure(mb.state, kQubitC, bases[1], rand);
    return {TpOutcome{bases[0], mb.bit}, TpOutcome{bases[1], mc.bit}};
}

bool ctrl_error(RoundCase c, const TpOutcomes& outcomes) {
    switch (c) {
        case RoundCase::A: return outcomes[0].bit == 1 || outcomes[1].bit == 1;
        case RoundCase::B: return outcomes[0].bit == 1;
        case RoundCase::C: return outcomes[1].bit == 1;
        case RoundCase::D: break;
    }
    throw std::invalid_argument("ctrl_error: case D has no CTRL particle");
}

bool sift_consistent(std::array<Bit, 2> tp_pair, Bit bob, Bit charlie) {
    return tp_pair[0] == bob && tp_pair[1] == charlie;
}

void score_round(RoundRecord& record) {
    record.ctrl_error.reset();
    record.table2_mismatch.reset();
    if (record.round_case == RoundCase::D) {
        record.table2_mismatch = !sift_consistent({record.tp_bits[0].bit, record.tp_bits[1].bit},
                                                  record.bob_sift_bit.value(), record.charlie_sift_bit.value());
    } else {
        record.ctrl_error = ctrl_error(record.round_case, record.tp_bits);
    }
}

}  // namespace sqpc
