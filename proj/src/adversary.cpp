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

#include "sqpc/adversary.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace sqpc {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

namespace {

std::vector<std::size_t> all_qubits(std::size_t n) {
    std::vector<std::size_t> q(n);
    std::iota(q.begin(), q.end(), std::size_t{0});
    return q;
}

Ket ket_from_uniform(double u) {
    const auto k = static_cast<int>(u * 4.0);
    return static_cast<Ket>(std::min(k, 3));
}

StateVector flip(const StateVector& state, std::size_t qubit) {
    const std::size_t t[] = {qubit};
    return apply_unitary(state, UnitaryMatrix::pauli_x(), t);
}

}  // namespace

StateVector make_ket(Ket k) {
    switch (k) {
        case Ket::Zero: return ket("0");
        case Ket::One: return ket("1");
        case Ket::Plus: return ket("+");
        case Ket::Minus: return ket("-");
    }
    throw std::invalid_argument("make_ket: bad ket");
}

std::string_view to_string(Ket k) {
    switch (k) {
        case Ket::Zero: return "0";
        case Ket::One: return "1";
        case Ket::Plus: return "+";
        case Ket::Minus: return "-";
    }
    return "?";
}

EntangleMeasure make_entangle_measure(UnitaryMatrix u_e, UnitaryMatrix u_f, std::size_t probe_qubits) {
    if (probe_qubits == 0) {
        throw std::invalid_argument("entangle-measure: at least one probe qubit is required");
    }
    if (u_e.num_qubits() != 2 + probe_qubits || u_f.num_qubits() != 2 + probe_qubits) {
        throw std::invalid_argument("entangle-measure: U_E and U_F must act on B, C and the probe");
    }
    return EntangleMeasure{std::move(u_e), std::move(u_f), probe_qubits};
}

std::string describe(const AttackSpec& attack) {
    return std::visit(
        overloaded{
            [](const NoAttack&) -> std::string { return "none"; },
            [](const InterceptResend& a) -> std::string {
                if (const auto* p = std::get_if<FixedPair>(&a.fake)) {
                    return "intercept-resend(" + std::string(to_string(p->b)) + std::string(to_string(p->c)) + ")";
                }
                return "intercept-resend(random)";
            },
            [](const MeasureResend& a) -> std::string {
                switch (a.basis) {
                    case BasisPolicy::AlwaysZ: return "measure-resend(Z)";
                    case BasisPolicy::AlwaysX: return "measure-resend(X)";
                    case BasisPolicy::UniformRandom: return "measure-resend(random)";
                }
                return "measure-resend";
            },
            [](const EntangleMeasure& a) -> std::string {
                return "entangle-measure(probe_qubits=" + std::to_string(a.probe_qubits) + ")";
            },
            [](const DishonestBob& a) -> std::string {
                switch (a.scheme) {
                    case DishonestScheme::I: return "dishonest-bob(i)";
                    case DishonestScheme::II: return "dishonest-bob(ii)";
                    case DishonestScheme::III: return "dishonest-bob(iii)";
                }
                return "dishonest-bob";
            },
        },
        attack);
}

std::array<bool, 4> active_cases(const AttackSpec& attack) {
    if (std::holds_alternative<DishonestBob>(attack)) {
        return {false, false, true, true};
    }
    return {true, true, true, true};
}

double active_average(const std::array<double, 4>& per_case, const std::array<bool, 4>& active) {
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (active[i]) {
            sum += per_case[i];
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / n;
}

StateVector interpose_forward(const AttackSpec& attack, const StateVector& pair, UniformSource& rand) {
    if (pair.num_qubits() != 2) {
        throw std::invalid_argument("interpose_forward: expected the two-particle state");
    }
    return std::visit(
        overloaded{
            [&](const NoAttack&) { return pair; },
            [&](const DishonestBob&) { return pair; },
            [&](const InterceptResend& a) {
                const FixedPair fakes = std::visit(
                    overloaded{
                        [](const FixedPair& p) { return p; },
                        [&](const UniformRandomProduct&) {
                            const Ket b = ket_from_uniform(rand.uniform());
                            const Ket c = ket_from_uniform(rand.uniform());
                            return FixedPair{b, c};
                        },
                    },
                    a.fake);
                return tensor(make_ket(fakes.b), make_ket(fakes.c));
            },
            [&](const MeasureResend& a) {
                StateVector s = pair;
                for (std::size_t q : {kQubitB, kQubitC}) {
                    Basis basis = Basis::Z;
                    switch (a.basis) {
                        case BasisPolicy::AlwaysZ: basis = Basis::Z; break;
                        case BasisPolicy::AlwaysX: basis = Basis::X; break;
                        case BasisPolicy::UniformRandom: basis = rand.coin() ? Basis::Z : Basis::X; break;
                    }
                    s = measure(s, q, basis, rand).state;
                }
                return s;
            },
            [&](const EntangleMeasure& a) {
                const StateVector joint = tensor(pair, StateVector::zeros(a.probe_qubits));
                return apply_unitary(joint, a.u_e, all_qubits(joint.num_qubits()));
            },
        },
        attack);
}

StateVector interpose_backward(const AttackSpec& attack, const StateVector& returned) {
    if (const auto* em = std::get_if<EntangleMeasure>(&attack)) {
        if (returned.num_qubits() != 2 + em->probe_qubits) {
            throw std::invalid_argument("interpose_backward: state does not carry the probe");
        }
        return apply_unitary(returned, em->u_f, all_qubits(returned.num_qubits()));
    }
    return returned;
}

Interception dishonest_bob_interpose(DishonestScheme scheme, Link link, const StateVector& state, std::size_t qubit,
                                     UserAction bob_action, UniformSource& rand) {
    if (bob_action == UserAction::Ctrl) {
        return {state, std::nullopt};
    }
    switch (scheme) {
        case DishonestScheme::I:
        case DishonestScheme::II: {
            const Link attacked = scheme == DishonestScheme::I ? Link::Forward : Link::Backward;
            if (link != attacked) return {state, std::nullopt};
            Measurement m = measure(state, qubit, Basis::Z, rand);
            return {std::move(m.state), m.bit};
        }
        case DishonestScheme::III: {
            if (link != Link::Forward) return {state, std::nullopt};
            // Bob keeps the original and sends a fresh |0> or |1>. Discarding
            // a qubit leaves the rest as after an unread Z measurement.
            Measurement kept = measure(state, qubit, Basis::Z, rand);
            const Bit fresh = rand.coin() ? 1 : 0;
            StateVector s = kept.bit == fresh ? std::move(kept.state) : flip(kept.state, qubit);
            return {std::move(s), std::nullopt};
        }
    }
    throw std::logic_error("dishonest_bob_interpose: bad scheme");
}

Interception dishonest_bob_interpose(DishonestScheme scheme, Link link, const StateVector& particle,
                                     UserAction bob_action, UniformSource& rand) {
    if (particle.num_qubits() != 1) {
        throw std::invalid_argument("dishonest_bob_interpose: expected a single particle");
    }
    return dishonest_bob_interpose(scheme, link, particle, 0, bob_action, rand);
}

// ---------------------------------------------------------------------------
// Attack family

UnitaryMatrix controlled_rotation_ue(double theta_b, double theta_c, std::size_t probe_qubits) {
    if (probe_qubits == 0) {
        throw std::invalid_argument("controlled_rotation_ue: need at least one probe qubit");
    }
    const std::size_t n = 2 + probe_qubits;
    const std::size_t probe_b = 2;
    const std::size_t probe_c = 2 + (1 % probe_qubits);
    const std::size_t tb[] = {kQubitB, probe_b};
    const std::size_t tc[] = {kQubitC, probe_c};
    const auto rb = embed(UnitaryMatrix::controlled(UnitaryMatrix::ry(theta_b)), tb, n);
    const auto rc = embed(UnitaryMatrix::controlled(UnitaryMatrix::ry(theta_c)), tc, n);
    return rc * rb;
}

EntangleMeasure compliant_attack(const UnitaryMatrix& u_e, std::size_t probe_qubits,
                                 const std::optional<UnitaryMatrix>& probe_local) {
    UnitaryMatrix u_f = u_e.adjoint();
    if (probe_local) {
        if (probe_local->num_qubits() != probe_qubits) {
            throw std::invalid_argument("compliant_attack: probe-local unitary has the wrong size");
        }
        u_f = UnitaryMatrix::identity(2).kron(*probe_local) * u_f;
    }
    return make_entangle_measure(u_e, std::move(u_f), probe_qubits);
}

UnitaryMatrix random_unitary(std::size_t num_qubits, UniformSource& rand) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    auto gaussian = [&] {
        // Box-Muller; 1 - u keeps the log argument in (0, 1].
        const double u1 = 1.0 - rand.uniform();
        const double u2 = rand.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            g(i, j) = Amplitude(gaussian(), gaussian());
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Amplitude rjj = r(j, j);
        q.col(j) *= rjj / std::abs(rjj);
    }
    return UnitaryMatrix(std::move(q));
}

}  // namespace sqpc
