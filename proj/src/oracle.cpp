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

// Exact branch enumeration of one protocol round, plus the probe analysis of
// entangle-measure attacks.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sqpc/adversary.hpp"

namespace sqpc {

namespace {

struct Branch {
    double weight;
    StateVector state;
    std::optional<Bit> bob;
    std::optional<Bit> charlie;
};

using Branches = std::vector<Branch>;

std::vector<std::size_t> all_qubits(std::size_t n) {
    std::vector<std::size_t> q(n);
    std::iota(q.begin(), q.end(), std::size_t{0});
    return q;
}

/// Splits every branch on a projective measurement of `qubit`; `record`
/// receives the outcome.
template <class Record>
Branches split(const Branches& in, std::size_t qubit, Basis basis, Record record) {
    Branches out;
    out.reserve(in.size() * 2);
    for (const auto& br : in) {
        for (Bit bit : {Bit{0}, Bit{1}}) {
            Projection p = project(br.state, qubit, basis, bit);
            if (p.post.empty()) continue;
            Branch next{br.weight * p.probability, StateVector(std::move(p.post)), br.bob, br.charlie};
            record(next, bit);
            out.push_back(std::move(next));
        }
    }
    return out;
}

Branches split(const Branches& in, std::size_t qubit, Basis basis) {
    return split(in, qubit, basis, [](Branch&, Bit) {});
}

Branches forward_branches(const AttackSpec& attack, const StateVector& pair) {
    if (const auto* ir = std::get_if<InterceptResend>(&attack)) {
        if (const auto* p = std::get_if<FixedPair>(&ir->fake)) {
            return {Branch{1.0, tensor(make_ket(p->b), make_ket(p->c)), {}, {}}};
        }
        Branches out;
        for (int b = 0; b < 4; ++b) {
            for (int c = 0; c < 4; ++c) {
                out.push_back(Branch{1.0 / 16.0,
                                     tensor(make_ket(static_cast<Ket>(b)), make_ket(static_cast<Ket>(c))), {}, {}});
            }
        }
        return out;
    }
    if (const auto* mr = std::get_if<MeasureResend>(&attack)) {
        std::vector<std::pair<double, std::array<Basis, 2>>> choices;
        switch (mr->basis) {
            case BasisPolicy::AlwaysZ: choices = {{1.0, {Basis::Z, Basis::Z}}}; break;
            case BasisPolicy::AlwaysX: choices = {{1.0, {Basis::X, Basis::X}}}; break;
            case BasisPolicy::UniformRandom:
                for (Basis b : {Basis::Z, Basis::X}) {
                    for (Basis c : {Basis::Z, Basis::X}) choices.push_back({0.25, {b, c}});
                }
                break;
        }
        Branches out;
        for (const auto& [w, bases] : choices) {
            Branches br{Branch{w, pair, {}, {}}};
            br = split(br, kQubitB, bases[0]);
            br = split(br, kQubitC, bases[1]);
            out.insert(out.end(), std::make_move_iterator(br.begin()), std::make_move_iterator(br.end()));
        }
        return out;
    }
    if (const auto* em = std::get_if<EntangleMeasure>(&attack)) {
        const StateVector joint = tensor(pair, StateVector::zeros(em->probe_qubits));
        return {Branch{1.0, apply_unitary(joint, em->u_e, all_qubits(joint.num_qubits())), {}, {}}};
    }
    return {Branch{1.0, pair, {}, {}}};
}

Branches dishonest_forward(DishonestScheme scheme, Branches in) {
    if (scheme == DishonestScheme::I) {
        return split(in, kQubitC, Basis::Z);
    }
    if (scheme == DishonestScheme::III) {
        Branches measured = split(in, kQubitC, Basis::Z);
        Branches out;
        const std::size_t t[] = {kQubitC};
        for (auto& br : measured) {
            // The collapsed qubit is |found>; the fresh one is |0> or |1>.
            const Bit found = project(br.state, kQubitC, Basis::Z, 1).probability > 0.5 ? 1 : 0;
            for (Bit fresh : {Bit{0}, Bit{1}}) {
                StateVector s = fresh == found ? br.state : apply_unitary(br.state, UnitaryMatrix::pauli_x(), t);
                out.push_back(Branch{br.weight * 0.5, std::move(s), br.bob, br.charlie});
            }
        }
        return out;
    }
    return in;
}

double tp_error_probability(const Branch& br, RoundCase c) {
    const auto bases = tp_bases(c);
    const std::size_t qubits[] = {kQubitB, kQubitC};
    const auto dist = outcome_distribution(br.state, qubits, bases);
    double err = 0.0;
    for (const auto& [bits, p] : dist) {
        bool detected = false;
        if (c == RoundCase::D) {
            detected = !sift_consistent({bits[0], bits[1]}, br.bob.value(), br.charlie.value());
        } else {
            const TpOutcomes o{TpOutcome{bases[0], bits[0]}, TpOutcome{bases[1], bits[1]}};
            detected = ctrl_error(c, o);
        }
        if (detected) err += p;
    }
    return err;
}

}  // namespace

double exact_case_detection(const AttackSpec& attack, RoundCase c) {
    const UserAction bob = (c == RoundCase::C || c == RoundCase::D) ? UserAction::Sift : UserAction::Ctrl;
    const UserAction charlie = (c == RoundCase::B || c == RoundCase::D) ? UserAction::Sift : UserAction::Ctrl;
    const auto* dishonest = std::get_if<DishonestBob>(&attack);
    const bool bob_attacks = dishonest != nullptr && bob == UserAction::Sift;

    Branches br = forward_branches(attack, tensor(ket("+"), ket("+")));
    if (bob_attacks) br = dishonest_forward(dishonest->scheme, std::move(br));
    if (bob == UserAction::Sift) {
        br = split(br, kQubitB, Basis::Z, [](Branch& b, Bit bit) { b.bob = bit; });
    }
    if (charlie == UserAction::Sift) {
        br = split(br, kQubitC, Basis::Z, [](Branch& b, Bit bit) { b.charlie = bit; });
    }
    for (auto& b : br) b.state = interpose_backward(attack, b.state);
    if (bob_attacks && dishonest->scheme == DishonestScheme::II) {
        br = split(br, kQubitC, Basis::Z);
    }

    double total = 0.0;
    for (const auto& b : br) total += b.weight * tp_error_probability(b, c);
    return std::clamp(total, 0.0, 1.0);
}

AttackReport exact_detection(const AttackSpec& attack) {
    AttackReport r;
    for (RoundCase c : {RoundCase::A, RoundCase::B, RoundCase::C, RoundCase::D}) {
        r.per_case_detection[index_of(c)] = exact_case_detection(attack, c);
    }
    r.active = active_cases(attack);
    r.average_detection = active_average(r.per_case_detection, r.active);
    r.method = Method::Exact;
    if (const auto* em = std::get_if<EntangleMeasure>(&attack)) {
        r.probe_distinguishability = theorem1_check(*em, Theorem1Tolerances{}).distinguishability;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Probe decomposition

double ProbeDecomposition::total_norm_squared() const {
    double s = 0.0;
    for (const auto& e : e_branches) {
        for (const auto& a : e) s += std::norm(a);
    }
    return s;
}

namespace {

// Slice the amplitudes with B = i, C = j out of a 2+p qubit vector. B and C
// are the two most significant index bits.
std::vector<Amplitude> bc_slice(std::span<const Amplitude> amps, std::size_t probe_dim, std::size_t ij) {
    return {amps.begin() + static_cast<std::ptrdiff_t>(ij * probe_dim),
            amps.begin() + static_cast<std::ptrdiff_t>((ij + 1) * probe_dim)};
}

}  // namespace

ProbeDecomposition decompose_probe(const UnitaryMatrix& u_e, std::size_t probe_qubits) {
    if (probe_qubits == 0 || u_e.num_qubits() != 2 + probe_qubits) {
        throw std::invalid_argument("decompose_probe: U_E must act on B, C and the probe");
    }
    const StateVector joint = tensor(tensor(ket("+"), ket("+")), StateVector::zeros(probe_qubits));
    const StateVector psi = apply_unitary(joint, u_e, all_qubits(joint.num_qubits()));
    const std::size_t probe_dim = std::size_t{1} << probe_qubits;
    ProbeDecomposition d;
    for (std::size_t ij = 0; ij < 4; ++ij) d.e_branches[ij] = bc_slice(psi.amplitudes(), probe_dim, ij);
    return d;
}

ProbeDecomposition decompose_probe(const UnitaryMatrix& u_e, const UnitaryMatrix& u_f, std::size_t probe_qubits) {
    ProbeDecomposition d = decompose_probe(u_e, probe_qubits);
    if (u_f.num_qubits() != 2 + probe_qubits) {
        throw std::invalid_argument("decompose_probe: U_F must act on B, C and the probe");
    }
    const std::size_t probe_dim = std::size_t{1} << probe_qubits;
    const Eigen::Index dim = static_cast<Eigen::Index>(4 * probe_dim);
    std::array<std::vector<Amplitude>, 4> f;
    for (std::size_t ij = 0; ij < 4; ++ij) {
        // U_F (|ij> (x) |E_ij>) without renormalising.
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        for (std::size_t k = 0; k < probe_dim; ++k) {
            v(static_cast<Eigen::Index>(ij * probe_dim + k)) = d.e_branches[ij][k];
        }
        const Eigen::VectorXcd out = u_f.matrix() * v;
        double leaked = 0.0;
        for (Eigen::Index a = 0; a < dim; ++a) {
            if (static_cast<std::size_t>(a) / probe_dim != ij) leaked += std::norm(out(a));
        }
        if (leaked > kNormTolerance) {
            return d;
        }
        f[ij].resize(probe_dim);
        for (std::size_t k = 0; k < probe_dim; ++k) f[ij][k] = out(static_cast<Eigen::Index>(ij * probe_dim + k));
    }
    d.f_branches = std::move(f);
    return d;
}

// ---------------------------------------------------------------------------
// Probe distinguishability

Theorem1Result theorem1_check(const EntangleMeasure& attack, const Theorem1Tolerances& tol) {
    Theorem1Result result;
    result.detection.per_case_detection = {};
    for (RoundCase c : {RoundCase::A, RoundCase::B, RoundCase::C, RoundCase::D}) {
        result.detection.per_case_detection[index_of(c)] = exact_case_detection(attack, c);
    }
    result.detection.average_detection =
        active_average(result.detection.per_case_detection, result.detection.active);

    const StateVector joint = tensor(tensor(ket("+"), ket("+")), StateVector::zeros(attack.probe_qubits));
    const StateVector psi = apply_unitary(joint, attack.u_e, all_qubits(joint.num_qubits()));
    std::vector<std::size_t> probe(attack.probe_qubits);
    std::iota(probe.begin(), probe.end(), std::size_t{2});

    std::array<std::optional<DensityMatrix>, 4> conditional;
    for (Bit x1 : {Bit{0}, Bit{1}}) {
        Projection pb = project(psi, kQubitB, Basis::Z, x1);
        if (pb.post.empty()) continue;
        for (Bit x2 : {Bit{0}, Bit{1}}) {
            Projection pc = project(StateVector(pb.post), kQubitC, Basis::Z, x2);
            if (pc.post.empty()) continue;
            const StateVector after = apply_unitary(StateVector(std::move(pc.post)), attack.u_f,
                                                    all_qubits(joint.num_qubits()));
            conditional[2 * x1 + x2] = reduced_density(after, probe);
        }
    }

    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            if (!conditional[a] || !conditional[b]) continue;
            const double d = trace_distance(*conditional[a], *conditional[b]);
            result.distinguishability = std::max(result.distinguishability, d);
            if (a / 2 == b / 2) {
                result.charlie_distinguishability = std::max(result.charlie_distinguishability, d);
            }
        }
    }
    result.detection.probe_distinguishability = result.distinguishability;
    result.violated =
        result.detection.average_detection <= tol.detection && result.distinguishability > tol.distinguishability;
    return result;
}

Theorem1Result theorem1_check(const EntangleMeasure& attack, double eps) {
    return theorem1_check(attack, Theorem1Tolerances{eps, eps});
}

}  // namespace sqpc
