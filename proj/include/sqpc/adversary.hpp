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

#ifndef SQPC_ADVERSARY_HPP
#define SQPC_ADVERSARY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqpc/parties.hpp"
#include "sqpc/qstate.hpp"

namespace sqpc {

/// The four single-qubit states an intercept-resend attacker may forge.
enum class Ket : std::uint8_t { Zero, One, Plus, Minus };

StateVector make_ket(Ket k);
std::string_view to_string(Ket k);

struct FixedPair {
    Ket b;
    Ket c;
};
/// Each particle independently uniform over {|0>, |1>, |+>, |->}.
struct UniformRandomProduct {};
using FakeStatePolicy = std::variant<FixedPair, UniformRandomProduct>;

enum class BasisPolicy : std::uint8_t {
    AlwaysZ,
    AlwaysX,
    UniformRandom,  ///< independent fair basis choice per particle per round
};

struct NoAttack {};

struct InterceptResend {
    FakeStatePolicy fake;
};

struct MeasureResend {
    BasisPolicy basis;
};

/// U_E on the way out, U_F on the way back, over B (x) C (x) probe.
/// Construct through make_entangle_measure so the dimensions are checked.
struct EntangleMeasure {
    UnitaryMatrix u_e;
    UnitaryMatrix u_f;
    std::size_t probe_qubits;
};

EntangleMeasure make_entangle_measure(UnitaryMatrix u_e, UnitaryMatrix u_f, std::size_t probe_qubits);

enum class DishonestScheme : std::uint8_t {
    I,    ///< Z-measure Charlie's forward particle, forward the collapsed state
    II,   ///< Z-measure Charlie's returning particle
    III,  ///< replace Charlie's forward particle with a fresh random Z ket
};

struct DishonestBob {
    DishonestScheme scheme;
};

using AttackSpec = std::variant<NoAttack, InterceptResend, MeasureResend, EntangleMeasure, DishonestBob>;

std::string describe(const AttackSpec& attack);

/// Cases in which the attacker can act: all four for an outside attacker,
/// C and D for a dishonest Bob (he only interferes when he SIFTs).
std::array<bool, 4> active_cases(const AttackSpec& attack);

/// Outside attack on the TP -> users leg. `pair` is the 2-qubit |++>; the
/// result carries probe qubits for EntangleMeasure. DishonestBob is not an
/// outside attack and passes through.
StateVector interpose_forward(const AttackSpec& attack, const StateVector& pair, UniformSource& rand);

/// Outside attack on the users -> TP leg (U_F for EntangleMeasure, identity
/// otherwise).
StateVector interpose_backward(const AttackSpec& attack, const StateVector& returned);

enum class Link : std::uint8_t {
    Forward,   ///< TP -> Charlie
    Backward,  ///< Charlie -> TP
};

struct Interception {
    StateVector state;
    std::optional<Bit> bob_bit;  ///< what Bob learned, if he measured
};

/// Dishonest Bob acting on Charlie's particle (`qubit` of `state`).
Interception dishonest_bob_interpose(DishonestScheme scheme, Link link, const StateVector& state, std::size_t qubit,
                                     UserAction bob_action, UniformSource& rand);

/// Single-particle form.
Interception dishonest_bob_interpose(DishonestScheme scheme, Link link, const StateVector& particle,
                                     UserAction bob_action, UniformSource& rand);

enum class Method : std::uint8_t { Exact, MonteCarlo };

struct AttackReport {
    std::array<double, 4> per_case_detection{};
    std::array<bool, 4> active{true, true, true, true};
    double average_detection = 0.0;  ///< mean over active cases
    std::optional<double> probe_distinguishability;
    Method method = Method::Exact;
    std::uint64_t samples = 0;  ///< Monte Carlo only
};

/// Mean of the active per-case values.
double active_average(const std::array<double, 4>& per_case, const std::array<bool, 4>& active);

/**
 * Exact per-case detection probabilities by enumerating every branch: the
 * attacker's random choices and outcomes, the users' SIFT outcomes, and TP's
 * outcomes. Detection in cases A-C is a CTRL error; in case D it is a Table 2
 * mismatch, scored as though every case-D round were a TEST pair.
 */
AttackReport exact_detection(const AttackSpec& attack);

/// Exact probability of a detectable error in one case, for fixed actions.
double exact_case_detection(const AttackSpec& attack, RoundCase c);

/// The probe branches of U_E(|+>|+>|0>_E) = sum_ij |ij> |E_ij>, and, when U_F
/// leaves every |ij>|E_ij> in the form |ij>|F_ij>, the F branches too.
struct ProbeDecomposition {
    std::array<std::vector<Amplitude>, 4> e_branches;  ///< index 2*i + j
    std::optional<std::array<std::vector<Amplitude>, 4>> f_branches;

    double total_norm_squared() const;
};

ProbeDecomposition decompose_probe(const UnitaryMatrix& u_e, std::size_t probe_qubits);
ProbeDecomposition decompose_probe(const UnitaryMatrix& u_e, const UnitaryMatrix& u_f, std::size_t probe_qubits);

struct Theorem1Tolerances {
    double detection = 1e-9;
    double distinguishability = 1e-6;
};

struct Theorem1Result {
    AttackReport detection;
    /// Max trace distance between the probe states conditioned on the four
    /// case-D outcome pairs.
    double distinguishability = 0.0;
    /// Max trace distance between probe states for Charlie's two outcomes with
    /// Bob's outcome fixed (what a dishonest Bob holding the probe could learn).
    double charlie_distinguishability = 0.0;
    bool violated = false;
};

Theorem1Result theorem1_check(const EntangleMeasure& attack, const Theorem1Tolerances& tol);
Theorem1Result theorem1_check(const EntangleMeasure& attack, double eps);

// ---------------------------------------------------------------------------
// Parametrised entangle-measure family

/// Controlled Ry(theta_b) from B onto probe qubit 0 and controlled
/// Ry(theta_c) from C onto probe qubit (1 mod probe_qubits).
UnitaryMatrix controlled_rotation_ue(double theta_b, double theta_c, std::size_t probe_qubits);

/// U_F = (I_BC (x) v) U_E^dagger, which returns every |ij>|E_ij> to
/// |ij> (x) v|0>/2 and so meets the zero-error conditions with equal F
/// branches. `v` defaults to identity. Only meaningful when u_e leaves the
/// B, C computational basis alone (controlled from B and C); otherwise the
/// users' SIFT measurements stop U_F from undoing it.
EntangleMeasure compliant_attack(const UnitaryMatrix& u_e, std::size_t probe_qubits,
                                 const std::optional<UnitaryMatrix>& probe_local = std::nullopt);

/// Haar-random unitary on `num_qubits` qubits.
UnitaryMatrix random_unitary(std::size_t num_qubits, UniformSource& rand);

}  // namespace sqpc

#endif  // SQPC_ADVERSARY_HPP
