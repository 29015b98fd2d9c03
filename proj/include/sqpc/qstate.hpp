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

#ifndef SQPC_QSTATE_HPP
#define SQPC_QSTATE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sqpc/rng.hpp"

namespace sqpc {

using Amplitude = std::complex<double>;

/// Tolerances shared by the state core.
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-7;

enum class Basis : std::uint8_t {
    Z,  ///< {|0>, |1>}
    X,  ///< {|+>, |->}
};

std::string_view to_string(Basis b);

/// Bit outcome of a single-qubit projective measurement. In the X basis, 0 is
/// |+> and 1 is |->.
using Bit = std::uint8_t;
using Bits = std::vector<Bit>;

/**
 * Dense pure state over n qubits.
 *
 * Qubit 0 is the leftmost ket symbol and the most significant bit of the
 * amplitude index: |+0> has qubit 0 = |+>, qubit 1 = |0>, and amplitude index
 * b0*2^(n-1) + ... + b_{n-1}.
 */
class StateVector {
public:
    /// Validates length (power of two, >= 2), finiteness and unit norm.
    explicit StateVector(std::vector<Amplitude> amplitudes);

    /// |0...0> on `num_qubits` qubits.
    static StateVector zeros(std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_squared() const;

    /// Bit mask of qubit `q` inside an amplitude index.
    std::size_t mask(std::size_t q) const { return std::size_t{1} << (num_qubits_ - 1 - q); }

private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// Square complex matrix checked for unitarity (U^dagger U = I within 1e-9).
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(Eigen::MatrixXcd m);

    static UnitaryMatrix identity(std::size_t num_qubits);
    static UnitaryMatrix pauli_x();
    static UnitaryMatrix hadamard();
    /// Real rotation exp(-i theta Y / 2).
    static UnitaryMatrix ry(double theta);
    /// |0><0| (x) I + |1><1| (x) u; control is the leftmost qubit.
    static UnitaryMatrix controlled(const UnitaryMatrix& u);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    std::size_t num_qubits() const { return num_qubits_; }
    const Eigen::MatrixXcd& matrix() const { return m_; }

    UnitaryMatrix adjoint() const;
    /// this * rhs (rhs applied first).
    UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;
    /// Kronecker product, this on the leftmost qubits.
    UnitaryMatrix kron(const UnitaryMatrix& rhs) const;

private:
    Eigen::MatrixXcd m_;
    std::size_t num_qubits_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd m);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    Amplitude operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Eigen::MatrixXcd m_;
};

/// Single-qubit kets by label: "0", "1", "+", "-".
StateVector ket(std::string_view label);

/// Kronecker product with a's qubits first.
StateVector tensor(const StateVector& a, const StateVector& b);

/// One projective branch: probability and (when nonzero) renormalised post-state.
struct Projection {
    double probability = 0.0;
    std::vector<Amplitude> post;  ///< empty when probability is zero
};

/// Projects `qubit` onto the basis state labelled `bit`. This is the single
/// probability computation shared by the sampler and the exact oracle.
Projection project(const StateVector& state, std::size_t qubit, Basis basis, Bit bit);

/// Renormalised post-state of a nonzero projection.
StateVector post_state(const Projection& p);

struct Measurement {
    Bit bit;
    StateVector state;
};

/// Born-rule measurement by inverse CDF on the exact branch probabilities.
/// Throws std::logic_error if a zero-probability branch is selected.
Measurement measure(const StateVector& state, std::size_t qubit, Basis basis, UniformSource& rand);

/// Exact joint distribution of measuring `qubits[k]` in `bases[k]`. Outcomes
/// with probability below 1e-15 are omitted.
std::map<Bits, double> outcome_distribution(const StateVector& state,
                                            std::span<const std::size_t> qubits,
                                            std::span<const Basis> bases);

/// Applies `u` to `targets`; targets[0] is the most significant qubit of u.
StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::span<const std::size_t> targets);

/// Partial trace onto `keep` (keep[0] is the most significant index bit).
DensityMatrix reduced_density(const StateVector& state, std::span<const std::size_t> keep);

/// 1/2 * sum |eigenvalues(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Full-register unitary acting as `u` on `targets` of an n-qubit register.
UnitaryMatrix embed(const UnitaryMatrix& u, std::span<const std::size_t> targets, std::size_t num_qubits);

/// Pure-state projector |psi><psi|.
DensityMatrix projector(const StateVector& psi);

}  // namespace sqpc

#endif  // SQPC_QSTATE_HPP
