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

#include "sqpc/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sqpc {

namespace {

// Branches below this probability are treated as impossible.
constexpr double kZeroBranch = 1e-15;

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::size_t qubits_for_dim(std::size_t dim, const char* what) {
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument(std::string(what) + ": dimension must be a power of two >= 2");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

void check_distinct_in_range(std::span<const std::size_t> qubits, std::size_t n, const char* what) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] >= n) {
            throw std::invalid_argument(std::string(what) + ": qubit index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument(std::string(what) + ": repeated qubit index");
            }
        }
    }
}

}  // namespace

std::string_view to_string(Basis b) {
    return b == Basis::Z ? "Z" : "X";
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<Amplitude> amplitudes)
    : num_qubits_(qubits_for_dim(amplitudes.size(), "StateVector")), amplitudes_(std::move(amplitudes)) {
    for (const auto& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("StateVector: non-finite amplitude");
        }
    }
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("StateVector: amplitudes are not normalised");
    }
}

StateVector StateVector::zeros(std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > 30) {
        throw std::invalid_argument("StateVector::zeros: unsupported qubit count");
    }
    std::vector<Amplitude> a(std::size_t{1} << num_qubits);
    a[0] = 1.0;
    return StateVector(std::move(a));
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw std::invalid_argument("UnitaryMatrix: not square");
    }
    num_qubits_ = qubits_for_dim(static_cast<std::size_t>(m_.rows()), "UnitaryMatrix");
    const Eigen::MatrixXcd gram = m_.adjoint() * m_;
    const auto id = Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
    if ((gram - id).cwiseAbs().maxCoeff() > kNormTolerance) {
        throw std::invalid_argument("UnitaryMatrix: matrix is not unitary");
    }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t num_qubits) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    return UnitaryMatrix(Eigen::MatrixXcd::Identity(d, d));
}

UnitaryMatrix UnitaryMatrix::pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::hadamard() {
    Eigen::MatrixXcd m(2, 2);
    m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::ry(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Eigen::MatrixXcd m(2, 2);
    m << c, -s, s, c;
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::controlled(const UnitaryMatrix& u) {
    const auto d = static_cast<Eigen::Index>(u.dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d).setIdentity();
    m.bottomRightCorner(d, d) = u.matrix();
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return UnitaryMatrix(m_.adjoint());
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
    if (dim() != rhs.dim()) {
        throw std::invalid_argument("UnitaryMatrix product: dimension mismatch");
    }
    return UnitaryMatrix(m_ * rhs.m_);
}

UnitaryMatrix UnitaryMatrix::kron(const UnitaryMatrix& rhs) const {
    const auto ra = m_.rows();
    const auto rb = rhs.m_.rows();
    Eigen::MatrixXcd out(ra * rb, ra * rb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ra; ++j) {
            out.block(i * rb, j * rb, rb, rb) = m_(i, j) * rhs.m_;
        }
    }
    return UnitaryMatrix(std::move(out));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw std::invalid_argument("DensityMatrix: not square");
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(m_.trace() - Amplitude(1.0)) > kNormTolerance) {
        throw std::invalid_argument("DensityMatrix: trace is not one");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTolerance) {
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }
}

// ---------------------------------------------------------------------------
// Operations

StateVector ket(std::string_view label) {
    if (label == "0") return StateVector({1.0, 0.0});
    if (label == "1") return StateVector({0.0, 1.0});
    if (label == "+") return StateVector({kInvSqrt2, kInvSqrt2});
    if (label == "-") return StateVector({kInvSqrt2, -kInvSqrt2});
    throw std::invalid_argument("ket: unknown label '" + std::string(label) + "'");
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<Amplitude> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return StateVector(std::move(out));
}

Projection project(const StateVector& state, std::size_t qubit, Basis basis, Bit bit) {
    if (qubit >= state.num_qubits()) {
        throw std::invalid_argument("project: qubit index out of range");
    }
    if (bit > 1) {
        throw std::invalid_argument("project: bit must be 0 or 1");
    }
    const std::size_t m = state.mask(qubit);
    const auto amps = state.amplitudes();
    std::vector<Amplitude> post(amps.size());
    double prob = 0.0;

    if (basis == Basis::Z) {
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (((i & m) != 0) == (bit == 1)) {
                post[i] = amps[i];
                prob += std::norm(amps[i]);
            }
        }
    } else {
        const double sign = bit == 0 ? 1.0 : -1.0;
        for (std::size_t i0 = 0; i0 < amps.size(); ++i0) {
            if ((i0 & m) != 0) continue;
            const std::size_t i1 = i0 | m;
            const Amplitude c = (amps[i0] + sign * amps[i1]) * kInvSqrt2;
            prob += std::norm(c);
            post[i0] = c * kInvSqrt2;
            post[i1] = sign * c * kInvSqrt2;
        }
    }

    if (prob < kZeroBranch) {
        return {0.0, {}};
    }
    const double scale = 1.0 / std::sqrt(prob);
    for (auto& a : post) a *= scale;
    return {std::min(prob, 1.0), std::move(post)};
}

StateVector post_state(const Projection& p) {
    if (p.post.empty()) {
        throw std::logic_error("post_state: zero-probability branch");
    }
    return StateVector(p.post);
}

Measurement measure(const StateVector& state, std::size_t qubit, Basis basis, UniformSource& rand) {
    Projection zero = project(state, qubit, basis, 0);
    const double u = rand.uniform();
    if (u < zero.probability) {
        return {0, post_state(zero)};
    }
    Projection one = project(state, qubit, basis, 1);
    if (one.post.empty()) {
        throw std::logic_error("measure: zero-probability branch selected");
    }
    return {1, StateVector(std::move(one.post))};
}

std::map<Bits, double> outcome_distribution(const StateVector& state,
                                            std::span<const std::size_t> qubits,
                                            std::span<const Basis> bases) {
    if (qubits.size() != bases.size()) {
        throw std::invalid_argument("outcome_distribution: qubit and basis lists differ in length");
    }
    check_distinct_in_range(qubits, state.num_qubits(), "outcome_distribution");

    StateVector rotated = state;
    const auto h = UnitaryMatrix::hadamard();
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        if (bases[k] == Basis::X) {
            const std::size_t t[] = {qubits[k]};
            rotated = apply_unitary(rotated, h, t);
        }
    }

    std::map<Bits, double> dist;
    Bits key(qubits.size());
    const auto amps = rotated.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            key[k] = (i & rotated.mask(qubits[k])) ? 1 : 0;
        }
        dist[key] += p;
    }
    std::erase_if(dist, [](const auto& kv) { return kv.second < kZeroBranch; });
    return dist;
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::span<const std::size_t> targets) {
    check_distinct_in_range(targets, state.num_qubits(), "apply_unitary");
    if (targets.empty() || u.dim() != (std::size_t{1} << targets.size())) {
        throw std::invalid_argument("apply_unitary: unitary dimension does not match target count");
    }
    const std::size_t k = targets.size();
    const std::size_t sub = u.dim();
    std::vector<std::size_t> offsets(sub);
    std::size_t target_mask = 0;
    for (std::size_t s = 0; s < sub; ++s) {
        std::size_t off = 0;
        for (std::size_t t = 0; t < k; ++t) {
            if (s & (std::size_t{1} << (k - 1 - t))) {
                off |= state.mask(targets[t]);
            }
        }
        offsets[s] = off;
    }
    for (auto t : targets) target_mask |= state.mask(t);

    const auto in = state.amplitudes();
    const auto& m = u.matrix();
    std::vector<Amplitude> out(in.size());
    std::vector<Amplitude> gathered(sub);
    for (std::size_t base = 0; base < in.size(); ++base) {
        if (base & target_mask) continue;
        for (std::size_t c = 0; c < sub; ++c) gathered[c] = in[base | offsets[c]];
        for (std::size_t r = 0; r < sub; ++r) {
            Amplitude acc = 0.0;
            for (std::size_t c = 0; c < sub; ++c) {
                acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * gathered[c];
            }
            out[base | offsets[r]] = acc;
        }
    }
    return StateVector(std::move(out));
}

DensityMatrix reduced_density(const StateVector& state, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("reduced_density: keep list is empty");
    }
    check_distinct_in_range(keep, state.num_qubits(), "reduced_density");
    const std::size_t n = state.num_qubits();
    const std::size_t k = keep.size();

    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
    }

    // amplitudes arranged as (kept index) x (traced index); rho = M M^dagger
    Eigen::MatrixXcd grid = Eigen::MatrixXcd::Zero(Eigen::Index{1} << k, Eigen::Index{1} << traced.size());
    for (std::size_t i = 0; i < state.dim(); ++i) {
        std::size_t row = 0;
        for (auto q : keep) row = (row << 1) | ((i & state.mask(q)) ? 1 : 0);
        std::size_t col = 0;
        for (auto q : traced) col = (col << 1) | ((i & state.mask(q)) ? 1 : 0);
        grid(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = state[i];
    }
    Eigen::MatrixXcd rho = grid * grid.adjoint();
    // Enforce exact Hermiticity against rounding.
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(std::move(rho));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    Eigen::MatrixXcd diff = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
    const double d = 0.5 * es.eigenvalues().cwiseAbs().sum();
    return std::clamp(d, 0.0, 1.0);
}

UnitaryMatrix embed(const UnitaryMatrix& u, std::span<const std::size_t> targets, std::size_t num_qubits) {
    const std::size_t d = std::size_t{1} << num_qubits;
    Eigen::MatrixXcd full(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t col = 0; col < d; ++col) {
        std::vector<Amplitude> basis(d);
        basis[col] = 1.0;
        const StateVector image = apply_unitary(StateVector(std::move(basis)), u, targets);
        for (std::size_t row = 0; row < d; ++row) {
            full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = image[row];
        }
    }
    return UnitaryMatrix(std::move(full));
}

DensityMatrix projector(const StateVector& psi) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
    return DensityMatrix(v * v.adjoint());
}

}  // namespace sqpc
