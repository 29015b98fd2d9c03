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

#ifndef SQPC_TESTS_DM_ORACLE_HPP
#define SQPC_TESTS_DM_ORACLE_HPP

// Test-side reference model. One round is evolved as a density matrix over
// B, C and an optional probe, with the users' SIFT outcomes kept as explicit
// unnormalized branches. Shares nothing with the library beyond Eigen.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace dm {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// 0, 1, +, -
inline Vec ket(int which) {
    Vec v(2);
    switch (which) {
        case 0: v << 1.0, 0.0; break;
        case 1: v << 0.0, 1.0; break;
        case 2: v << kInvSqrt2, kInvSqrt2; break;
        default: v << kInvSqrt2, -kInvSqrt2; break;
    }
    return v;
}

inline Mat proj(const Vec& v) { return v * v.adjoint(); }

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// single-qubit op on qubit q of n (qubit 0 leftmost)
inline Mat lift(const Mat& op, std::size_t q, std::size_t n) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t k = 0; k < n; ++k) out = kron(out, k == q ? op : Mat::Identity(2, 2));
    return out;
}

// projector for `bit` of qubit q in Z (x=false) or X (x=true)
inline Mat outcome_projector(std::size_t q, bool x, int bit, std::size_t n) {
    return lift(proj(ket(x ? 2 + bit : bit)), q, n);
}

inline Mat dephase(const Mat& rho, std::size_t q, bool x, std::size_t n) {
    const Mat p0 = outcome_projector(q, x, 0, n);
    const Mat p1 = outcome_projector(q, x, 1, n);
    return p0 * rho * p0 + p1 * rho * p1;
}

// replace qubit q by I/2
inline Mat scramble(const Mat& rho, std::size_t q, std::size_t n) {
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Mat k = Mat::Zero(2, 2);
            k(i, j) = kInvSqrt2;
            const Mat K = lift(k, q, n);
            out += K * rho * K.adjoint();
        }
    return out;
}

struct Attack {
    enum Kind { None, FakePair, FakeRandom, MeasureZ, MeasureX, MeasureRandom, Unitary, BobI, BobII, BobIII };
    Kind kind = None;
    std::array<int, 2> fake{2, 2};
    Mat u_e;
    Mat u_f;
    std::size_t probe = 0;
};

// cases: 0=A (ctrl,ctrl) 1=B (ctrl,sift) 2=C (sift,ctrl) 3=D (sift,sift)
inline double detection(const Attack& a, int c) {
    const bool bob_sift = c == 2 || c == 3;
    const bool charlie_sift = c == 1 || c == 3;
    const std::size_t n = 2 + (a.kind == Attack::Unitary ? a.probe : 0);

    Vec plus2 = kron(ket(2), ket(2));
    Vec init = plus2;
    if (n > 2) {
        Vec probe0 = Vec::Zero(Eigen::Index{1} << (n - 2));
        probe0(0) = 1.0;
        init = kron(plus2, probe0);
    }
    Mat rho = proj(init);

    switch (a.kind) {
        case Attack::FakePair: rho = proj(kron(ket(a.fake[0]), ket(a.fake[1]))); break;
        case Attack::FakeRandom: {
            Mat acc = Mat::Zero(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) acc += proj(kron(ket(i), ket(j))) / 16.0;
            rho = acc;
            break;
        }
        case Attack::MeasureZ: rho = dephase(dephase(rho, 0, false, n), 1, false, n); break;
        case Attack::MeasureX: rho = dephase(dephase(rho, 0, true, n), 1, true, n); break;
        case Attack::MeasureRandom: {
            Mat acc = Mat::Zero(rho.rows(), rho.cols());
            for (int xb = 0; xb < 2; ++xb)
                for (int xc = 0; xc < 2; ++xc) acc += 0.25 * dephase(dephase(rho, 0, xb, n), 1, xc, n);
            rho = acc;
            break;
        }
        case Attack::Unitary: rho = a.u_e * rho * a.u_e.adjoint(); break;
        default: break;
    }
    if (bob_sift && a.kind == Attack::BobI) rho = dephase(rho, 1, false, n);
    if (bob_sift && a.kind == Attack::BobIII) rho = scramble(rho, 1, n);

    double err = 0.0;
    for (int b = 0; b < (bob_sift ? 2 : 1); ++b) {
        for (int ch = 0; ch < (charlie_sift ? 2 : 1); ++ch) {
            Mat r = rho;
            if (bob_sift) {
                const Mat p = outcome_projector(0, false, b, n);
                r = p * r * p;
            }
            if (charlie_sift) {
                const Mat p = outcome_projector(1, false, ch, n);
                r = p * r * p;
            }
            if (a.kind == Attack::Unitary) r = a.u_f * r * a.u_f.adjoint();
            if (bob_sift && a.kind == Attack::BobII) r = dephase(r, 1, false, n);

            const double w = r.trace().real();
            if (c == 3) {
                const Mat ok = outcome_projector(0, false, b, n) * outcome_projector(1, false, ch, n);
                err += w - (ok * r).trace().real();
            } else {
                Mat good = Mat::Identity(r.rows(), r.cols());
                if (!bob_sift) good = good * outcome_projector(0, true, 0, n);
                if (!charlie_sift) good = good * outcome_projector(1, true, 0, n);
                err += w - (good * r).trace().real();
            }
        }
    }
    return err;
}

/// Trace distance of two 2x2 density matrices in closed form.
inline double trace_distance_2x2(const Mat& a, const Mat& b) {
    const Mat d = a - b;
    const double half_diff = 0.5 * (d(0, 0).real() - d(1, 1).real());
    const double tr = 0.5 * (d(0, 0).real() + d(1, 1).real());
    const double r = std::sqrt(half_diff * half_diff + std::norm(d(0, 1)));
    return 0.5 * (std::abs(tr + r) + std::abs(tr - r));
}

}  // namespace dm

#endif  // SQPC_TESTS_DM_ORACLE_HPP
