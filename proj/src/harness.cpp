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

#include "sqpc/harness.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

#include "sqpc/protocol.hpp"
#include "sqpc/sqkd.hpp"

namespace sqpc {

void Tally::merge(const Tally& other) {
    if (other.size() != size()) {
        throw std::invalid_argument("Tally::merge: metric count mismatch");
    }
    for (std::size_t m = 0; m < size(); ++m) {
        count_[m] += other.count_[m];
        sum_[m] += other.sum_[m];
        sum_sq_[m] += other.sum_sq_[m];
    }
}

std::vector<StatSummary> summarize(const Workflow& wf, const Tally& tally) {
    std::vector<StatSummary> out;
    for (std::size_t m = 0; m < wf.metrics.size(); ++m) {
        StatSummary s;
        s.metric = wf.metrics[m];
        s.samples = tally.count(m);
        if (m < wf.exact.size()) s.exact_value = wf.exact[m];
        if (s.samples > 0) {
            const double n = static_cast<double>(s.samples);
            s.estimate = tally.sum(m) / n;
            const bool proportion = m < wf.proportion.size() && wf.proportion[m];
            if (proportion) {
                s.std_error = std::sqrt(std::max(0.0, s.estimate * (1.0 - s.estimate)) / n);
            } else if (s.samples > 1) {
                const double var = std::max(0.0, (tally.sum_sq(m) - n * s.estimate * s.estimate) / (n - 1.0));
                s.std_error = std::sqrt(var / n);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<StatSummary> monte_carlo_serial(const Workflow& wf, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("monte_carlo: samples must be at least 1");
    Tally tally(wf.metrics.size());
    for (std::uint64_t i = 0; i < samples; ++i) {
        CounterRng rng(seed, Stream::Samples, i);
        wf.sample(i, rng, tally);
    }
    return summarize(wf, tally);
}

std::vector<StatSummary> monte_carlo_parallel(const Workflow& wf, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("monte_carlo: samples must be at least 1");
    const std::uint64_t blocks = (samples + kBlockSamples - 1) / kBlockSamples;
    std::vector<Tally> partial(blocks, Tally(wf.metrics.size()));
    std::exception_ptr error;
    const auto nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        try {
            const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlockSamples;
            const std::uint64_t end = std::min(samples, begin + kBlockSamples);
            Tally& t = partial[static_cast<std::size_t>(b)];
            for (std::uint64_t i = begin; i < end; ++i) {
                CounterRng rng(seed, Stream::Samples, i);
                wf.sample(i, rng, t);
            }
        } catch (...) {
#pragma omp critical(sqpc_mc_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    Tally total(wf.metrics.size());
    for (const auto& t : partial) total.merge(t);
    return summarize(wf, total);
}

std::vector<StatSummary> monte_carlo(const Workflow& wf, std::uint64_t samples, std::uint64_t seed, Execution exec) {
    return exec == Execution::Serial ? monte_carlo_serial(wf, samples, seed)
                                     : monte_carlo_parallel(wf, samples, seed);
}

bool within_sigma(const StatSummary& s, double k) {
    if (!s.exact_value) return true;
    if (s.samples == 0) return false;
    const double p = *s.exact_value;
    const double sigma = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(s.samples));
    return std::abs(s.estimate - p) <= k * sigma + 1e-12;
}

// ---------------------------------------------------------------------------
// Workflows

Workflow detection_workflow(const AttackSpec& attack) {
    Workflow wf;
    wf.metrics = {"case_a", "case_b", "case_c", "case_d"};
    wf.proportion = {true, true, true, true};
    const AttackReport exact = exact_detection(attack);
    for (double p : exact.per_case_detection) wf.exact.emplace_back(p);
    wf.sample = [attack](std::uint64_t index, CounterRng& rng, Tally& tally) {
        const UserAction bob = rng.coin() ? UserAction::Sift : UserAction::Ctrl;
        const UserAction charlie = rng.coin() ? UserAction::Sift : UserAction::Ctrl;
        const RoundRecord r = simulate_round(attack, bob, charlie, rng, index);
        const bool detected = r.round_case == RoundCase::D ? *r.table2_mismatch : *r.ctrl_error;
        tally.add(index_of(r.round_case), detected ? 1.0 : 0.0);
    };
    return wf;
}

AttackReport monte_carlo_detection(const AttackSpec& attack, std::uint64_t samples, std::uint64_t seed,
                                   Execution exec) {
    const auto stats = monte_carlo(detection_workflow(attack), samples, seed, exec);
    AttackReport r;
    for (std::size_t c = 0; c < 4; ++c) r.per_case_detection[c] = stats[c].estimate;
    r.active = active_cases(attack);
    r.average_detection = active_average(r.per_case_detection, r.active);
    r.method = Method::MonteCarlo;
    r.samples = samples;
    return r;
}

Workflow sqkd_workflow() {
    Workflow wf;
    wf.metrics = {"p0", "p1", "p2", "sift_agreement", "tp_guess", "ctrl_failure"};
    wf.proportion = {true, true, true, true, true, true};
    wf.exact = {0.25, 0.5, 0.25, 1.0, 0.5, 0.0};
    wf.sample = [](std::uint64_t index, CounterRng& rng, Tally& tally) {
        const SqkdRound r = sqkd_round(rng, index);
        for (std::size_t k = 0; k < 3; ++k) tally.add(k, static_cast<std::size_t>(r.cls) == k ? 1.0 : 0.0);
        const SqkdCheck check = classify_and_check(r);
        if (check.sift_bits) {
            tally.add(3, check.sift_bits->first == check.sift_bits->second ? 1.0 : 0.0);
            const SqkdRound single[] = {r};
            tally.add(4, tp_secrecy_probe(single));
        }
        if (check.ctrl_pass) tally.add(5, *check.ctrl_pass ? 0.0 : 1.0);
    };
    return wf;
}

Workflow case_balance_workflow() {
    Workflow wf;
    wf.metrics = {"case_a", "case_b", "case_c", "case_d"};
    wf.proportion = {true, true, true, true};
    wf.exact = {0.25, 0.25, 0.25, 0.25};
    wf.sample = [](std::uint64_t, CounterRng& rng, Tally& tally) {
        const UserAction bob = rng.coin() ? UserAction::Sift : UserAction::Ctrl;
        const UserAction charlie = rng.coin() ? UserAction::Sift : UserAction::Ctrl;
        const RoundCase c = classify_case(bob, charlie);
        for (std::size_t k = 0; k < 4; ++k) tally.add(k, index_of(c) == k ? 1.0 : 0.0);
    };
    return wf;
}

// ---------------------------------------------------------------------------
// Theorem 1 sweep

namespace {

SweepPoint evaluate_point(std::size_t grid, std::size_t probe_qubits, std::uint64_t seed,
                          const Theorem1Tolerances& tol, std::size_t index) {
    static const char* kReturns[] = {"identity", "compliant", "compliant-random-probe"};
    const std::size_t variant = index % 3;
    const std::size_t cell = index / 3;
    const double step = grid > 1 ? std::numbers::pi / static_cast<double>(grid - 1) : 0.0;

    SweepPoint p;
    p.theta_b = step * static_cast<double>(cell / grid);
    p.theta_c = step * static_cast<double>(cell % grid);
    p.return_unitary = kReturns[variant];

    const UnitaryMatrix u_e = controlled_rotation_ue(p.theta_b, p.theta_c, probe_qubits);
    std::optional<EntangleMeasure> attack;
    if (variant == 0) {
        attack = make_entangle_measure(u_e, UnitaryMatrix::identity(2 + probe_qubits), probe_qubits);
    } else if (variant == 1) {
        attack = compliant_attack(u_e, probe_qubits);
    } else {
        CounterRng rng(seed, Stream::Sweep, index);
        attack = compliant_attack(u_e, probe_qubits, random_unitary(probe_qubits, rng));
    }
    p.result = theorem1_check(*attack, tol);
    return p;
}

}  // namespace

SweepResult theorem1_sweep(std::size_t grid, std::size_t probe_qubits, std::uint64_t seed,
                           const Theorem1Tolerances& tol, Execution exec) {
    if (grid == 0) throw std::invalid_argument("theorem1_sweep: grid must be at least 1");
    if (probe_qubits == 0 || probe_qubits > 6) {
        throw std::invalid_argument("theorem1_sweep: probe qubits must lie in [1, 6]");
    }
    SweepResult out;
    out.grid = grid;
    out.probe_qubits = probe_qubits;
    const std::size_t n = grid * grid * 3;
    out.points.resize(n);

    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < n; ++i) out.points[i] = evaluate_point(grid, probe_qubits, seed, tol, i);
    } else {
        std::exception_ptr error;
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                out.points[static_cast<std::size_t>(i)] =
                    evaluate_point(grid, probe_qubits, seed, tol, static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(sqpc_sweep_error)
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    }
    for (const auto& p : out.points) {
        if (p.result.violated) out.all_consistent = false;
    }
    return out;
}

}  // namespace sqpc
