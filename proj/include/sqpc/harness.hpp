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

#ifndef SQPC_HARNESS_HPP
#define SQPC_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqpc/adversary.hpp"
#include "sqpc/execution.hpp"
#include "sqpc/rng.hpp"

namespace sqpc {

struct StatSummary {
    std::string metric;
    double estimate = 0.0;
    /// sqrt(p(1-p)/n) for proportions, s/sqrt(n) otherwise; 0 when n < 2.
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::optional<double> exact_value;
};

/// Per-metric running sums. A sample may contribute to any subset of metrics.
class Tally {
public:
    explicit Tally(std::size_t metrics = 0) : count_(metrics), sum_(metrics), sum_sq_(metrics) {}

    void add(std::size_t metric, double value) {
        ++count_[metric];
        sum_[metric] += value;
        sum_sq_[metric] += value * value;
    }
    void merge(const Tally& other);

    std::size_t size() const { return count_.size(); }
    std::uint64_t count(std::size_t m) const { return count_[m]; }
    double sum(std::size_t m) const { return sum_[m]; }
    double sum_sq(std::size_t m) const { return sum_sq_[m]; }

private:
    std::vector<std::uint64_t> count_;
    std::vector<double> sum_;
    std::vector<double> sum_sq_;
};

struct Workflow {
    std::vector<std::string> metrics;
    std::vector<bool> proportion;  ///< per metric; 0/1 observations
    std::vector<std::optional<double>> exact;  ///< per metric, when an oracle exists
    /// Observes sample `index` using its own generator.
    std::function<void(std::uint64_t index, CounterRng& rng, Tally& tally)> sample;
};

/// Samples per reduction block. Blocks are reduced in index order, so the
/// result does not depend on the number of threads.
inline constexpr std::uint64_t kBlockSamples = 1024;

/// Sample i draws from CounterRng(seed, Stream::Samples, i).
std::vector<StatSummary> monte_carlo(const Workflow& wf, std::uint64_t samples, std::uint64_t seed,
                                     Execution exec = Execution::Parallel);
std::vector<StatSummary> monte_carlo_serial(const Workflow& wf, std::uint64_t samples, std::uint64_t seed);
std::vector<StatSummary> monte_carlo_parallel(const Workflow& wf, std::uint64_t samples, std::uint64_t seed);

std::vector<StatSummary> summarize(const Workflow& wf, const Tally& tally);

/// |estimate - exact| <= k * sqrt(p(1-p)/n) with p the exact value.
bool within_sigma(const StatSummary& s, double k = 4.0);

// ---------------------------------------------------------------------------
// Workflows

/// One protocol round per sample with uniformly random actions. Metrics
/// "case_a".."case_d" observe detection in rounds of that case; exact values
/// come from exact_detection.
Workflow detection_workflow(const AttackSpec& attack);

/// Monte Carlo AttackReport built from a detection_workflow run.
AttackReport monte_carlo_detection(const AttackSpec& attack, std::uint64_t samples, std::uint64_t seed,
                                   Execution exec = Execution::Parallel);

/// One SQKD circle run per sample. Metrics: p0, p1, p2 (class frequencies),
/// sift_agreement and tp_guess (over p2 runs), ctrl_failure (over CTRL runs).
Workflow sqkd_workflow();

/// Case frequencies of the action draws: case_a..case_d per round.
Workflow case_balance_workflow();

// ---------------------------------------------------------------------------
// Theorem 1 sweep

struct SweepPoint {
    double theta_b = 0.0;
    double theta_c = 0.0;
    std::string return_unitary;  ///< "identity", "compliant" or "compliant-random-probe"
    Theorem1Result result;
};

struct SweepResult {
    std::size_t grid = 0;
    std::size_t probe_qubits = 2;
    std::vector<SweepPoint> points;
    bool all_consistent = true;
};

/// Controlled-rotation attacks on a grid x grid lattice of angles in [0, pi],
/// each with three return unitaries. Attack i's random probe unitary draws
/// from CounterRng(seed, Stream::Sweep, i).
SweepResult theorem1_sweep(std::size_t grid, std::size_t probe_qubits, std::uint64_t seed,
                           const Theorem1Tolerances& tol = {}, Execution exec = Execution::Parallel);

}  // namespace sqpc

#endif  // SQPC_HARNESS_HPP
