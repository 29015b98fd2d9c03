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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "sqpc/execution.hpp"
#include "sqpc/harness.hpp"
#include "sqpc/report.hpp"

using namespace sqpc;

namespace {

Workflow coin_workflow(double p) {
    Workflow wf;
    wf.metrics = {"heads"};
    wf.proportion = {true};
    wf.exact = {p};
    wf.sample = [p](std::uint64_t, CounterRng& rng, Tally& t) { t.add(0, rng.bernoulli(p) ? 1.0 : 0.0); };
    return wf;
}

}  // namespace

TEST(MonteCarlo, SingleSample) {
    const auto s = monte_carlo(coin_workflow(0.3), 1, 4, Execution::Serial);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].samples, 1u);
    EXPECT_TRUE(s[0].estimate == 0.0 || s[0].estimate == 1.0);
    EXPECT_EQ(s[0].std_error, 0.0);
}

TEST(MonteCarlo, ZeroSamplesRejected) {
    EXPECT_THROW(monte_carlo(coin_workflow(0.5), 0, 1), std::invalid_argument);
}

TEST(MonteCarlo, StdErrorFormula) {
    const auto s = monte_carlo(coin_workflow(0.3), 10000, 2)[0];
    EXPECT_NEAR(s.std_error, std::sqrt(s.estimate * (1 - s.estimate) / 10000.0), 1e-15);
    EXPECT_TRUE(within_sigma(s));
}

TEST(MonteCarlo, NonProportionUsesSampleVariance) {
    Workflow wf;
    wf.metrics = {"value"};
    wf.proportion = {false};
    wf.sample = [](std::uint64_t i, CounterRng&, Tally& t) { t.add(0, static_cast<double>(i % 3)); };
    const auto s = monte_carlo(wf, 3, 0, Execution::Serial)[0];
    EXPECT_DOUBLE_EQ(s.estimate, 1.0);
    EXPECT_NEAR(s.std_error, std::sqrt(1.0 / 3.0), 1e-12);
    EXPECT_FALSE(s.exact_value);
}

TEST(MonteCarlo, SerialParallelIdentical) {
    set_max_threads(4);
    for (std::uint64_t n : {1u, 1023u, 1024u, 1025u, 50000u}) {
        const auto a = monte_carlo(detection_workflow(MeasureResend{BasisPolicy::UniformRandom}), n, 6,
                                   Execution::Serial);
        const auto b = monte_carlo(detection_workflow(MeasureResend{BasisPolicy::UniformRandom}), n, 6,
                                   Execution::Parallel);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t m = 0; m < a.size(); ++m) {
            EXPECT_EQ(a[m].samples, b[m].samples);
            EXPECT_EQ(a[m].estimate, b[m].estimate);
            EXPECT_EQ(a[m].std_error, b[m].std_error);
        }
    }
    set_max_threads(0);
}

TEST(MonteCarlo, ExceptionPropagatesFromWorkers) {
    Workflow wf;
    wf.metrics = {"x"};
    wf.sample = [](std::uint64_t i, CounterRng&, Tally&) {
        if (i == 2500) throw std::runtime_error("boom");
    };
    EXPECT_THROW(monte_carlo(wf, 5000, 0, Execution::Parallel), std::runtime_error);
    EXPECT_THROW(monte_carlo(wf, 5000, 0, Execution::Serial), std::runtime_error);
}

TEST(Tally, MergeChecksShape) {
    Tally a(2), b(3);
    EXPECT_THROW(a.merge(b), std::invalid_argument);
    Tally c(2);
    c.add(1, 2.0);
    a.merge(c);
    EXPECT_EQ(a.count(1), 1u);
    EXPECT_EQ(a.sum_sq(1), 4.0);
}

TEST(WithinSigma, Boundaries) {
    StatSummary s;
    s.samples = 100;
    s.exact_value = 0.5;
    s.estimate = 0.5 + 4 * 0.05;
    EXPECT_TRUE(within_sigma(s));
    s.estimate = 0.5 + 4 * 0.05 + 1e-6;
    EXPECT_FALSE(within_sigma(s));
    s.exact_value.reset();
    EXPECT_TRUE(within_sigma(s));
}

TEST(DetectionWorkflow, InterceptResendAverage) {
    const auto r = monte_carlo_detection(InterceptResend{FixedPair{Ket::Plus, Ket::Zero}}, 100000, 3);
    EXPECT_EQ(r.method, Method::MonteCarlo);
    EXPECT_EQ(r.samples, 100000u);
    // average of four per-case proportions; each has sigma <= 0.5/sqrt(n/4)
    EXPECT_NEAR(r.average_detection, 0.25, 4 * 0.5 / std::sqrt(25000.0) / 2);
}

TEST(CaseBalance, WithinFourSigma) {
    const auto stats = monte_carlo(case_balance_workflow(), 100000, 8);
    for (const auto& s : stats) EXPECT_TRUE(within_sigma(s, 4.0)) << s.metric;
}

TEST(Theorem1Sweep, GridIsConsistent) {
    const auto res = theorem1_sweep(10, 2, 1);
    EXPECT_EQ(res.points.size(), 300u);
    EXPECT_TRUE(res.all_consistent);
    int compliant = 0;
    for (const auto& p : res.points) {
        EXPECT_FALSE(p.result.violated);
        if (p.result.distinguishability > 0.01) EXPECT_GT(p.result.detection.average_detection, 0.0);
        if (p.return_unitary != "identity") {
            ++compliant;
            EXPECT_LE(p.result.detection.average_detection, 1e-9);
            EXPECT_LE(p.result.distinguishability, 1e-6);
        }
    }
    EXPECT_EQ(compliant, 200);
}

TEST(Theorem1Sweep, SerialParallelIdentical) {
    set_max_threads(4);
    const auto a = dump(to_json(theorem1_sweep(5, 2, 9, {}, Execution::Serial)));
    const auto b = dump(to_json(theorem1_sweep(5, 2, 9, {}, Execution::Parallel)));
    set_max_threads(0);
    EXPECT_EQ(a, b);
}

TEST(Theorem1Sweep, BadArguments) {
    EXPECT_THROW(theorem1_sweep(0, 2, 0), std::invalid_argument);
    EXPECT_THROW(theorem1_sweep(3, 0, 0), std::invalid_argument);
}

TEST(Report, PerCaseCsv) {
    const auto csv = per_case_csv(exact_detection(MeasureResend{BasisPolicy::AlwaysZ}));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "case,estimate,std_error,samples,exact");
    EXPECT_NE(csv.find("\nd,0,0,0,0\n"), std::string::npos);
}

TEST(Report, BitString) {
    EXPECT_EQ(bit_string({1, 0, 1, 1}), "1011");
    EXPECT_EQ(bit_string({}), "");
}
