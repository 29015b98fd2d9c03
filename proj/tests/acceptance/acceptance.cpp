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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dm_oracle.hpp"
#include "sqpc/execution.hpp"
#include "sqpc/harness.hpp"
#include "sqpc/protocol.hpp"
#include "sqpc/report.hpp"
#include "sqpc/sqkd.hpp"

using namespace sqpc;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::ostringstream note;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) note << "; ";
            note << what;
            ok = false;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// exact per-case values to 1e-12, density-matrix cross-check, and Monte Carlo at 4 sigma
void check_attack(Check& c, const AttackSpec& attack, const dm::Attack& ref, const std::array<double, 4>& want,
                  double want_avg, std::uint64_t seed, std::string& summary) {
    const AttackReport exact = exact_detection(attack);
    for (int k = 0; k < 4; ++k) {
        c.expect(near(exact.per_case_detection[k], want[k], 1e-12),
                 "case " + std::to_string(k) + " exact " + fmt(exact.per_case_detection[k]));
        c.expect(near(exact.per_case_detection[k], dm::detection(ref, k), 1e-10),
                 "case " + std::to_string(k) + " disagrees with density-matrix model");
    }
    c.expect(near(exact.average_detection, want_avg, 1e-12), "average " + fmt(exact.average_detection));
    const auto stats = monte_carlo(detection_workflow(attack), 100000, seed);
    for (const auto& s : stats) {
        c.expect(within_sigma(s, 4.0), s.metric + " mc " + fmt(s.estimate) + " outside 4 sigma");
    }
    summary += describe(attack) + " avg=" + fmt(exact.average_detection) + " mc=(";
    for (int k = 0; k < 4; ++k) summary += (k ? "," : "") + fmt(stats[k].estimate);
    summary += ") ";
}

dm::Attack ref(dm::Attack::Kind k, std::array<int, 2> fake = {2, 2}) {
    dm::Attack a;
    a.kind = k;
    a.fake = fake;
    return a;
}

bool criterion1() {
    Check c;
    const auto t0 = Clock::now();
    int equal_runs = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        CounterRng pick(seed, Stream::Sweep, 1);
        const std::uint64_t x = pick.below(1u << 16);
        const std::uint64_t y = pick.coin() ? x : pick.below(1u << 16);
        const Secret gx = to_groups(x, 16), gy = to_groups(y, 16);
        SqpcConfig cfg;
        cfg.seed = seed;
        const RunReport rep = run_protocol(cfg, gx, gy);
        if (x == y) ++equal_runs;
        if (rep.verdict == Verdict::Aborted) {
            c.expect(false, "seed " + std::to_string(seed) + " aborted: " + rep.abort_reason);
            continue;
        }
        c.expect((rep.verdict == Verdict::Equal) == (x == y), "seed " + std::to_string(seed) + " wrong verdict");
        for (std::size_t i = 0; i < 16; ++i) {
            if (rep.r[i] != (gx.bits[i] ^ gy.bits[i])) {
                c.expect(false, "seed " + std::to_string(seed) + " r mismatch");
                break;
            }
        }
    }
    const double secs = seconds_since(t0);
    c.expect(secs < 10.0, "runtime " + fmt(secs) + " s");
    std::printf("%s 1 output correctness: 1000 runs at L=16 (%d with X=Y), verdict and r = G_B xor G_C, %.2f s%s%s\n",
                c.ok ? "PASS" : "FAIL", equal_runs, secs, c.ok ? "" : " :: ", c.note.str().c_str());
    return c.ok;
}

bool criterion2() {
    Check c;
    std::string s;
    check_attack(c, InterceptResend{FixedPair{Ket::Plus, Ket::Zero}}, ref(dm::Attack::FakePair, {2, 0}),
                 {0.5, 0.0, 0.5, 0.0}, 0.25, 21, s);
    std::printf("%s 2 intercept-resend detection: %s%s%s\n", c.ok ? "PASS" : "FAIL", s.c_str(),
                c.ok ? "" : ":: ", c.note.str().c_str());
    return c.ok;
}

bool criterion3() {
    Check c;
    std::string s;
    check_attack(c, MeasureResend{BasisPolicy::AlwaysZ}, ref(dm::Attack::MeasureZ), {0.75, 0.5, 0.5, 0.0}, 0.4375,
                 31, s);
    check_attack(c, MeasureResend{BasisPolicy::AlwaysX}, ref(dm::Attack::MeasureX), {0.0, 0.0, 0.0, 0.0}, 0.0, 32,
                 s);
    std::printf("%s 3 measure-resend detection: %s%s%s\n", c.ok ? "PASS" : "FAIL", s.c_str(), c.ok ? "" : ":: ",
                c.note.str().c_str());
    return c.ok;
}

bool criterion4() {
    Check c;
    const AttackSpec a = DishonestBob{DishonestScheme::I};
    const double charlie_ctrl = exact_case_detection(a, RoundCase::C);
    const double charlie_sift = exact_case_detection(a, RoundCase::D);
    const AttackReport r = exact_detection(a);
    c.expect(near(charlie_ctrl, 0.5, 1e-12), "Charlie CTRL " + fmt(charlie_ctrl));
    c.expect(near(charlie_sift, 0.0, 1e-12), "Charlie SIFT " + fmt(charlie_sift));
    c.expect(near(r.average_detection, 0.25, 1e-12), "average " + fmt(r.average_detection));
    c.expect(near(charlie_ctrl, dm::detection(ref(dm::Attack::BobI), 2), 1e-10) &&
                 near(charlie_sift, dm::detection(ref(dm::Attack::BobI), 3), 1e-10),
             "disagrees with density-matrix model");
    const auto stats = monte_carlo(detection_workflow(a), 100000, 41);
    c.expect(within_sigma(stats[2]) && within_sigma(stats[3]), "Monte Carlo outside 4 sigma");
    std::printf("%s 4 dishonest Bob scheme (i): Charlie CTRL %s, Charlie SIFT %s, average %s%s%s\n",
                c.ok ? "PASS" : "FAIL", fmt(charlie_ctrl).c_str(), fmt(charlie_sift).c_str(),
                fmt(r.average_detection).c_str(), c.ok ? "" : " :: ", c.note.str().c_str());
    return c.ok;
}

bool criterion5() {
    Check c;
    const auto t0 = Clock::now();
    const SweepResult res = theorem1_sweep(10, 2, 51);
    const double secs = seconds_since(t0);
    std::size_t violated = 0, compliant = 0, compliant_ok = 0, detected = 0, leaky = 0;
    for (const auto& p : res.points) {
        if (p.result.violated) ++violated;
        if (p.result.distinguishability > 1e-6) {
            ++leaky;
            if (p.result.detection.average_detection > 1e-9) ++detected;
        }
        if (p.return_unitary != "identity") {
            ++compliant;
            if (p.result.detection.average_detection <= 1e-9 && p.result.distinguishability <= 1e-6) ++compliant_ok;
        }
    }
    c.expect(res.grid * res.grid >= 100, "grid too small");
    c.expect(violated == 0, std::to_string(violated) + " violating points");
    c.expect(compliant_ok == compliant, "compliant attacks not silent");
    c.expect(leaky == detected, "undetected leaking attack");
    c.expect(secs < 60.0, "runtime " + fmt(secs) + " s");
    std::printf("%s 5 probe independence: %zu grid points, %zu attacks, %zu leaking all detected, %zu/%zu compliant "
                "silent, %.2f s%s%s\n",
                c.ok ? "PASS" : "FAIL", res.grid * res.grid, res.points.size(), leaky, compliant_ok, compliant, secs,
                c.ok ? "" : " :: ", c.note.str().c_str());
    return c.ok;
}

bool criterion6() {
    Check c;
    const auto stats = monte_carlo(sqkd_workflow(), 100000, 61);
    std::string s;
    for (const auto& st : stats) {
        c.expect(within_sigma(st, 4.0), st.metric + " " + fmt(st.estimate) + " outside 4 sigma");
        s += st.metric + "=" + fmt(st.estimate) + " ";
    }
    c.expect(stats[3].estimate == 1.0, "SIFT agreement below 100%");
    std::printf("%s 6 sqkd mechanics: %s%s%s\n", c.ok ? "PASS" : "FAIL", s.c_str(), c.ok ? "" : ":: ",
                c.note.str().c_str());
    return c.ok;
}

bool criterion7() {
    Check c;
    const std::size_t n = 100000;
    const auto rounds = simulate_rounds(NoAttack{}, n, 71, 0.5, Execution::Parallel);
    std::array<std::size_t, 4> counts{};
    for (const auto& r : rounds) ++counts[index_of(r.round_case)];
    const double mean = n * 0.25, sigma = std::sqrt(n * 0.25 * 0.75);
    std::string s;
    for (int k = 0; k < 4; ++k) {
        c.expect(std::abs(counts[k] - mean) <= 4 * sigma, "case " + std::to_string(k) + " count off");
        s += std::string(1, static_cast<char>('A' + k)) + "=" + std::to_string(counts[k]) + " ";
    }
    std::printf("%s 7 case balance: N=%zu %s(mean %.0f, sigma %.1f)%s%s\n", c.ok ? "PASS" : "FAIL", n, s.c_str(),
                mean, sigma, c.ok ? "" : " :: ", c.note.str().c_str());
    return c.ok;
}

bool criterion8() {
    Check c;
    SqpcConfig cfg;
    cfg.L = 16;
    cfg.seed = 81;
    cfg.attack = MeasureResend{BasisPolicy::AlwaysX};
    const Secret x = to_groups(0x1F2E, 16), y = to_groups(0x1F2F, 16);
    auto report = [&](Execution e) { return dump(to_json(run_protocol(cfg, x, y, e))); };
    auto sweep = [&](Execution e) {
        return dump(to_json(monte_carlo_detection(MeasureResend{BasisPolicy::UniformRandom}, 20000, 82, e)));
    };
    set_max_threads(1);
    const std::string s1 = report(Execution::Serial), s2 = report(Execution::Serial);
    const std::string m1 = sweep(Execution::Serial);
    set_max_threads(4);
    const std::string p1 = report(Execution::Parallel), p2 = report(Execution::Parallel);
    const std::string m2 = sweep(Execution::Parallel);
    set_max_threads(0);
    c.expect(s1 == s2, "serial runs differ");
    c.expect(p1 == p2, "parallel runs differ");
    c.expect(s1 == p1, "serial and parallel differ");
    c.expect(m1 == m2, "Monte Carlo reports differ");
    std::printf("%s 8 determinism: run report %zu bytes and Monte Carlo report identical across serial and 4-thread "
                "execution%s%s\n",
                c.ok ? "PASS" : "FAIL", s1.size(), c.ok ? "" : " :: ", c.note.str().c_str());
    return c.ok;
}

}  // namespace

int main() {
    const std::vector<std::function<bool()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8};
    int failed = 0;
    for (const auto& run : criteria) {
        bool ok = false;
        try {
            ok = run();
        } catch (const std::exception& e) {
            std::printf("FAIL exception: %s\n", e.what());
        }
        if (!ok) ++failed;
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
