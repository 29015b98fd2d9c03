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

#include "sqpc/sqkd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqpc {

namespace {

StateVector apply_tap(const StateVector& s, const SqkdTap& tap, UniformSource& rand) {
    if (tap.kind == SqkdTapKind::BitFlip) {
        const std::size_t t[] = {0};
        return apply_unitary(s, UnitaryMatrix::pauli_x(), t);
    }
    static constexpr std::string_view kLabels[] = {"0", "1", "+", "-"};
    const auto k = std::min(static_cast<std::size_t>(rand.uniform() * 4.0), std::size_t{3});
    return ket(kLabels[k]);
}

SqkdUserOp user_step(StateVector& s, UniformSource& rand) {
    SqkdUserOp op;
    op.refreshed = rand.coin();
    if (op.refreshed) {
        op.measured_bit = measure(s, 0, Basis::Z, rand).bit;
        op.fresh_bit = rand.coin() ? 1 : 0;
        s = ket(op.fresh_bit ? "1" : "0");
    }
    return op;
}

}  // namespace

std::string_view to_string(SqkdClass c) {
    switch (c) {
        case SqkdClass::P0: return "p0";
        case SqkdClass::P1: return "p1";
        case SqkdClass::P2: return "p2";
    }
    return "?";
}

std::string_view to_string(SqkdStatus s) {
    switch (s) {
        case SqkdStatus::Ok: return "ok";
        case SqkdStatus::QberExceeded: return "qber-exceeded";
        case SqkdStatus::RoundBudgetExhausted: return "round-budget-exhausted";
    }
    return "?";
}

SqkdClass classify(const SqkdUserOp& bob, const SqkdUserOp& charlie) {
    const int measured = static_cast<int>(bob.refreshed) + static_cast<int>(charlie.refreshed);
    return static_cast<SqkdClass>(measured);
}

SqkdRound sqkd_round(UniformSource& rand, std::uint64_t round_id, const std::optional<SqkdTap>& tap) {
    SqkdRound r;
    r.round_id = round_id;
    r.tp_prepared = rand.coin() ? 1 : 0;
    StateVector s = ket(r.tp_prepared ? "-" : "+");

    auto tap_on = [&](SqkdLink link) {
        if (tap && tap->link == link) s = apply_tap(s, *tap, rand);
    };

    tap_on(SqkdLink::TpToBob);
    r.bob = user_step(s, rand);
    tap_on(SqkdLink::BobToCharlie);
    r.charlie = user_step(s, rand);
    tap_on(SqkdLink::CharlieToTp);

    r.tp_back_basis = rand.coin() ? Basis::Z : Basis::X;
    r.tp_back_outcome = measure(s, 0, r.tp_back_basis, rand).bit;
    r.cls = classify(r.bob, r.charlie);
    return r;
}

SqkdCheck classify_and_check(const SqkdRound& round) {
    SqkdCheck out;
    switch (round.cls) {
        case SqkdClass::P0:
            if (round.tp_back_basis == Basis::X) out.ctrl_pass = round.tp_back_outcome == round.tp_prepared;
            break;
        case SqkdClass::P1:
            if (round.tp_back_basis == Basis::Z) {
                const SqkdUserOp& refresher = round.bob.refreshed ? round.bob : round.charlie;
                out.ctrl_pass = round.tp_back_outcome == refresher.fresh_bit;
            }
            break;
        case SqkdClass::P2:
            out.sift_bits = std::pair{round.bob.fresh_bit, round.charlie.measured_bit};
            break;
    }
    return out;
}

std::uint64_t sqkd_round_budget(std::size_t key_length, double check_fraction) {
    return static_cast<std::uint64_t>(
        std::ceil(12.0 * static_cast<double>(key_length) / (0.25 * (1.0 - check_fraction)) - 1e-9));
}

std::uint64_t sqkd_sift_target(std::size_t key_length, double check_fraction) {
    return static_cast<std::uint64_t>(std::ceil(static_cast<double>(key_length) / (1.0 - check_fraction) - 1e-9)) + 1;
}

SqkdResult establish_key(const SqkdParams& params, std::uint64_t seed) {
    if (params.key_length == 0) {
        throw std::invalid_argument("establish_key: key length must be positive");
    }
    if (!(params.check_fraction > 0.0 && params.check_fraction < 1.0)) {
        throw std::invalid_argument("establish_key: check fraction must lie in (0, 1)");
    }

    SqkdResult res;
    const std::uint64_t budget = sqkd_round_budget(params.key_length, params.check_fraction);
    const std::uint64_t target = sqkd_sift_target(params.key_length, params.check_fraction);
    std::vector<std::pair<Bit, Bit>> sift;
    sift.reserve(target);

    while (sift.size() < target) {
        if (res.rounds_used >= budget) {
            res.status = SqkdStatus::RoundBudgetExhausted;
            return res;
        }
        CounterRng rng(seed, Stream::Sqkd, res.rounds_used);
        const SqkdRound round = sqkd_round(rng, res.rounds_used, params.tap);
        ++res.rounds_used;
        ++res.class_counts[static_cast<std::size_t>(round.cls)];
        const SqkdCheck check = classify_and_check(round);
        if (check.ctrl_pass) {
            ++res.ctrl_runs;
            if (!*check.ctrl_pass) ++res.ctrl_failures;
        }
        if (check.sift_bits) sift.push_back(*check.sift_bits);
    }
    res.sift_bits = sift.size();

    const auto n_check = static_cast<std::size_t>(std::ceil(params.check_fraction * static_cast<double>(sift.size())));
    CounterRng select(seed, Stream::SqkdSelect, 0);
    std::vector<std::size_t> checked = sample_without_replacement(sift.size(), n_check, select);
    std::vector<bool> is_checked(sift.size(), false);
    for (auto i : checked) {
        is_checked[i] = true;
        ++res.sift_checked;
        if (sift[i].first != sift[i].second) ++res.sift_errors;
    }
    res.qber_sift = res.sift_checked ? static_cast<double>(res.sift_errors) / static_cast<double>(res.sift_checked) : 0.0;
    res.qber_ctrl = res.ctrl_runs ? static_cast<double>(res.ctrl_failures) / static_cast<double>(res.ctrl_runs) : 0.0;

    if (res.qber_ctrl > params.qber_ctrl_threshold || res.qber_sift > params.qber_sift_threshold) {
        res.status = SqkdStatus::QberExceeded;
        return res;
    }
    for (std::size_t i = 0; i < sift.size() && res.key.size() < params.key_length; ++i) {
        if (is_checked[i]) continue;
        res.key.push_back(sift[i].first);
        res.charlie_key.push_back(sift[i].second);
    }
    return res;
}

double tp_secrecy_probe(std::span<const SqkdRound> rounds) {
    if (rounds.empty()) {
        throw std::invalid_argument("tp_secrecy_probe: no rounds");
    }
    std::size_t hits = 0;
    for (const auto& r : rounds) {
        if (r.cls != SqkdClass::P2) {
            throw std::invalid_argument("tp_secrecy_probe: only p2 rounds carry SIFT bits");
        }
        // TP's best guess is his own outcome on the returning qubit.
        if (r.tp_back_outcome == r.bob.fresh_bit) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(rounds.size());
}

}  // namespace sqpc
