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

#ifndef SQPC_RNG_HPP
#define SQPC_RNG_HPP

#include <cstdint>
#include <vector>

namespace sqpc {

/// Source of uniform reals in [0, 1).
class UniformSource {
public:
    virtual ~UniformSource() = default;
    virtual double uniform() = 0;

    /// Fair coin.
    bool coin() { return uniform() < 0.5; }
    /// Bernoulli(p).
    bool bernoulli(double p) { return uniform() < p; }
};

/// Independent randomness streams under one seed.
enum class Stream : std::uint64_t {
    Rounds = 1,     ///< per-round quantum handling, indexed by round id
    Protocol = 2,   ///< TEST / one-time-pad selection
    Sqkd = 3,       ///< per-round SQKD handling
    SqkdSelect = 4, ///< SQKD check-bit selection
    Samples = 5,    ///< Monte Carlo samples, indexed by sample id
    Sweep = 6,      ///< attack-family sweeps
};

/**
 * Counter-based generator keyed by (seed, stream, index). Draw k of a key is a
 * pure function of (seed, stream, index, k), so results never depend on the
 * order in which keys are visited or on the number of worker threads.
 */
class CounterRng final : public UniformSource {
public:
    CounterRng(std::uint64_t seed, Stream stream, std::uint64_t index);

    std::uint64_t next_u64();
    double uniform() override;
    /// Uniform integer in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);

    std::uint64_t draws() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Replays a fixed list of uniforms; throws std::out_of_range when exhausted.
class ScriptedSource final : public UniformSource {
public:
    explicit ScriptedSource(std::vector<double> values) : values_(std::move(values)) {}
    double uniform() override;

private:
    std::vector<double> values_;
    std::size_t next_ = 0;
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Derives a child seed, e.g. for the i-th protocol run inside a sweep.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// k distinct uniformly chosen indices from [0, n), in selection order.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, CounterRng& rng);

}  // namespace sqpc

#endif  // SQPC_RNG_HPP
