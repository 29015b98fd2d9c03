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

#include "sqpc/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace sqpc {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(mix64(seed) ^ (index * 0xD1B54A32D192ED03ULL));
}

CounterRng::CounterRng(std::uint64_t seed, Stream stream, std::uint64_t index) {
    std::uint64_t k = mix64(seed);
    k = mix64(k ^ (static_cast<std::uint64_t>(stream) * 0xA24BAED4963EE407ULL));
    key_ = mix64(k ^ (index * 0x9FB21C651E98DF25ULL));
}

std::uint64_t CounterRng::next_u64() {
    return mix64(key_ ^ mix64(counter_++ * kGolden));
}

double CounterRng::uniform() {
    // 53 high bits -> [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("CounterRng::below: n must be positive");
    }
    const std::uint64_t limit = -n % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= limit) {
            return r % n;
        }
    }
}

double ScriptedSource::uniform() {
    if (next_ >= values_.size()) {
        throw std::out_of_range("ScriptedSource exhausted");
    }
    return values_[next_++];
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, CounterRng& rng) {
    if (k > n) {
        throw std::invalid_argument("sample_without_replacement: k > n");
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // partial Fisher-Yates
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace sqpc
