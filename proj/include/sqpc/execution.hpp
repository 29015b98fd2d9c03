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

#ifndef SQPC_EXECUTION_HPP
#define SQPC_EXECUTION_HPP

#include <cstdint>

namespace sqpc {

/// Serial is the reference path; Parallel fans the same per-index work out
/// over OpenMP threads and must produce identical results.
enum class Execution : std::uint8_t { Serial, Parallel };

/// Worker threads a Parallel section will use (1 without OpenMP).
int max_threads();

/// Caps OpenMP worker threads; n <= 0 restores the runtime default.
void set_max_threads(int n);

}  // namespace sqpc

#endif  // SQPC_EXECUTION_HPP
