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

#ifndef SQPC_CLI_HPP
#define SQPC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sqpc/adversary.hpp"

namespace sqpc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAbort = 2;

struct AttackOptions {
    std::string name = "none";
    std::string fake = "+0";
    double theta_b = 0.7;
    double theta_c = 1.1;
    std::size_t probe_qubits = 2;
};

/// Names accepted by --attack.
const std::vector<std::string>& attack_names();

/// Builds the attack named by opts.name; throws std::invalid_argument.
AttackSpec parse_attack(const AttackOptions& opts);

/// "fixed:<hex>" payload to L bits, least significant bit first.
Bits parse_hex_key(const std::string& hex, std::size_t L);

/// args excludes the program name. JSON goes to out, diagnostics to err.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqpc

#endif  // SQPC_CLI_HPP
