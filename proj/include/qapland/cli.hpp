// Copyright 2026 The qapland Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QAPLAND_CLI_HPP_
#define QAPLAND_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qapland/scalar.hpp"

namespace qapland {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerification = 2;

struct GeneratorSpec {
  int n = 0;
  std::uint64_t seed = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

// Parses "n,seed,lo,hi".
GeneratorSpec ParseGeneratorSpec(const std::string& text);

enum class OutputFormat { kText, kJson, kCsv };

struct AnalysisConfig {
  std::string command;  // decompose | verify | avg | autocorr | stats
  std::optional<std::string> instance_path;
  std::optional<GeneratorSpec> generator;
  std::optional<ArithmeticMode> mode;  // unset: rational iff all entries are integers
  int cap = 8;
  std::optional<std::string> perm;
  std::int64_t steps = 100000;
  std::uint64_t walk_seed = 1;
  int max_lag = 10;
  std::uint64_t samples = 100000;  // variance sampling beyond the cap
  OutputFormat format = OutputFormat::kText;
  bool flow_first = false;
  // "k1=1/100" style corruption of one decomposition constant, used to
  // confirm that `verify` can fail.
  std::optional<std::string> perturb;
};

// Parses argv into a config. Throws std::invalid_argument with a usage
// message on bad flags; `help` is set when --help was requested.
AnalysisConfig ParseArgs(const std::vector<std::string>& args, std::string* help = nullptr);

// Runs one command and returns its exit code: 0 on success, 1 on invalid
// input, 2 when some residual exceeds its tolerance.
int Run(const AnalysisConfig& config, std::ostream& out, std::ostream& err);

// ParseArgs + Run. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qapland

#endif  // QAPLAND_CLI_HPP_
