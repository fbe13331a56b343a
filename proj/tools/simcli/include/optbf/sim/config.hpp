// SPDX-License-Identifier: Apache-2.0
//
// optbf - multiuser downlink transmit beamforming library
// Copyright (C) 2026 The optbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "optbf/p2search.hpp"
#include "optbf/power.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace optbf::sim {

/// Invalid or incomplete sweep configuration (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepScheme { kMrt, kZf, kMmse, kOracle, kP1Reference };

std::string_view to_string(SweepScheme scheme);
SweepScheme parse_sweep_scheme(std::string_view text);

struct SweepConfig {
  int antennas = 0;
  int users = 0;
  /// 10 log10(P / sigma2) grid; sigma2 is fixed to 1.
  std::vector<double> snr_db;
  int trials = 1000;
  std::uint64_t seed = 1;
  std::vector<SweepScheme> schemes;
  PowerPolicy power = PowerPolicy::kEqual;
  UtilityKind utility = UtilityKind::kSumRate;
  /// Empty writes the CSV to standard output.
  std::string output_path;
  int oracle_resolution = 64;
  /// Worker threads for the trial loop; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Keys accepted in config files; flags use the same names with '-' for '_'.
const std::vector<std::string>& valid_keys();

/// "start:step:stop" (inclusive) or a comma-separated list, in dB.
std::vector<double> parse_snr_grid(std::string_view text);

/// Parses `key = value` lines; '#' starts a comment. Unknown keys are rejected.
std::map<std::string, std::string> parse_config_text(std::string_view text);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Builds and validates a config from key/value pairs (defaults fill the gaps).
SweepConfig config_from_values(const std::map<std::string, std::string>& values);

/// Throws ConfigError when an invariant is broken (oracle with K > 3, empty grid, ...).
void validate(const SweepConfig& cfg);

/// Effective configuration as ordered key/value pairs, for echoing into output.
std::vector<std::pair<std::string, std::string>> describe(const SweepConfig& cfg);

struct ParseOutcome {
  SweepConfig config;
  bool help_requested = false;
  std::string help;
};

/// Parses command-line arguments (without the program name). A `--config` file
/// is read first and explicit flags override its values. On --help the config
/// is left default and `help` holds the usage text.
ParseOutcome parse_config(const std::vector<std::string>& args);

}  // namespace optbf::sim
