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

#include "optbf/sim/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace optbf::sim {

inline constexpr std::string_view kToolName = "optbf-sim";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Aggregated result for one (SNR, scheme) pair.
struct SweepRow {
  double snr_db;
  SweepScheme scheme;
  double mean_utility;
  double stderr_utility;
  int trials;
  int failed_trials;
  /// p1-reference only: mean of 1 - P1 power / budget over successful trials.
  double mean_power_saving = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Runs the Monte Carlo sweep. Trial t always uses the channel drawn from
/// (seed, t), so results do not depend on the thread count. Trials where a
/// scheme is infeasible (rank-deficient zf, failed P1 solve) are counted in
/// failed_trials and excluded from the mean.
SweepResult run_sweep(const SweepConfig& cfg);

/// CSV with '#'-prefixed metadata lines, then snr_db,scheme,mean_utility,stderr,trials,failed_trials.
void write_csv(std::ostream& out, const SweepConfig& cfg, const SweepResult& result,
               const std::string& timestamp);

/// Human-readable table of mean utilities.
void print_summary(std::ostream& out, const SweepConfig& cfg, const SweepResult& result);

/// %.12g rendering used for every number in the CSV.
std::string format_number(double value);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

/// Whole command-line program. Returns 0 on success, 1 on configuration
/// errors, 2 on runtime or solver errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace optbf::sim
