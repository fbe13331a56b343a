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

#include "optbf/linalg.hpp"

#include <cstdint>
#include <string_view>

namespace optbf {

/// Downlink scenario: N x K channel matrix (column k is h_k) and receiver noise variance.
///
/// Immutable after construction; every instance satisfies N, K >= 1, sigma2 > 0,
/// finite entries and nonzero columns.
class ChannelSet {
 public:
  /// Validates and wraps an explicit channel. Throws ContractViolation naming the
  /// offending user for a zero or non-finite column, DomainError for sigma2 <= 0.
  static ChannelSet from_explicit(ComplexMatrix h, double sigma2);

  const ComplexMatrix& h() const noexcept { return h_; }
  auto channel(Eigen::Index user) const { return h_.col(user); }
  double sigma2() const noexcept { return sigma2_; }
  Eigen::Index antennas() const noexcept { return h_.rows(); }
  Eigen::Index users() const noexcept { return h_.cols(); }

  /// Same channel with a different noise variance.
  ChannelSet with_noise(double sigma2) const;

 private:
  ChannelSet(ComplexMatrix h, double sigma2) : h_(std::move(h)), sigma2_(sigma2) {}

  ComplexMatrix h_;
  double sigma2_;
};

/// Total transmit power budget P > 0.
class SystemBudget {
 public:
  explicit SystemBudget(double total_power);

  double total_power() const noexcept { return total_power_; }

  /// Budget for a target SNR in dB, P = sigma2 * 10^(snr_db / 10).
  static SystemBudget from_snr_db(double snr_db, double sigma2 = 1.0);

 private:
  double total_power_;
};

/// Name recorded in output metadata for the channel generator.
inline constexpr std::string_view kGeneratorName =
    "mt19937_64 seeded by splitmix64(seed ^ splitmix64(trial)), std::normal_distribution";

/// Seed of the per-trial substream. Pure function of (seed, trial_index).
std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial_index);

/// i.i.d. CN(0, 1) channel entries (real and imaginary parts each N(0, 1/2)).
/// The draw is a deterministic function of (seed, trial_index, N, K).
ChannelSet generate_rayleigh(std::uint64_t seed, std::uint64_t trial_index, Eigen::Index antennas,
                             Eigen::Index users, double sigma2);

}  // namespace optbf
