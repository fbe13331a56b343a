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

#include "optbf/beamformers.hpp"
#include "optbf/linalg.hpp"
#include "optbf/model.hpp"

#include <span>
#include <string_view>

namespace optbf {

/// Per-user transmit powers p_k >= 0.
class PowerVector {
 public:
  explicit PowerVector(RealVector values);

  const RealVector& values() const noexcept { return values_; }
  double operator[](Eigen::Index k) const { return values_[k]; }
  Eigen::Index size() const noexcept { return values_.size(); }
  double total() const { return values_.sum(); }

 private:
  RealVector values_;
};

/// Per-user SINR targets gamma_k > 0.
class SinrTargets {
 public:
  explicit SinrTargets(RealVector values);

  static SinrTargets uniform(Eigen::Index users, double gamma);

  const RealVector& values() const noexcept { return values_; }
  double operator[](Eigen::Index k) const { return values_[k]; }
  Eigen::Index size() const noexcept { return values_.size(); }

 private:
  RealVector values_;
};

/// Gain matrix G(i, j) = |h_i^H u_j|^2: received power at user i per unit power sent on direction j.
RealMatrix gain_matrix(const ChannelSet& ch, const ComplexMatrix& directions);

/// The K x K system M p = sigma2 * 1 whose solution meets every target with equality.
/// M(i, i) = |h_i^H w~_i|^2 / gamma_i and M(i, j) = -|h_i^H w~_j|^2 (a Z-matrix).
RealMatrix coupling_matrix(const ChannelSet& ch, const Directions& dirs, const SinrTargets& targets);

/// Powers that make every user's SINR equal its target for the given directions.
///
/// Throws InfeasibleError when M is numerically singular or the solution has a
/// negative entry; in the latter case user() names the first negative component.
PowerVector solve_target_powers(const ChannelSet& ch, const Directions& dirs,
                                const SinrTargets& targets);

/// Downlink SINR for full beamforming vectors W (column k = w_k):
/// |h_k^H w_k|^2 / (sum_{i != k} |h_k^H w_i|^2 + sigma2).
RealVector sinr(const ChannelSet& ch, const ComplexMatrix& w);

/// W = directions * diag(sqrt(p)).
ComplexMatrix assemble(const Directions& dirs, const PowerVector& p);

/// Sum of log2(1 + SINR_k), in bit/s/Hz.
double sum_rate(std::span<const double> sinrs);
double sum_rate(const RealVector& sinrs);

enum class PowerPolicy { kEqual, kWaterfill };

std::string_view to_string(PowerPolicy policy);
/// Parses "equal" or "waterfill"; throws ContractViolation otherwise.
PowerPolicy parse_power_policy(std::string_view text);

/// Full-budget power allocation over fixed directions.
///
/// kEqual gives p_k = P / K. kWaterfill water-fills over the interference-free
/// gains g_k = |h_k^H w~_k|^2 / sigma2, p_k = max(0, mu - 1/g_k) with sum p = P.
PowerVector heuristic_power(PowerPolicy policy, const SystemBudget& budget, const ChannelSet& ch,
                            const Directions& dirs);

/// Water-filling over explicit gains (entries may be +infinity). Sum of result equals budget.
RealVector waterfill(const RealVector& gains, double budget);

}  // namespace optbf
