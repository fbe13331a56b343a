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

#include "optbf/power.hpp"

#include "optbf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace optbf {

PowerVector::PowerVector(RealVector values) : values_(std::move(values)) {
  if (!values_.allFinite() || (values_.array() < 0.0).any()) {
    throw DomainError("powers must be nonnegative and finite");
  }
}

SinrTargets::SinrTargets(RealVector values) : values_(std::move(values)) {
  if (!values_.allFinite() || !(values_.array() > 0.0).all()) {
    throw DomainError("SINR targets must be positive and finite");
  }
}

SinrTargets SinrTargets::uniform(Eigen::Index users, double gamma) {
  return SinrTargets(RealVector::Constant(users, gamma));
}

RealMatrix gain_matrix(const ChannelSet& ch, const ComplexMatrix& directions) {
  if (directions.rows() != ch.antennas() || directions.cols() != ch.users()) {
    throw ContractViolation("gain_matrix: direction matrix does not match the channel");
  }
  return (ch.h().adjoint() * directions).cwiseAbs2();
}

RealMatrix coupling_matrix(const ChannelSet& ch, const Directions& dirs, const SinrTargets& targets) {
  if (targets.size() != ch.users()) {
    throw ContractViolation("coupling_matrix: target count must equal the user count");
  }
  RealMatrix m = -gain_matrix(ch, dirs.matrix());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m(i, i) = -m(i, i) / targets[i];
  }
  return m;
}

PowerVector solve_target_powers(const ChannelSet& ch, const Directions& dirs,
                                const SinrTargets& targets) {
  const RealMatrix m = coupling_matrix(ch, dirs, targets);
  const Eigen::Index users = m.rows();
  for (Eigen::Index k = 0; k < users; ++k) {
    if (!(m(k, k) > 0.0)) {
      throw InfeasibleError("direction of user " + std::to_string(k) +
                                " is orthogonal to its own channel",
                            static_cast<std::size_t>(k));
    }
  }

  const Eigen::PartialPivLU<RealMatrix> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream msg;
    msg << "coupling matrix is singular for these directions (reciprocal condition " << rcond
        << ")";
    throw InfeasibleError(msg.str());
  }
  const RealVector rhs = RealVector::Constant(users, ch.sigma2());
  const RealVector p = lu.solve(rhs);
  if (!p.allFinite()) {
    throw InfeasibleError("coupling matrix solve produced non-finite powers");
  }
  for (Eigen::Index k = 0; k < users; ++k) {
    if (p[k] < 0.0) {
      std::ostringstream msg;
      msg << "SINR targets are infeasible for these directions: user " << k
          << " would need negative power " << p[k];
      throw InfeasibleError(msg.str(), static_cast<std::size_t>(k));
    }
  }
  return PowerVector(p);
}

RealVector sinr(const ChannelSet& ch, const ComplexMatrix& w) {
  const RealMatrix g = gain_matrix(ch, w);
  const Eigen::Index users = ch.users();
  RealVector out(users);
  for (Eigen::Index k = 0; k < users; ++k) {
    const double interference = g.row(k).sum() - g(k, k);
    out[k] = g(k, k) / (interference + ch.sigma2());
  }
  return out;
}

ComplexMatrix assemble(const Directions& dirs, const PowerVector& p) {
  if (p.size() != dirs.users()) {
    throw ContractViolation("assemble: power count must equal the user count");
  }
  return dirs.matrix() * p.values().cwiseSqrt().asDiagonal();
}

double sum_rate(std::span<const double> sinrs) {
  double total = 0.0;
  for (double s : sinrs) total += std::log2(1.0 + s);
  return total;
}

double sum_rate(const RealVector& sinrs) {
  return sum_rate(std::span<const double>(sinrs.data(), static_cast<std::size_t>(sinrs.size())));
}

std::string_view to_string(PowerPolicy policy) {
  switch (policy) {
    case PowerPolicy::kEqual:
      return "equal";
    case PowerPolicy::kWaterfill:
      return "waterfill";
  }
  return "unknown";
}

PowerPolicy parse_power_policy(std::string_view text) {
  if (text == "equal") return PowerPolicy::kEqual;
  if (text == "waterfill") return PowerPolicy::kWaterfill;
  throw ContractViolation("unknown power policy '" + std::string(text) +
                          "' (expected equal or waterfill)");
}

RealVector waterfill(const RealVector& gains, double budget) {
  const Eigen::Index users = gains.size();
  if (users == 0) return RealVector();
  if (!(budget >= 0.0)) throw DomainError("waterfill: budget must be nonnegative");

  // Inverse gains are the floor levels; an infinite gain sits on the bottom.
  std::vector<double> floor_level(static_cast<std::size_t>(users));
  for (Eigen::Index k = 0; k < users; ++k) {
    const double g = gains[k];
    if (std::isnan(g) || g < 0.0) throw DomainError("waterfill: gains must be nonnegative");
    floor_level[static_cast<std::size_t>(k)] =
        g > 0.0 ? 1.0 / g : std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> order(floor_level.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return floor_level[a] < floor_level[b]; });

  double level = 0.0;
  double filled = 0.0;
  std::size_t active = 0;
  for (std::size_t m = 0; m < order.size(); ++m) {
    const double floor_m = floor_level[order[m]];
    if (!std::isfinite(floor_m)) break;
    const double candidate = (budget + filled + floor_m) / static_cast<double>(m + 1);
    if (candidate <= floor_m) break;
    filled += floor_m;
    level = candidate;
    active = m + 1;
  }

  RealVector p = RealVector::Zero(users);
  if (active == 0) {
    // Every gain is zero; nothing is worth powering, but the budget is still spent evenly.
    p.setConstant(budget / static_cast<double>(users));
    return p;
  }
  for (std::size_t m = 0; m < active; ++m) {
    const std::size_t k = order[m];
    p[static_cast<Eigen::Index>(k)] = std::max(0.0, level - floor_level[k]);
  }
  const double total = p.sum();
  if (total > 0.0) p *= budget / total;
  return p;
}

PowerVector heuristic_power(PowerPolicy policy, const SystemBudget& budget, const ChannelSet& ch,
                            const Directions& dirs) {
  const Eigen::Index users = ch.users();
  const double total = budget.total_power();
  if (policy == PowerPolicy::kEqual) {
    return PowerVector(RealVector::Constant(users, total / static_cast<double>(users)));
  }
  const RealVector gains = gain_matrix(ch, dirs.matrix()).diagonal() / ch.sigma2();
  return PowerVector(waterfill(gains, total));
}

}  // namespace optbf
