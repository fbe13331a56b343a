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
#include "optbf/power.hpp"

#include <cstdint>
#include <vector>

namespace optbf {

/// Which antennas serve which user: masks(n, k) = 1 when antenna n transmits to user k.
///
/// Models cooperating base stations where only a subset of sites carries a user's data.
class AntennaSubsets {
 public:
  using Mask = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

  /// Entries must be 0 or 1 and every column must contain at least one 1.
  explicit AntennaSubsets(Mask masks);

  /// Every antenna serves every user.
  static AntennaSubsets full(Eigen::Index antennas, Eigen::Index users);

  const Mask& masks() const noexcept { return masks_; }
  bool serves(Eigen::Index antenna, Eigen::Index user) const { return masks_(antenna, user) != 0; }
  Eigen::Index antennas() const noexcept { return masks_.rows(); }
  Eigen::Index users() const noexcept { return masks_.cols(); }

 private:
  Mask masks_;
};

/// Optimal-structure directions when user k is served only by its antenna subset:
/// column k is the normalized (I + sum_i (lambda_i / sigma2) D_k h_i h_i^H D_k)^-1 D_k h_k.
/// Entries at antennas outside the subset are exactly zero.
///
/// Throws InfeasibleError (user() set) when D_k h_k = 0.
Directions subset_directions(const ChannelSet& ch, const LagrangeParams& lp,
                             const AntennaSubsets& subsets);

/// One quadratic constraint sum_k w_k^H Q_k w_k <= limit.
struct QuadraticConstraint {
  /// Per-user N x N Hermitian PSD weighting matrices.
  std::vector<ComplexMatrix> per_user;
  double limit = 0.0;
};

/// L quadratic power/shaping constraints plus their multipliers mu_l.
///
/// Construction checks that every Q is Hermitian PSD (eigenvalue floor
/// -1e-10 ||Q||) and that sum_l mu_l Q_{l,k} is positive definite for each user.
class QuadraticConstraintSet {
 public:
  QuadraticConstraintSet(std::vector<QuadraticConstraint> constraints, RealVector mu);

  const std::vector<QuadraticConstraint>& constraints() const noexcept { return constraints_; }
  const RealVector& mu() const noexcept { return mu_; }
  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(constraints_.size()); }
  Eigen::Index antennas() const noexcept { return antennas_; }
  Eigen::Index users() const noexcept { return users_; }

  /// sum_l mu_l Q_{l,k}.
  ComplexMatrix aggregate(Eigen::Index user) const;

 private:
  std::vector<QuadraticConstraint> constraints_;
  RealVector mu_;
  Eigen::Index antennas_ = 0;
  Eigen::Index users_ = 0;
};

/// Q_{1,k} = I_N for every user: the plain total-power constraint.
QuadraticConstraint total_power_constraint(Eigen::Index antennas, Eigen::Index users, double limit);

/// L = N constraints, the l-th bounding the power radiated from antenna l.
std::vector<QuadraticConstraint> per_antenna_constraints(Eigen::Index antennas, Eigen::Index users,
                                                         const RealVector& limits);

/// Caps interference leaked to `victim`: Q_k = h_v h_v^H for k != victim, Q_victim = 0.
QuadraticConstraint leakage_constraint(const ChannelSet& ch, Eigen::Index victim, double limit);

/// W with column k = sqrt(p_k) * normalized (sum_l mu_l Q_{l,k} + H diag(lambda) H^H / sigma2)^-1 h_k,
/// phase-fixed so that h_k^H w_k >= 0.
///
/// Throws SingularityError carrying the smallest eigenvalue of the aggregate
/// matrix when the system cannot be solved.
ComplexMatrix constrained_solution(const ChannelSet& ch, const LagrangeParams& lp,
                                   const QuadraticConstraintSet& qc, const PowerVector& p);

struct ConstraintUsage {
  /// sum_k w_k^H Q_{l,k} w_k per constraint.
  RealVector usage;
  std::vector<bool> pass;
  bool all_pass = true;
};

/// Evaluates every constraint; constraint l passes iff usage_l <= P_l (1 + 1e-9).
ConstraintUsage check_constraints(const ComplexMatrix& w, const QuadraticConstraintSet& qc);

/// Bookkeeping identities of optimal multipliers: sum lambda = P_max and
/// sum_l P_l mu_l = P_max with P_max = max_l P_l, each within rel_tol.
bool multipliers_consistent(const LagrangeParams& lp, const QuadraticConstraintSet& qc,
                            double rel_tol = 1e-9);

}  // namespace optbf
