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
#include "optbf/model.hpp"

namespace optbf {

struct TransmitTag {};
struct ReceiveTag {};

/// N x K matrix of unit-norm columns, one per user, phase-fixed so that the
/// own-channel product h_k^H u_k is real and nonnegative.
///
/// Only the constructors in this header (and the extensions module) create
/// instances, through from_raw(), which normalizes and phase-fixes arbitrary columns.
template <class Tag>
class UnitColumns {
 public:
  /// Normalizes every column of `raw` and rotates it so h_k^H u_k >= 0.
  /// Throws ContractViolation if a column is zero or shapes disagree.
  static UnitColumns from_raw(ComplexMatrix raw, const ComplexMatrix& h);

  const ComplexMatrix& matrix() const noexcept { return columns_; }
  auto column(Eigen::Index user) const { return columns_.col(user); }
  Eigen::Index antennas() const noexcept { return columns_.rows(); }
  Eigen::Index users() const noexcept { return columns_.cols(); }

 private:
  explicit UnitColumns(ComplexMatrix columns) : columns_(std::move(columns)) {}

  ComplexMatrix columns_;
};

/// Downlink beamforming directions w~_k.
using Directions = UnitColumns<TransmitTag>;
/// Uplink receive filters v_k.
using ReceiveDirections = UnitColumns<ReceiveTag>;

/// Normalize-and-phase-fix helper shared by both instantiations.
ComplexMatrix normalize_and_phase_fix(ComplexMatrix raw, const ComplexMatrix& h);

template <class Tag>
UnitColumns<Tag> UnitColumns<Tag>::from_raw(ComplexMatrix raw, const ComplexMatrix& h) {
  return UnitColumns(normalize_and_phase_fix(std::move(raw), h));
}

/// Nonnegative per-user priorities lambda_k parameterizing the optimal structure.
class LagrangeParams {
 public:
  /// Any nonnegative finite vector. Throws DomainError otherwise.
  explicit LagrangeParams(RealVector values);

  /// Parameters that must lie on the simplex sum(lambda) = P (within 1e-9 relative).
  static LagrangeParams on_simplex(RealVector values, const SystemBudget& budget);

  /// lambda_k = P / K for all k.
  static LagrangeParams equal_share(Eigen::Index users, const SystemBudget& budget);

  const RealVector& values() const noexcept { return values_; }
  double operator[](Eigen::Index k) const { return values_[k]; }
  Eigen::Index size() const noexcept { return values_.size(); }
  double sum() const { return values_.sum(); }

 private:
  RealVector values_;
};

/// Maximum ratio transmission: w~_k = h_k / ||h_k||.
Directions mrt(const ChannelSet& ch);

/// Zero-forcing directions, the normalized columns of H (H^H H)^-1.
/// Throws InfeasibleError when N < K or when the singular-value ratio of H is
/// below 1e-9; the message carries the ratio.
Directions zf(const ChannelSet& ch);

/// Singular-value ratio below which zf() declares H rank deficient.
inline constexpr double kZfRankThreshold = 1e-9;

/// Smallest over largest singular value of H (0 when N < K).
double singular_value_ratio(const ComplexMatrix& h);

/// The lambda-parameterized optimal structure: normalized columns of
/// (I_N + H diag(lambda) H^H / sigma2)^-1 H.
Directions parameterized(const ChannelSet& ch, const LagrangeParams& lp);

/// Transmit MMSE / regularized ZF / SLNR directions: parameterized with lambda_k = P / K.
Directions transmit_mmse(const ChannelSet& ch, const SystemBudget& budget);

/// Uplink MMSE (Wiener) receive filters for uplink powers q.
/// Same formula as parameterized() with lambda = q.
ReceiveDirections uplink_mmse(const ChannelSet& ch, const RealVector& q);

/// Uplink SINR of each user with receive filters V and uplink powers q.
RealVector uplink_sinr(const ChannelSet& ch, const ReceiveDirections& v, const RealVector& q);

}  // namespace optbf
