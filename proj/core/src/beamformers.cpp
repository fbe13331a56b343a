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

#include "optbf/beamformers.hpp"

#include "optbf/errors.hpp"

#include <cassert>
#include <cmath>
#include <sstream>
#include <string>

namespace optbf {
namespace {

ComplexMatrix regularized_columns(const ChannelSet& ch, const RealVector& weights) {
  const InverseForm form = preferred_form(ch.antennas(), ch.users());
  ComplexMatrix raw = regularized_apply(ch.h(), weights, ch.sigma2(), form);
#ifndef NDEBUG
  // The other route can be too ill-conditioned to factor at extreme SNR; skip it then.
  try {
    const InverseForm other = form == InverseForm::kDual ? InverseForm::kPrimal : InverseForm::kDual;
    const ComplexMatrix check = regularized_apply(ch.h(), weights, ch.sigma2(), other);
    assert(relative_difference(raw, check) <= 1e-8);
  } catch (const SingularityError&) {
  }
#endif
  return raw;
}

}  // namespace

ComplexMatrix normalize_and_phase_fix(ComplexMatrix raw, const ComplexMatrix& h) {
  if (raw.rows() != h.rows() || raw.cols() != h.cols()) {
    throw ContractViolation("direction matrix shape does not match the channel");
  }
  for (Eigen::Index k = 0; k < raw.cols(); ++k) {
    const double norm = raw.col(k).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw ContractViolation("direction of user " + std::to_string(k) +
                              " is zero or non-finite and cannot be normalized");
    }
    raw.col(k) /= norm;
    const Complex own = h.col(k).dot(raw.col(k));  // h_k^H u_k
    const double mag = std::abs(own);
    if (mag > 0.0) {
      raw.col(k) *= std::conj(own) / mag;
    }
  }
  return raw;
}

LagrangeParams::LagrangeParams(RealVector values) : values_(std::move(values)) {
  if (!values_.allFinite() || (values_.array() < 0.0).any()) {
    throw DomainError("Lagrange parameters must be nonnegative and finite");
  }
}

LagrangeParams LagrangeParams::on_simplex(RealVector values, const SystemBudget& budget) {
  LagrangeParams lp(std::move(values));
  const double p = budget.total_power();
  if (std::abs(lp.sum() - p) > 1e-9 * p) {
    std::ostringstream msg;
    msg << "Lagrange parameters sum to " << lp.sum() << " but the budget is " << p;
    throw ContractViolation(msg.str());
  }
  return lp;
}

LagrangeParams LagrangeParams::equal_share(Eigen::Index users, const SystemBudget& budget) {
  if (users < 1) throw ContractViolation("equal_share: need at least one user");
  return LagrangeParams(RealVector::Constant(users, budget.total_power() / static_cast<double>(users)));
}

Directions mrt(const ChannelSet& ch) {
  return Directions::from_raw(ch.h(), ch.h());
}

double singular_value_ratio(const ComplexMatrix& h) {
  if (h.rows() < h.cols()) return 0.0;
  const Eigen::JacobiSVD<ComplexMatrix> svd(h);
  const RealVector& s = svd.singularValues();
  const double largest = s.maxCoeff();
  return largest > 0.0 ? s.minCoeff() / largest : 0.0;
}

Directions zf(const ChannelSet& ch) {
  const Eigen::Index n = ch.antennas();
  const Eigen::Index k = ch.users();
  if (n < k) {
    throw InfeasibleError("zero-forcing needs N >= K, got N=" + std::to_string(n) +
                          ", K=" + std::to_string(k));
  }
  const double ratio = singular_value_ratio(ch.h());
  if (!(ratio > kZfRankThreshold)) {
    std::ostringstream msg;
    msg << "zero-forcing needs a full-rank channel; singular value ratio " << ratio
        << " is below " << kZfRankThreshold;
    throw InfeasibleError(msg.str());
  }
  ComplexMatrix gram = ch.h().adjoint() * ch.h();
  gram = 0.5 * (gram + gram.adjoint()).eval();
  const ComplexMatrix inv = solve_hermitian(gram, ComplexMatrix::Identity(k, k));
  return Directions::from_raw(ch.h() * inv, ch.h());
}

Directions parameterized(const ChannelSet& ch, const LagrangeParams& lp) {
  if (lp.size() != ch.users()) {
    throw ContractViolation("parameterized: lambda length must equal the user count");
  }
  return Directions::from_raw(regularized_columns(ch, lp.values()), ch.h());
}

Directions transmit_mmse(const ChannelSet& ch, const SystemBudget& budget) {
  return parameterized(ch, LagrangeParams::equal_share(ch.users(), budget));
}

ReceiveDirections uplink_mmse(const ChannelSet& ch, const RealVector& q) {
  if (q.size() != ch.users()) {
    throw ContractViolation("uplink_mmse: power vector length must equal the user count");
  }
  if (!q.allFinite() || (q.array() < 0.0).any()) {
    throw DomainError("uplink_mmse: uplink powers must be nonnegative and finite");
  }
  return ReceiveDirections::from_raw(regularized_columns(ch, q), ch.h());
}

RealVector uplink_sinr(const ChannelSet& ch, const ReceiveDirections& v, const RealVector& q) {
  const Eigen::Index users = ch.users();
  if (v.users() != users || q.size() != users) {
    throw ContractViolation("uplink_sinr: dimension mismatch");
  }
  // gains(i, k) = |h_i^H v_k|^2
  const RealMatrix gains = (ch.h().adjoint() * v.matrix()).cwiseAbs2();
  RealVector out(users);
  for (Eigen::Index k = 0; k < users; ++k) {
    double interference = 0.0;
    for (Eigen::Index i = 0; i < users; ++i) {
      if (i != k) interference += q[i] * gains(i, k);
    }
    const double noise = ch.sigma2() * v.column(k).squaredNorm();
    out[k] = q[k] * gains(k, k) / (interference + noise);
  }
  return out;
}

}  // namespace optbf
