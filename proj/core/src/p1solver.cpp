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

#include "optbf/p1solver.hpp"

#include "optbf/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace optbf {

RealVector p1_fixed_point_step(const ChannelSet& ch, const SinrTargets& targets,
                               const RealVector& lambda) {
  const ComplexMatrix applied =
      regularized_apply(ch.h(), lambda, ch.sigma2(), preferred_form(ch.antennas(), ch.users()));
  const Eigen::Index users = ch.users();
  RealVector next(users);
  for (Eigen::Index k = 0; k < users; ++k) {
    // h_k^H A^-1 h_k, real and positive because A is Hermitian positive definite.
    const double quad = ch.channel(k).dot(applied.col(k)).real();
    next[k] = ch.sigma2() / ((1.0 + 1.0 / targets[k]) * quad);
  }
  return next;
}

P1Solution solve_p1(const ChannelSet& ch, const SinrTargets& targets, const P1Options& opts) {
  const Eigen::Index users = ch.users();
  if (targets.size() != users) {
    throw ContractViolation("solve_p1: target count must equal the user count");
  }
  if (!(opts.tolerance > 0.0) || opts.max_iterations < 1) {
    throw ContractViolation("solve_p1: tolerance must be positive and max_iterations >= 1");
  }

  const double cap = opts.divergence_cap * ch.sigma2();
  RealVector lambda(users);
  for (Eigen::Index k = 0; k < users; ++k) {
    lambda[k] = targets[k] * ch.sigma2() / ch.channel(k).squaredNorm();
  }

  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  while (iterations < opts.max_iterations) {
    const RealVector next = p1_fixed_point_step(ch, targets, lambda);
    ++iterations;
    residual = ((next - lambda).cwiseAbs().array() / lambda.array()).maxCoeff();
    lambda = next;
    if (!lambda.allFinite() || lambda.maxCoeff() > cap) {
      Eigen::Index worst = 0;
      lambda.maxCoeff(&worst);
      std::ostringstream msg;
      msg << "SINR targets appear infeasible: Lagrange parameter of user " << worst
          << " diverged past " << cap << " after " << iterations << " iterations";
      throw InfeasibleError(msg.str(), static_cast<std::size_t>(worst));
    }
    if (residual < opts.tolerance) break;
  }
  if (!(residual < opts.tolerance)) {
    std::ostringstream msg;
    msg << "fixed-point iteration did not converge in " << opts.max_iterations
        << " iterations (last relative change " << residual << ")";
    throw ConvergenceError(msg.str(), residual);
  }

  LagrangeParams lp(lambda);
  Directions dirs = parameterized(ch, lp);
  PowerVector p = solve_target_powers(ch, dirs, targets);
  const double total = p.total();
  return P1Solution{std::move(lp), std::move(dirs), std::move(p), total, iterations, residual};
}

KktReport verify_kkt(const ChannelSet& ch, const P1Solution& sol, const SinrTargets& targets) {
  const Eigen::Index users = ch.users();
  if (sol.lambda.size() != users || targets.size() != users || sol.p.size() != users) {
    throw ContractViolation("verify_kkt: dimension mismatch");
  }
  const ComplexMatrix w = sol.beamformers();
  const ComplexMatrix& h = ch.h();
  const double sigma2 = ch.sigma2();

  // projections(i, k) = h_i^H w_k
  const ComplexMatrix projections = h.adjoint() * w;

  KktReport report;
  report.stationarity.resize(users);
  for (Eigen::Index k = 0; k < users; ++k) {
    ComplexVector r = w.col(k);
    for (Eigen::Index i = 0; i < users; ++i) {
      const double weight =
          i == k ? -sol.lambda[k] / (targets[k] * sigma2) : sol.lambda[i] / sigma2;
      r += weight * projections(i, k) * h.col(i);
    }
    const double scale = w.col(k).norm();
    report.stationarity[k] = scale > 0.0 ? r.norm() / scale : r.norm();
  }
  report.max_stationarity = report.stationarity.maxCoeff();

  const double total = sol.p.total();
  report.duality_gap = std::abs(sol.lambda.sum() - total) / total;

  const RealVector achieved = sinr(ch, w);
  report.max_sinr_error =
      ((achieved - targets.values()).cwiseAbs().array() / targets.values().array()).maxCoeff();
  return report;
}

}  // namespace optbf
