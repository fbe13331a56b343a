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
#include "optbf/model.hpp"
#include "optbf/power.hpp"

namespace optbf {

struct P1Options {
  /// Stop once max_k |lambda_k_new - lambda_k| / lambda_k falls below this.
  double tolerance = 1e-10;
  int max_iterations = 10000;
  /// lambda above divergence_cap * sigma2 is reported as infeasible.
  double divergence_cap = 1e12;
};

/// Minimum-power beamforming meeting per-user SINR targets.
struct P1Solution {
  LagrangeParams lambda;
  Directions dirs;
  PowerVector p;
  double total_power;
  int iterations;
  /// Relative lambda change of the last fixed-point step.
  double residual;

  /// W = dirs * diag(sqrt(p)).
  ComplexMatrix beamformers() const { return assemble(dirs, p); }
};

/// Solves min sum ||w_k||^2 s.t. SINR_k >= gamma_k.
///
/// Iterates lambda_k <- sigma2 / ((1 + 1/gamma_k) h_k^H (I + H diag(lambda) H^H / sigma2)^-1 h_k)
/// from lambda_k = gamma_k sigma2 / ||h_k||^2, then builds the optimal directions from
/// lambda and the powers from the coupling system.
///
/// Throws ConvergenceError after opts.max_iterations, InfeasibleError if lambda
/// exceeds the divergence cap or the coupling system yields a negative power.
P1Solution solve_p1(const ChannelSet& ch, const SinrTargets& targets, const P1Options& opts = {});

/// One application of the fixed-point map.
RealVector p1_fixed_point_step(const ChannelSet& ch, const SinrTargets& targets,
                               const RealVector& lambda);

struct KktReport {
  /// ||w_k + sum_{i != k} (lambda_i / sigma2) h_i h_i^H w_k - (lambda_k / (gamma_k sigma2)) h_k h_k^H w_k||
  /// divided by ||w_k||.
  RealVector stationarity;
  double max_stationarity;
  /// |sum lambda - sum p| / sum p.
  double duality_gap;
  /// max_k |SINR_k - gamma_k| / gamma_k.
  double max_sinr_error;
};

/// Diagnostic check of the optimality conditions of a P1 solution.
KktReport verify_kkt(const ChannelSet& ch, const P1Solution& sol, const SinrTargets& targets);

}  // namespace optbf
