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

#include <string>
#include <string_view>

namespace optbf {

enum class UtilityKind { kSumRate, kMinSinr, kWeightedSumRate };

/// A utility f(SINR_1, ..., SINR_K) that is strictly increasing in every argument.
class Utility {
 public:
  static Utility sum_rate() { return Utility(UtilityKind::kSumRate, {}); }
  static Utility min_sinr() { return Utility(UtilityKind::kMinSinr, {}); }
  /// sum_k weight_k log2(1 + SINR_k); weights must be positive.
  static Utility weighted_sum_rate(RealVector weights);

  UtilityKind kind() const noexcept { return kind_; }
  const RealVector& weights() const noexcept { return weights_; }

  double operator()(const RealVector& sinrs) const;

 private:
  Utility(UtilityKind kind, RealVector weights) : kind_(kind), weights_(std::move(weights)) {}

  UtilityKind kind_;
  RealVector weights_;
};

std::string_view to_string(UtilityKind kind);
/// Parses "sumrate" or "minsinr".
Utility parse_utility(std::string_view text);

enum class Scheme { kMrt, kZf, kMmse };

std::string_view to_string(Scheme scheme);
/// Parses "mrt", "zf" or "mmse".
Scheme parse_scheme(std::string_view text);

/// Heuristic directions for a scheme (mmse uses lambda_k = P / K).
Directions scheme_directions(const ChannelSet& ch, Scheme scheme, const SystemBudget& budget);

struct SchemeEvaluation {
  double utility;
  RealVector sinrs;
  RealVector powers;
};

/// Builds the scheme's directions, allocates power by `policy`, and evaluates `u`.
/// zf propagates InfeasibleError on rank-deficient channels.
SchemeEvaluation evaluate_scheme(const ChannelSet& ch, Scheme scheme, const SystemBudget& budget,
                                 PowerPolicy policy, const Utility& u);

struct OracleOptions {
  /// Lattice points per free simplex dimension.
  int resolution = 64;
  /// One local pass at 10x finer spacing around the incumbent.
  bool refine = true;
  /// Worker threads for the lambda sweep; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Best point found by exhaustive search over the optimal structure.
struct OracleSolution {
  LagrangeParams lambda;
  PowerVector p;
  Directions dirs;
  RealVector sinrs;
  double utility_value;
  int grid_resolution;
};

/// Exhaustive search over lambda on {lambda >= 0, sum lambda = P} and p on
/// {p >= 0, sum p = P}, both on simplex lattices, with one refinement pass.
/// Returns a feasible point, hence a lower bound on the optimal utility.
///
/// Ties are broken by lower total power, then lexicographically smaller lambda,
/// then lexicographically smaller p, so the result does not depend on thread count.
/// Throws UnsupportedSizeError for K > 3.
OracleSolution grid_oracle(const ChannelSet& ch, const SystemBudget& budget, const Utility& u,
                           const OracleOptions& opts);
OracleSolution grid_oracle(const ChannelSet& ch, const SystemBudget& budget, const Utility& u,
                           int resolution = 64);

/// Points of the simplex lattice {x >= 0, sum x = total} with `resolution` points
/// per free dimension, as columns, in lexicographic order of the integer coordinates.
RealMatrix simplex_lattice(Eigen::Index dimension, int resolution, double total);

}  // namespace optbf
