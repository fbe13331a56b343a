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

#include "optbf/errors.hpp"
#include "optbf/p1solver.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace optbf;

namespace {

ChannelSet two_user_instance() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
  return ChannelSet::from_explicit(h, 1.0);
}

// Minimum total power for two_user_instance() with unit targets, from an
// independent conic (SOCP) solve; see tests/oracles/p1_socp_oracle.py.
constexpr double kSocpTotalPower = 2.82842712840498;

// KKT stationarity evaluated at an arbitrary lambda with the structured beamformers.
double stationarity_at(const ChannelSet& ch, const SinrTargets& targets, const RealVector& lambda) {
  P1Solution sol = solve_p1(ch, targets);
  const Directions d = parameterized(ch, LagrangeParams(lambda));
  sol.lambda = LagrangeParams(lambda);
  sol.dirs = d;
  sol.p = solve_target_powers(ch, d, targets);
  return verify_kkt(ch, sol, targets).max_stationarity;
}

}  // namespace

TEST(SolveP1, SingleUserClosedForm) {
  const ChannelSet ch = ChannelSet::from_explicit(ComplexMatrix::Identity(2, 1), 1.0);
  const SinrTargets targets = SinrTargets::uniform(1, 1.0);
  const P1Solution sol = solve_p1(ch, targets);
  EXPECT_NEAR(sol.lambda[0], 1.0, 1e-14);
  EXPECT_NEAR(sol.p[0], 1.0, 1e-14);
  EXPECT_NEAR(sol.total_power, 1.0, 1e-14);
  EXPECT_LT(test::max_abs_diff(sol.dirs.matrix(), ComplexMatrix::Identity(2, 1)), 1e-15);
  EXPECT_LE(verify_kkt(ch, sol, targets).max_stationarity, 1e-14);
}

TEST(SolveP1, IdentityChannel) {
  const ChannelSet ch = ChannelSet::from_explicit(ComplexMatrix::Identity(2, 2), 1.0);
  const P1Solution sol = solve_p1(ch, SinrTargets::uniform(2, 1.0));
  for (int k = 0; k < 2; ++k) {
    EXPECT_NEAR(sol.lambda[k], 1.0, 1e-12);
    EXPECT_NEAR(sol.p[k], 1.0, 1e-12);
  }
  EXPECT_LT(test::max_abs_diff(sol.dirs.matrix(), ComplexMatrix::Identity(2, 2)), 1e-12);
}

TEST(SolveP1, MatchesConicOracleOnTwoUserInstance) {
  const ChannelSet ch = two_user_instance();
  const SinrTargets targets = SinrTargets::uniform(2, 1.0);
  const P1Solution sol = solve_p1(ch, targets);
  EXPECT_NEAR(sol.total_power / kSocpTotalPower, 1.0, 1e-6);
  EXPECT_NEAR(sol.lambda.sum(), sol.total_power, 1e-9 * sol.total_power);
  const KktReport kkt = verify_kkt(ch, sol, targets);
  EXPECT_LE(kkt.max_stationarity, 1e-8);
  EXPECT_LE(kkt.max_sinr_error, 1e-8);
  // Cheaper than serving the same targets with zero-forcing (total 4).
  EXPECT_LT(sol.total_power, 4.0);
}

TEST(SolveP1, PerturbedMultipliersBreakStationarity) {
  const ChannelSet ch = two_user_instance();
  const SinrTargets targets = SinrTargets::uniform(2, 1.0);
  const P1Solution sol = solve_p1(ch, targets);
  RealVector bumped = sol.lambda.values();
  bumped[0] *= 1.1;
  EXPECT_GT(stationarity_at(ch, targets, bumped), 1e-3);
  EXPECT_LE(stationarity_at(ch, targets, sol.lambda.values()), 1e-8);
}

TEST(SolveP1, FixedPointIsStationaryUnderTheMap) {
  test::Rng rng(41);
  const ChannelSet ch = ChannelSet::from_explicit(rng.complex_gaussian(4, 3), 1.0);
  const SinrTargets targets = SinrTargets::uniform(3, 1.0);
  const P1Solution sol = solve_p1(ch, targets);
  const RealVector next = p1_fixed_point_step(ch, targets, sol.lambda.values());
  EXPECT_LE((next - sol.lambda.values()).cwiseAbs().maxCoeff(), 1e-9 * sol.lambda.values().maxCoeff());
}

TEST(SolveP1, OptimalityPropertiesOnRandomInstances) {
  test::Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.integer(2, 6);
    const int k = rng.integer(1, n);
    const ChannelSet ch = ChannelSet::from_explicit(rng.complex_gaussian(n, k), 1.0);
    const SinrTargets targets(rng.uniform_vector(k, 0.2, 2.0));
    const P1Solution sol = solve_p1(ch, targets);
    const KktReport kkt = verify_kkt(ch, sol, targets);
    EXPECT_LE(kkt.max_sinr_error, 1e-8);
    EXPECT_LE(kkt.duality_gap, 1e-6);
    EXPECT_LE(kkt.max_stationarity, 1e-7);

    // Never worse than zero-forcing directions with the same targets.
    if (singular_value_ratio(ch.h()) > 1e-3) {
      const PowerVector zf_power = solve_target_powers(ch, zf(ch), targets);
      EXPECT_LE(sol.total_power, zf_power.total() * (1.0 + 1e-9));
    }
  }
}

TEST(SolveP1, PowerIsMonotoneInTargets) {
  test::Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const ChannelSet ch = ChannelSet::from_explicit(rng.complex_gaussian(4, 3), 1.0);
    RealVector gamma = rng.uniform_vector(3, 0.2, 1.0);
    const double base = solve_p1(ch, SinrTargets(gamma)).total_power;
    gamma[rng.integer(0, 2)] *= 2.0;
    const double raised = solve_p1(ch, SinrTargets(gamma)).total_power;
    EXPECT_GE(raised, base * (1.0 - 1e-12));
  }
}

TEST(SolveP1, ScaleInvariance) {
  test::Rng rng(44);
  const ChannelSet ch = ChannelSet::from_explicit(rng.complex_gaussian(4, 3), 1.0);
  const Complex c(0.0, 2.0);
  const ChannelSet scaled = ChannelSet::from_explicit(ch.h() * c, std::norm(c));
  const SinrTargets targets = SinrTargets::uniform(3, 1.0);
  const P1Solution a = solve_p1(ch, targets);
  const P1Solution b = solve_p1(scaled, targets);
  EXPECT_LE((a.lambda.values() - b.lambda.values()).norm() / a.lambda.values().norm(), 1e-9);
  EXPECT_LE((a.p.values() - b.p.values()).norm() / a.p.values().norm(), 1e-9);
  EXPECT_LE(test::max_abs_diff(a.dirs.matrix() * Complex(0.0, 1.0), b.dirs.matrix()), 1e-9);
}

TEST(SolveP1, InfeasibleTargetsDiverge) {
  const ChannelSet ch = ChannelSet::from_explicit(ComplexMatrix::Ones(1, 2), 1.0);
  EXPECT_THROW(solve_p1(ch, SinrTargets::uniform(2, 2.0)), InfeasibleError);
}

TEST(SolveP1, IterationCapReportsResidual) {
  test::Rng rng(45);
  const ChannelSet ch = ChannelSet::from_explicit(rng.complex_gaussian(4, 4), 1.0);
  P1Options opts;
  opts.max_iterations = 2;
  try {
    solve_p1(ch, SinrTargets::uniform(4, 1.0), opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.last_residual(), opts.tolerance);
  }
}

TEST(SolveP1, ContractChecks) {
  const ChannelSet ch = two_user_instance();
  EXPECT_THROW(solve_p1(ch, SinrTargets::uniform(3, 1.0)), ContractViolation);
  P1Options bad;
  bad.tolerance = 0.0;
  EXPECT_THROW(solve_p1(ch, SinrTargets::uniform(2, 1.0), bad), ContractViolation);
}
