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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "optbf/optbf.hpp"
#include "optbf/sim/config.hpp"
#include "optbf/sim/sweep.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace optbf;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ChannelSet rayleigh(test::Rng& rng, int n, int k) {
  return ChannelSet::from_explicit(rng.complex_gaussian(n, k), 1.0);
}

// --- 1 ---------------------------------------------------------------------
Verdict p1_correctness() {
  Verdict v;
  test::Rng rng(101);
  double worst_sinr = 0.0, worst_gap = 0.0, worst_kkt = 0.0;
  int max_iters = 0;
  const SinrTargets targets = SinrTargets::uniform(4, 1.0);
  for (int i = 0; i < 200; ++i) {
    const ChannelSet ch = rayleigh(rng, 4, 4);
    try {
      const P1Solution sol = solve_p1(ch, targets);
      const KktReport kkt = verify_kkt(ch, sol, targets);
      worst_sinr = std::max(worst_sinr, kkt.max_sinr_error);
      worst_gap = std::max(worst_gap, kkt.duality_gap);
      worst_kkt = std::max(worst_kkt, kkt.max_stationarity);
      max_iters = std::max(max_iters, sol.iterations);
    } catch (const Error& e) {
      v.require(false, "instance " + std::to_string(i) + ": " + e.what());
    }
  }
  v.require(worst_sinr <= 1e-8, "SINR error " + fmt("%.3g", worst_sinr));
  v.require(worst_gap <= 1e-6, "duality gap " + fmt("%.3g", worst_gap));
  v.require(worst_kkt <= 1e-7, "KKT residual " + fmt("%.3g", worst_kkt));
  if (v.pass) {
    v.detail = "max SINR err " + fmt("%.2g", worst_sinr) + ", gap " + fmt("%.2g", worst_gap) +
               ", KKT " + fmt("%.2g", worst_kkt) + ", max iters " + std::to_string(max_iters);
  }
  return v;
}

// --- 2 ---------------------------------------------------------------------
// The grid covers [0, 2 P_zf]^2: the optimal multipliers sum to the optimal
// power, which never exceeds the zero-forcing power for the same targets.
Verdict p1_vs_lambda_grid() {
  Verdict v;
  test::Rng rng(202);
  const SinrTargets targets = SinrTargets::uniform(2, 1.0);
  constexpr int kResolution = 200;
  double worst_ratio = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ChannelSet ch = rayleigh(rng, 4, 2);
    const double p1 = solve_p1(ch, targets).total_power;
    const double span = 2.0 * solve_target_powers(ch, zf(ch), targets).total();
    double best_grid = std::numeric_limits<double>::infinity();
    for (int a = 0; a < kResolution; ++a) {
      for (int b = 0; b < kResolution; ++b) {
        RealVector lambda(2);
        lambda << span * a / (kResolution - 1), span * b / (kResolution - 1);
        try {
          const Directions d = parameterized(ch, LagrangeParams(lambda));
          best_grid = std::min(best_grid, solve_target_powers(ch, d, targets).total());
        } catch (const InfeasibleError&) {
        }
      }
    }
    worst_ratio = std::max(worst_ratio, p1 / best_grid);
    v.require(p1 <= best_grid * (1.0 + 1e-3),
              "instance " + std::to_string(i) + ": P1/grid = " + fmt("%.6f", p1 / best_grid));
  }
  if (v.pass) v.detail = "worst P1/grid power ratio " + fmt("%.6f", worst_ratio);
  return v;
}

// --- 3 ---------------------------------------------------------------------
Verdict asymptotic_limits() {
  Verdict v;
  test::Rng rng(303);
  double low = 1.0, high = 1.0;
  int done = 0;
  while (done < 100) {
    const ChannelSet ch = rayleigh(rng, 8, 4);
    if (singular_value_ratio(ch.h()) <= kZfRankThreshold) continue;
    low = std::min(low, test::min_column_alignment(transmit_mmse(ch, SystemBudget(1e-6)).matrix(),
                                                   mrt(ch).matrix()));
    high = std::min(high, test::min_column_alignment(transmit_mmse(ch, SystemBudget(1e6)).matrix(),
                                                     zf(ch).matrix()));
    ++done;
  }
  v.require(low >= 0.999, "MRT alignment " + fmt("%.6f", low));
  v.require(high >= 0.999, "ZF alignment " + fmt("%.6f", high));
  if (v.pass) v.detail = "min alignment MRT " + fmt("%.8f", low) + ", ZF " + fmt("%.8f", high);
  return v;
}

// --- 4 ---------------------------------------------------------------------
Verdict identities() {
  Verdict v;
  test::Rng rng(404);
  double e_forms = 0.0, e_uplink = 0.0, e_mmse = 0.0, e_subset = 0.0, e_quad = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = rng.integer(1, 12);
    const int k = rng.integer(1, 12);
    const ChannelSet ch =
        ChannelSet::from_explicit(rng.complex_gaussian(n, k), rng.log_uniform(0.1, 10.0));
    const RealVector lambda = rng.uniform_vector(k, 0.0, 5.0);
    const LagrangeParams lp(lambda);

    e_forms = std::max(e_forms, relative_difference(
                                    regularized_apply(ch.h(), lambda, ch.sigma2(), InverseForm::kPrimal),
                                    regularized_apply(ch.h(), lambda, ch.sigma2(), InverseForm::kDual)));

    const Directions reference = parameterized(ch, lp);
    e_uplink = std::max(e_uplink, test::max_abs_diff(uplink_mmse(ch, lambda).matrix(), reference.matrix()));

    const SystemBudget budget(rng.log_uniform(0.01, 100.0));
    e_mmse = std::max(e_mmse, test::max_abs_diff(transmit_mmse(ch, budget).matrix(),
                                                 parameterized(ch, LagrangeParams::equal_share(k, budget)).matrix()));

    e_subset = std::max(e_subset, test::max_abs_diff(subset_directions(ch, lp, AntennaSubsets::full(n, k)).matrix(),
                                                     reference.matrix()));

    const PowerVector p(rng.uniform_vector(k, 0.1, 2.0));
    const QuadraticConstraintSet qc({total_power_constraint(n, k, p.total())}, RealVector::Ones(1));
    e_quad = std::max(e_quad, test::max_abs_diff(constrained_solution(ch, lp, qc, p), assemble(reference, p)));
  }
  v.require(e_forms <= 1e-10, "primal/dual " + fmt("%.3g", e_forms));
  v.require(e_uplink <= 1e-14, "uplink " + fmt("%.3g", e_uplink));
  v.require(e_mmse <= 1e-14, "transmit mmse " + fmt("%.3g", e_mmse));
  v.require(e_subset <= 1e-12, "antenna subsets " + fmt("%.3g", e_subset));
  v.require(e_quad <= 1e-12, "quadratic constraints " + fmt("%.3g", e_quad));
  if (v.pass) {
    v.detail = "forms " + fmt("%.2g", e_forms) + ", uplink " + fmt("%.2g", e_uplink) + ", mmse " +
               fmt("%.2g", e_mmse) + ", subsets " + fmt("%.2g", e_subset) + ", quadratic " +
               fmt("%.2g", e_quad);
  }
  return v;
}

// --- 5 ---------------------------------------------------------------------
sim::SweepResult sweep(int n, int k, const std::string& snr, int trials,
                       const std::string& schemes, int resolution = 64) {
  return sim::run_sweep(sim::config_from_values({{"n", std::to_string(n)},
                                                 {"k", std::to_string(k)},
                                                 {"snr", snr},
                                                 {"trials", std::to_string(trials)},
                                                 {"seed", "2026"},
                                                 {"schemes", schemes},
                                                 {"oracle_resolution", std::to_string(resolution)}}));
}

Verdict figure_ordering() {
  Verdict v;
  std::ostringstream detail;
  for (int n : {4, 12}) {
    const sim::SweepResult r = sweep(n, 4, "-10:5:30", 1000, "mrt,zf,mmse");
    for (std::size_t i = 0; i < r.rows.size(); i += 3) {
      const double snr = r.rows[i].snr_db;
      const double m = r.rows[i].mean_utility;
      const double z = r.rows[i + 1].mean_utility;
      const double e = r.rows[i + 2].mean_utility;
      const std::string at = "N=" + std::to_string(n) + " at " + fmt("%g dB", snr);
      if (n == 4) {
        if (snr == -10.0) v.require(m >= z, at + ": mrt < zf");
        if (snr == 30.0) v.require(z >= m, at + ": zf < mrt");
        v.require(e >= 0.98 * std::max(m, z), at + ": mmse below 98% of the best heuristic");
      } else {
        v.require(e > std::max(m, z), at + ": mmse does not dominate");
      }
      if (snr == -10.0 || snr == 30.0) {
        detail << "N=" << n << "@" << snr << "dB mrt/zf/mmse " << fmt("%.3f", m) << "/"
               << fmt("%.3f", z) << "/" << fmt("%.3f", e) << "; ";
      }
    }
  }
  if (v.pass) v.detail = detail.str();
  return v;
}

// --- 6 ---------------------------------------------------------------------
Verdict near_optimality() {
  Verdict v;
  const sim::SweepResult r = sweep(8, 2, "0,10,20", 50, "mmse,oracle", 64);
  std::ostringstream detail;
  for (std::size_t i = 0; i < r.rows.size(); i += 2) {
    const double ratio = r.rows[i].mean_utility / r.rows[i + 1].mean_utility;
    v.require(ratio >= 0.95, fmt("%g dB", r.rows[i].snr_db) + ": mmse/oracle " + fmt("%.4f", ratio));
    detail << fmt("%g dB", r.rows[i].snr_db) << " mmse/oracle " << fmt("%.4f", ratio) << "; ";
  }
  if (v.pass) v.detail = detail.str();
  return v;
}

// --- 7 ---------------------------------------------------------------------
Verdict determinism() {
  Verdict v;
  auto csv = [](unsigned threads) {
    sim::SweepConfig cfg = sim::config_from_values(
        {{"n", "4"}, {"k", "2"}, {"snr", "-10:10:30"}, {"trials", "100"}, {"seed", "77"},
         {"schemes", "mrt,zf,mmse,oracle,p1-reference"}, {"oracle_resolution", "16"}});
    cfg.threads = threads;
    std::ostringstream out;
    sim::write_csv(out, cfg, sim::run_sweep(cfg), "fixed");
    return out.str();
  };
  const std::string first = csv(1);
  v.require(first == csv(1), "repeated serial runs differ");
  v.require(first == csv(4), "serial and 4-thread runs differ");
  if (v.pass) v.detail = "serial, repeated and 4-thread CSVs identical";
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "P1 correctness on 200 random instances", 10.0, p1_correctness},
      {2, "P1 optimality versus lambda grid", 60.0, p1_vs_lambda_grid},
      {3, "transmit MMSE low/high SNR limits", 5.0, asymptotic_limits},
      {4, "matrix and duality identities", 10.0, identities},
      {5, "sum-rate ordering N=4 and N=12", 120.0, figure_ordering},
      {6, "mmse near-optimal versus grid oracle", 300.0, near_optimality},
      {7, "sweep determinism", 60.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass && seconds >= c.budget_seconds) {
      v.pass = false;
      v.detail = "took " + fmt("%.1f s", seconds) + ", budget " + fmt("%.0f s", c.budget_seconds);
    }
    std::printf("%s AC%d %s (%.2f s) - %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
