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

#include "optbf/p2search.hpp"

#include "optbf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace optbf {
namespace {

void compositions(int remaining, Eigen::Index slot, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  const Eigen::Index last = static_cast<Eigen::Index>(current.size()) - 1;
  if (slot == last) {
    current[static_cast<std::size_t>(slot)] = remaining;
    out.push_back(current);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    current[static_cast<std::size_t>(slot)] = v;
    compositions(remaining - v, slot + 1, current, out);
  }
}

// SINRs for powers p over fixed directions summarized by the gain matrix.
void sinrs_from_gains(const RealMatrix& gains, const double* p, double sigma2, RealVector& out) {
  const Eigen::Index users = gains.rows();
  for (Eigen::Index k = 0; k < users; ++k) {
    double interference = sigma2;
    for (Eigen::Index j = 0; j < users; ++j) {
      if (j != k) interference += p[j] * gains(k, j);
    }
    out[k] = p[k] * gains(k, k) / interference;
  }
}

bool lexicographically_less(const RealVector& a, const RealVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

struct Candidate {
  double utility = -std::numeric_limits<double>::infinity();
  double power = std::numeric_limits<double>::infinity();
  RealVector lambda;
  RealVector p;
  bool valid = false;
};

// Strict total order: higher utility, then lower power, then lexicographic lambda, then p.
bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.utility != b.utility) return a.utility > b.utility;
  if (a.power != b.power) return a.power < b.power;
  if (a.lambda != b.lambda) return lexicographically_less(a.lambda, b.lambda);
  return lexicographically_less(a.p, b.p);
}

// Best power point for a fixed lambda over the given power lattice.
Candidate search_powers(const ChannelSet& ch, const RealVector& lambda, const RealMatrix& powers,
                        const Utility& u) {
  const Directions dirs = parameterized(ch, LagrangeParams(lambda));
  const RealMatrix gains = gain_matrix(ch, dirs.matrix());
  RealVector s(ch.users());
  Candidate best;
  Candidate trial;
  trial.valid = true;
  trial.lambda = lambda;
  for (Eigen::Index c = 0; c < powers.cols(); ++c) {
    sinrs_from_gains(gains, powers.col(c).data(), ch.sigma2(), s);
    trial.utility = u(s);
    trial.power = powers.col(c).sum();
    // Cheap pre-check avoids copying p for the common losing case.
    if (best.valid && trial.utility < best.utility) continue;
    trial.p = powers.col(c);
    if (better(trial, best)) best = trial;
  }
  return best;
}

Candidate search_lattice(const ChannelSet& ch, const RealMatrix& lambdas, const RealMatrix& powers,
                         const Utility& u, unsigned threads) {
  const Eigen::Index count = lambdas.cols();
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<Eigen::Index>(workers, std::max<Eigen::Index>(count, 1)));

  std::vector<Candidate> partial(workers);
  auto work = [&](unsigned w) {
    for (Eigen::Index c = w; c < count; c += workers) {
      Candidate cand = search_powers(ch, lambdas.col(c), powers, u);
      if (better(cand, partial[w])) partial[w] = std::move(cand);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  Candidate best;
  for (auto& cand : partial) {
    if (better(cand, best)) best = std::move(cand);
  }
  return best;
}

// Lattice with spacing `step` within +-span steps of `center` in the first D-1
// coordinates, the last coordinate absorbing the remainder; points leaving the
// simplex are dropped.
RealMatrix local_lattice(const RealVector& center, double step, int span, double total) {
  const Eigen::Index dim = center.size();
  if (dim == 1) return center;
  const Eigen::Index free_dims = dim - 1;
  const int width = 2 * span + 1;
  Eigen::Index combos = 1;
  for (Eigen::Index d = 0; d < free_dims; ++d) combos *= width;

  std::vector<RealVector> points;
  points.reserve(static_cast<std::size_t>(combos));
  const double slack = 1e-12 * total;
  for (Eigen::Index idx = 0; idx < combos; ++idx) {
    RealVector x(dim);
    Eigen::Index rest = idx;
    double used = 0.0;
    bool inside = true;
    for (Eigen::Index d = 0; d < free_dims; ++d) {
      const int offset = static_cast<int>(rest % width) - span;
      rest /= width;
      double v = center[d] + offset * step;
      if (v < -slack) {
        inside = false;
        break;
      }
      v = std::max(v, 0.0);
      x[d] = v;
      used += v;
    }
    if (!inside) continue;
    double last = total - used;
    if (last < -slack) continue;
    x[dim - 1] = std::max(last, 0.0);
    points.push_back(std::move(x));
  }
  RealMatrix out(dim, static_cast<Eigen::Index>(points.size()));
  for (std::size_t c = 0; c < points.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = points[c];
  return out;
}

}  // namespace

Utility Utility::weighted_sum_rate(RealVector weights) {
  if (weights.size() == 0 || !weights.allFinite() || !(weights.array() > 0.0).all()) {
    throw DomainError("weighted sum rate needs positive finite weights");
  }
  return Utility(UtilityKind::kWeightedSumRate, std::move(weights));
}

double Utility::operator()(const RealVector& sinrs) const {
  switch (kind_) {
    case UtilityKind::kSumRate:
      return optbf::sum_rate(sinrs);
    case UtilityKind::kMinSinr:
      return sinrs.size() == 0 ? 0.0 : sinrs.minCoeff();
    case UtilityKind::kWeightedSumRate: {
      if (weights_.size() != sinrs.size()) {
        throw ContractViolation("weighted sum rate: weight count must equal the user count");
      }
      double total = 0.0;
      for (Eigen::Index k = 0; k < sinrs.size(); ++k) total += weights_[k] * std::log2(1.0 + sinrs[k]);
      return total;
    }
  }
  return 0.0;
}

std::string_view to_string(UtilityKind kind) {
  switch (kind) {
    case UtilityKind::kSumRate:
      return "sumrate";
    case UtilityKind::kMinSinr:
      return "minsinr";
    case UtilityKind::kWeightedSumRate:
      return "weighted-sumrate";
  }
  return "unknown";
}

Utility parse_utility(std::string_view text) {
  if (text == "sumrate") return Utility::sum_rate();
  if (text == "minsinr") return Utility::min_sinr();
  throw ContractViolation("unknown utility '" + std::string(text) + "' (expected sumrate or minsinr)");
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kMrt:
      return "mrt";
    case Scheme::kZf:
      return "zf";
    case Scheme::kMmse:
      return "mmse";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "mrt") return Scheme::kMrt;
  if (text == "zf") return Scheme::kZf;
  if (text == "mmse") return Scheme::kMmse;
  throw ContractViolation("unknown scheme '" + std::string(text) + "' (expected mrt, zf or mmse)");
}

Directions scheme_directions(const ChannelSet& ch, Scheme scheme, const SystemBudget& budget) {
  switch (scheme) {
    case Scheme::kMrt:
      return mrt(ch);
    case Scheme::kZf:
      return zf(ch);
    case Scheme::kMmse:
      return transmit_mmse(ch, budget);
  }
  throw ContractViolation("unknown scheme");
}

SchemeEvaluation evaluate_scheme(const ChannelSet& ch, Scheme scheme, const SystemBudget& budget,
                                 PowerPolicy policy, const Utility& u) {
  const Directions dirs = scheme_directions(ch, scheme, budget);
  const PowerVector p = heuristic_power(policy, budget, ch, dirs);
  RealVector s = sinr(ch, assemble(dirs, p));
  const double value = u(s);
  return SchemeEvaluation{value, std::move(s), p.values()};
}

RealMatrix simplex_lattice(Eigen::Index dimension, int resolution, double total) {
  if (dimension < 1) throw ContractViolation("simplex_lattice: dimension must be at least 1");
  if (dimension == 1) return RealMatrix::Constant(1, 1, total);
  if (resolution < 2) throw ContractViolation("simplex_lattice: resolution must be at least 2");

  const int steps = resolution - 1;
  std::vector<std::vector<int>> points;
  std::vector<int> current(static_cast<std::size_t>(dimension), 0);
  compositions(steps, 0, current, points);

  RealMatrix out(dimension, static_cast<Eigen::Index>(points.size()));
  for (std::size_t c = 0; c < points.size(); ++c) {
    for (Eigen::Index d = 0; d < dimension; ++d) {
      out(d, static_cast<Eigen::Index>(c)) =
          total * static_cast<double>(points[c][static_cast<std::size_t>(d)]) / steps;
    }
  }
  return out;
}

OracleSolution grid_oracle(const ChannelSet& ch, const SystemBudget& budget, const Utility& u,
                           const OracleOptions& opts) {
  const Eigen::Index users = ch.users();
  if (users > 3) {
    throw UnsupportedSizeError("grid_oracle supports at most 3 users, got " + std::to_string(users));
  }
  if (opts.resolution < 2) {
    throw ContractViolation("grid_oracle: resolution must be at least 2");
  }
  const double total = budget.total_power();

  const RealMatrix lattice = simplex_lattice(users, opts.resolution, total);
  Candidate best = search_lattice(ch, lattice, lattice, u, opts.threads);

  if (opts.refine && users > 1) {
    constexpr int kRefineFactor = 10;
    const double step = total / (opts.resolution - 1) / kRefineFactor;
    const RealMatrix local_lambda = local_lattice(best.lambda, step, kRefineFactor, total);
    const RealMatrix local_power = local_lattice(best.p, step, kRefineFactor, total);
    Candidate refined = search_lattice(ch, local_lambda, local_power, u, opts.threads);
    if (better(refined, best)) best = std::move(refined);
  }

  LagrangeParams lambda(best.lambda);
  Directions dirs = parameterized(ch, lambda);
  PowerVector p(best.p);
  RealVector s = sinr(ch, assemble(dirs, p));
  const double value = u(s);
  return OracleSolution{std::move(lambda), std::move(p), std::move(dirs), std::move(s), value,
                        opts.resolution};
}

OracleSolution grid_oracle(const ChannelSet& ch, const SystemBudget& budget, const Utility& u,
                           int resolution) {
  OracleOptions opts;
  opts.resolution = resolution;
  return grid_oracle(ch, budget, u, opts);
}

}  // namespace optbf
