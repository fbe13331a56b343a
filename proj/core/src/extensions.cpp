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

#include "optbf/extensions.hpp"

#include "optbf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace optbf {
namespace {

double smallest_eigenvalue(const ComplexMatrix& a) {
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

void check_psd(const ComplexMatrix& q, Eigen::Index antennas, std::size_t constraint,
               Eigen::Index user) {
  const std::string where =
      "constraint " + std::to_string(constraint) + ", user " + std::to_string(user);
  if (q.rows() != antennas || q.cols() != antennas) {
    throw ContractViolation("weighting matrix has the wrong shape (" + where + ")");
  }
  if (!q.allFinite() || !is_hermitian(q)) {
    throw ContractViolation("weighting matrix is not Hermitian (" + where + ")");
  }
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(q, Eigen::EigenvaluesOnly);
  const RealVector& ev = eig.eigenvalues();
  const double norm = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() < -1e-10 * norm) {
    std::ostringstream msg;
    msg << "weighting matrix is not positive semidefinite (" << where << ", eigenvalue "
        << ev.minCoeff() << ")";
    throw ContractViolation(msg.str());
  }
}

}  // namespace

AntennaSubsets::AntennaSubsets(Mask masks) : masks_(std::move(masks)) {
  if (masks_.rows() < 1 || masks_.cols() < 1) {
    throw ContractViolation("antenna subsets need at least one antenna and one user");
  }
  for (Eigen::Index k = 0; k < masks_.cols(); ++k) {
    bool any = false;
    for (Eigen::Index n = 0; n < masks_.rows(); ++n) {
      const auto v = masks_(n, k);
      if (v > 1) throw ContractViolation("antenna mask entries must be 0 or 1");
      any = any || v == 1;
    }
    if (!any) {
      throw ContractViolation("user " + std::to_string(k) + " is served by no antenna");
    }
  }
}

AntennaSubsets AntennaSubsets::full(Eigen::Index antennas, Eigen::Index users) {
  return AntennaSubsets(Mask::Ones(antennas, users));
}

Directions subset_directions(const ChannelSet& ch, const LagrangeParams& lp,
                             const AntennaSubsets& subsets) {
  const Eigen::Index n = ch.antennas();
  const Eigen::Index users = ch.users();
  if (subsets.antennas() != n || subsets.users() != users || lp.size() != users) {
    throw ContractViolation("subset_directions: dimension mismatch");
  }
  const RealVector weights = lp.values() / ch.sigma2();

  ComplexMatrix raw = ComplexMatrix::Zero(n, users);
  for (Eigen::Index k = 0; k < users; ++k) {
    std::vector<Eigen::Index> active;
    for (Eigen::Index a = 0; a < n; ++a) {
      if (subsets.serves(a, k)) active.push_back(a);
    }
    const auto m = static_cast<Eigen::Index>(active.size());
    // Restricting to the served antennas gives exact zeros elsewhere.
    const ComplexMatrix h_sub = ch.h()(active, Eigen::all);
    if (h_sub.col(k).squaredNorm() == 0.0) {
      throw InfeasibleError("user " + std::to_string(k) +
                                " has a zero channel on every antenna that serves it",
                            static_cast<std::size_t>(k));
    }
    ComplexMatrix a = ComplexMatrix::Identity(m, m);
    a.noalias() += h_sub * weights.asDiagonal() * h_sub.adjoint();
    a = 0.5 * (a + a.adjoint()).eval();
    const ComplexMatrix x = solve_hermitian(a, h_sub.col(k));
    for (Eigen::Index j = 0; j < m; ++j) raw(active[static_cast<std::size_t>(j)], k) = x(j, 0);
  }
  return Directions::from_raw(std::move(raw), ch.h());
}

QuadraticConstraintSet::QuadraticConstraintSet(std::vector<QuadraticConstraint> constraints,
                                               RealVector mu)
    : constraints_(std::move(constraints)), mu_(std::move(mu)) {
  if (constraints_.empty()) throw ContractViolation("need at least one quadratic constraint");
  if (mu_.size() != static_cast<Eigen::Index>(constraints_.size())) {
    throw ContractViolation("multiplier count must equal the constraint count");
  }
  if (!mu_.allFinite() || (mu_.array() < 0.0).any()) {
    throw DomainError("constraint multipliers must be nonnegative and finite");
  }
  users_ = static_cast<Eigen::Index>(constraints_.front().per_user.size());
  if (users_ < 1 || constraints_.front().per_user.front().rows() < 1) {
    throw ContractViolation("constraints need at least one user and one antenna");
  }
  antennas_ = constraints_.front().per_user.front().rows();

  for (std::size_t l = 0; l < constraints_.size(); ++l) {
    const auto& c = constraints_[l];
    if (static_cast<Eigen::Index>(c.per_user.size()) != users_) {
      throw ContractViolation("constraint " + std::to_string(l) + " has the wrong user count");
    }
    if (!(c.limit >= 0.0) || !std::isfinite(c.limit)) {
      throw DomainError("constraint " + std::to_string(l) + " needs a finite nonnegative limit");
    }
    for (Eigen::Index k = 0; k < users_; ++k) {
      check_psd(c.per_user[static_cast<std::size_t>(k)], antennas_, l, k);
    }
  }
  for (Eigen::Index k = 0; k < users_; ++k) {
    const ComplexMatrix agg = aggregate(k);
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(agg, Eigen::EigenvaluesOnly);
    const RealVector& ev = eig.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    if (!(ev.minCoeff() > 1e-12 * scale) || !(scale > 0.0)) {
      std::ostringstream msg;
      msg << "weighted constraint sum for user " << k
          << " is not positive definite (smallest eigenvalue " << ev.minCoeff() << ")";
      throw ContractViolation(msg.str());
    }
  }
}

ComplexMatrix QuadraticConstraintSet::aggregate(Eigen::Index user) const {
  ComplexMatrix agg = ComplexMatrix::Zero(antennas_, antennas_);
  for (std::size_t l = 0; l < constraints_.size(); ++l) {
    agg += mu_[static_cast<Eigen::Index>(l)] * constraints_[l].per_user[static_cast<std::size_t>(user)];
  }
  return agg;
}

QuadraticConstraint total_power_constraint(Eigen::Index antennas, Eigen::Index users, double limit) {
  return QuadraticConstraint{
      std::vector<ComplexMatrix>(static_cast<std::size_t>(users),
                                 ComplexMatrix::Identity(antennas, antennas)),
      limit};
}

std::vector<QuadraticConstraint> per_antenna_constraints(Eigen::Index antennas, Eigen::Index users,
                                                         const RealVector& limits) {
  if (limits.size() != antennas) {
    throw ContractViolation("per_antenna_constraints: one limit per antenna is required");
  }
  std::vector<QuadraticConstraint> out;
  out.reserve(static_cast<std::size_t>(antennas));
  for (Eigen::Index l = 0; l < antennas; ++l) {
    ComplexMatrix q = ComplexMatrix::Zero(antennas, antennas);
    q(l, l) = 1.0;
    out.push_back(QuadraticConstraint{
        std::vector<ComplexMatrix>(static_cast<std::size_t>(users), q), limits[l]});
  }
  return out;
}

QuadraticConstraint leakage_constraint(const ChannelSet& ch, Eigen::Index victim, double limit) {
  if (victim < 0 || victim >= ch.users()) {
    throw ContractViolation("leakage_constraint: victim index out of range");
  }
  const ComplexMatrix outer = ch.channel(victim) * ch.channel(victim).adjoint();
  QuadraticConstraint c;
  c.limit = limit;
  for (Eigen::Index k = 0; k < ch.users(); ++k) {
    c.per_user.push_back(k == victim ? ComplexMatrix::Zero(ch.antennas(), ch.antennas()) : outer);
  }
  return c;
}

ComplexMatrix constrained_solution(const ChannelSet& ch, const LagrangeParams& lp,
                                   const QuadraticConstraintSet& qc, const PowerVector& p) {
  const Eigen::Index n = ch.antennas();
  const Eigen::Index users = ch.users();
  if (qc.antennas() != n || qc.users() != users || lp.size() != users || p.size() != users) {
    throw ContractViolation("constrained_solution: dimension mismatch");
  }
  const ComplexMatrix& h = ch.h();
  ComplexMatrix shift = h * (lp.values() / ch.sigma2()).asDiagonal() * h.adjoint();

  ComplexMatrix raw(n, users);
  for (Eigen::Index k = 0; k < users; ++k) {
    const ComplexMatrix agg = qc.aggregate(k);
    ComplexMatrix a = agg + shift;
    a = 0.5 * (a + a.adjoint()).eval();
    try {
      raw.col(k) = solve_hermitian(a, h.col(k));
    } catch (const SingularityError&) {
      const double smallest = smallest_eigenvalue(agg);
      std::ostringstream msg;
      msg << "constrained structure for user " << k
          << " is singular; smallest eigenvalue of the weighted constraint sum is " << smallest;
      throw SingularityError(msg.str(), std::abs(smallest));
    }
  }
  const Directions dirs = Directions::from_raw(std::move(raw), h);
  return assemble(dirs, p);
}

ConstraintUsage check_constraints(const ComplexMatrix& w, const QuadraticConstraintSet& qc) {
  if (w.rows() != qc.antennas() || w.cols() != qc.users()) {
    throw ContractViolation("check_constraints: beamforming matrix does not match the constraints");
  }
  ConstraintUsage out;
  out.usage.resize(qc.size());
  out.pass.resize(static_cast<std::size_t>(qc.size()));
  for (Eigen::Index l = 0; l < qc.size(); ++l) {
    const auto& c = qc.constraints()[static_cast<std::size_t>(l)];
    double used = 0.0;
    for (Eigen::Index k = 0; k < w.cols(); ++k) {
      used += w.col(k).dot(c.per_user[static_cast<std::size_t>(k)] * w.col(k)).real();
    }
    out.usage[l] = used;
    const bool ok = used <= c.limit * (1.0 + 1e-9);
    out.pass[static_cast<std::size_t>(l)] = ok;
    out.all_pass = out.all_pass && ok;
  }
  return out;
}

bool multipliers_consistent(const LagrangeParams& lp, const QuadraticConstraintSet& qc,
                            double rel_tol) {
  double p_max = 0.0;
  double weighted = 0.0;
  for (Eigen::Index l = 0; l < qc.size(); ++l) {
    const double limit = qc.constraints()[static_cast<std::size_t>(l)].limit;
    p_max = std::max(p_max, limit);
    weighted += limit * qc.mu()[l];
  }
  const double scale = std::max(p_max, std::numeric_limits<double>::min());
  return std::abs(lp.sum() - p_max) <= rel_tol * scale &&
         std::abs(weighted - p_max) <= rel_tol * scale;
}

}  // namespace optbf
