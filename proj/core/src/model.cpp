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

#include "optbf/model.hpp"

#include "optbf/errors.hpp"

#include <cmath>
#include <random>
#include <string>

namespace optbf {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_noise(double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw DomainError("noise variance must be positive and finite, got " + std::to_string(sigma2));
  }
}

}  // namespace

ChannelSet ChannelSet::from_explicit(ComplexMatrix h, double sigma2) {
  check_noise(sigma2);
  if (h.rows() < 1 || h.cols() < 1) {
    throw ContractViolation("channel matrix must have at least one antenna and one user");
  }
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    if (!h.col(k).allFinite()) {
      throw ContractViolation("channel of user " + std::to_string(k) + " has a non-finite entry");
    }
    if (h.col(k).squaredNorm() == 0.0) {
      throw ContractViolation("channel of user " + std::to_string(k) + " is identically zero");
    }
  }
  return ChannelSet(std::move(h), sigma2);
}

ChannelSet ChannelSet::with_noise(double sigma2) const {
  check_noise(sigma2);
  return ChannelSet(h_, sigma2);
}

SystemBudget::SystemBudget(double total_power) : total_power_(total_power) {
  if (!(total_power > 0.0) || !std::isfinite(total_power)) {
    throw DomainError("power budget must be positive and finite");
  }
}

SystemBudget SystemBudget::from_snr_db(double snr_db, double sigma2) {
  check_noise(sigma2);
  return SystemBudget(sigma2 * std::pow(10.0, snr_db / 10.0));
}

std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial_index) {
  return splitmix64(seed ^ splitmix64(trial_index));
}

ChannelSet generate_rayleigh(std::uint64_t seed, std::uint64_t trial_index, Eigen::Index antennas,
                             Eigen::Index users, double sigma2) {
  if (antennas < 1 || users < 1) {
    throw ContractViolation("generate_rayleigh: N and K must be at least 1");
  }
  check_noise(sigma2);

  std::mt19937_64 engine(trial_stream_seed(seed, trial_index));
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

  for (;;) {
    ComplexMatrix h(antennas, users);
    for (Eigen::Index k = 0; k < users; ++k) {
      for (Eigen::Index n = 0; n < antennas; ++n) {
        const double re = normal(engine);
        const double im = normal(engine);
        h(n, k) = Complex(re, im);
      }
    }
    // A zero column has probability zero; redraw rather than fail if it ever happens.
    if ((h.colwise().squaredNorm().array() > 0.0).all()) {
      return ChannelSet::from_explicit(std::move(h), sigma2);
    }
  }
}

}  // namespace optbf
