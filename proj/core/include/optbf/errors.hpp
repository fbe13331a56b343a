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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optbf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller (bad shape, non-Hermitian input, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A scalar argument lies outside its mathematical domain (e.g. non-positive noise variance).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be invertible is numerically singular.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double magnitude)
      : Error(what), magnitude_(magnitude) {}

  /// Offending pivot or eigenvalue magnitude.
  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

/// The requested beamforming or power allocation does not exist for this scenario.
class InfeasibleError : public Error {
 public:
  static constexpr std::size_t kNoUser = static_cast<std::size_t>(-1);

  explicit InfeasibleError(const std::string& what, std::size_t user = kNoUser)
      : Error(what), user_(user) {}

  /// Zero-based user index responsible for the failure, or kNoUser.
  std::size_t user() const noexcept { return user_; }

 private:
  std::size_t user_;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// The problem size is outside what an algorithm supports.
class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace optbf
