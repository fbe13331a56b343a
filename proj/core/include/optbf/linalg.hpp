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

#include <Eigen/Dense>

#include <complex>

namespace optbf {

/// Dense complex matrix. Storage is column-major (Eigen default); column k of
/// a channel or beamforming matrix is the vector belonging to user k.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Relative tolerance for structural checks (Hermitian symmetry, unit norms).
inline constexpr double kStructuralTolerance = 1e-12;
/// Relative residual bound guaranteed by solve_hermitian.
inline constexpr double kSolveTolerance = 1e-10;

/// Which algebraic route regularized_apply takes.
///
/// kPrimal factors the N x N matrix I + H diag(lambda) H^H / sigma2.
/// kDual factors the K x K matrix sigma2 I + diag(lambda) H^H H and maps back
/// through H, which is cheaper when N > K.
enum class InverseForm { kPrimal, kDual };

bool all_finite(const ComplexMatrix& a);

/// True when max|A - A^H| <= rel_tol * max|A|.
bool is_hermitian(const ComplexMatrix& a, double rel_tol = kStructuralTolerance);

/// Solves A X = B for Hermitian positive-definite A.
///
/// Uses an LDL^H factorization followed by one step of iterative refinement.
/// Throws ContractViolation for non-square, non-Hermitian or non-conformable
/// input and SingularityError (carrying the smallest pivot magnitude) when A
/// is not numerically positive definite.
ComplexMatrix solve_hermitian(const ComplexMatrix& a, const ComplexMatrix& b);

/// Applies the regularized channel inverse
///   primal: (I_N + H diag(lambda) H^H / sigma2)^-1 H
///   dual:   H (sigma2 I_K + diag(lambda) H^H H)^-1 sigma2
/// Both forms are algebraically identical.
ComplexMatrix regularized_apply(const ComplexMatrix& h, const RealVector& lambda, double sigma2,
                                InverseForm form);

/// The cheaper of the two forms for an N x K channel.
inline InverseForm preferred_form(Eigen::Index antennas, Eigen::Index users) {
  return antennas > users ? InverseForm::kDual : InverseForm::kPrimal;
}

/// Frobenius norm of (a - b) relative to the Frobenius norm of b (absolute when b = 0).
double relative_difference(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace optbf
