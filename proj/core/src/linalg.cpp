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

#include "optbf/linalg.hpp"

#include "optbf/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace optbf {

bool all_finite(const ComplexMatrix& a) {
  return a.allFinite();
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  const double scale = a.cwiseAbs().maxCoeff();
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  return asym <= rel_tol * scale;
}

ComplexMatrix solve_hermitian(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols()) {
    throw ContractViolation("solve_hermitian: matrix is not square");
  }
  if (a.rows() != b.rows()) {
    throw ContractViolation("solve_hermitian: right-hand side has incompatible row count");
  }
  if (!a.allFinite() || !b.allFinite()) {
    throw ContractViolation("solve_hermitian: non-finite input");
  }
  if (!is_hermitian(a)) {
    throw ContractViolation("solve_hermitian: matrix is not Hermitian");
  }
  if (a.rows() == 0) return b;

  const Eigen::LDLT<ComplexMatrix> ldlt(a);
  const RealVector pivots = ldlt.vectorD().real();
  const double largest = pivots.cwiseAbs().maxCoeff();
  const double smallest = pivots.minCoeff();
  const double floor = largest * static_cast<double>(a.rows()) *
                       std::numeric_limits<double>::epsilon();
  if (ldlt.info() != Eigen::Success || !(smallest > floor)) {
    std::ostringstream msg;
    msg << "solve_hermitian: matrix is not numerically positive definite (smallest pivot "
        << smallest << ", largest " << largest << ")";
    throw SingularityError(msg.str(), std::abs(smallest));
  }

  ComplexMatrix x = ldlt.solve(b);
  const ComplexMatrix residual = b - a * x;
  x += ldlt.solve(residual);
  return x;
}

ComplexMatrix regularized_apply(const ComplexMatrix& h, const RealVector& lambda, double sigma2,
                                InverseForm form) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw DomainError("regularized_apply: noise variance must be positive and finite");
  }
  if (lambda.size() != h.cols()) {
    throw ContractViolation("regularized_apply: lambda length must equal the user count");
  }
  if (!lambda.allFinite() || (lambda.array() < 0.0).any()) {
    throw DomainError("regularized_apply: lambda must be nonnegative and finite");
  }

  const Eigen::Index n = h.rows();
  const Eigen::Index k = h.cols();

  if (form == InverseForm::kPrimal) {
    ComplexMatrix a = ComplexMatrix::Identity(n, n);
    a.noalias() += h * (lambda / sigma2).asDiagonal() * h.adjoint();
    // Restore exact symmetry lost to rounding in the product.
    a = 0.5 * (a + a.adjoint()).eval();
    return solve_hermitian(a, h);
  }

  // sigma2 I + diag(lambda) H^H H is not Hermitian once lambda is non-uniform,
  // so it takes a pivoted LU. Its spectrum is sigma2 + eig(L^1/2 G L^1/2) > 0.
  ComplexMatrix b = ComplexMatrix::Identity(k, k) * sigma2;
  b.noalias() += lambda.asDiagonal() * (h.adjoint() * h);
  const Eigen::PartialPivLU<ComplexMatrix> lu(b);
  const ComplexMatrix rhs = ComplexMatrix::Identity(k, k) * sigma2;
  return h * lu.solve(rhs);
}

double relative_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double denom = b.norm();
  const double diff = (a - b).norm();
  return denom > 0.0 ? diff / denom : diff;
}

}  // namespace optbf
