/**
 * Copyright 2026 The Vibro Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vibro/core.hpp"

#include <cmath>
#include <numeric>

namespace vibro {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_finite(const ComplexMatrix& m, const std::string& what) {
  if (!all_finite(m)) throw NumericError(what + ": non-finite entry");
}

void require_square(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() != m.cols()) {
    throw DomainError(what + ": expected a square matrix, got " + std::to_string(m.rows()) +
                      "x" + std::to_string(m.cols()));
  }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  require_square(m_, "UnitaryMatrix");
  require_finite(m_, "UnitaryMatrix");
  const auto n = m_.rows();
  const double err = max_abs(m_.adjoint() * m_ - ComplexMatrix::Identity(n, n));
  if (err > tol) {
    throw DomainError("UnitaryMatrix: |U^dag U - I|_max = " + std::to_string(err) +
                      " exceeds tolerance");
  }
}

UnitaryMatrix UnitaryMatrix::identity(int m) {
  return UnitaryMatrix(ComplexMatrix::Identity(m, m));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& other) const {
  if (modes() != other.modes()) throw DomainError("UnitaryMatrix product: dimension mismatch");
  return UnitaryMatrix(m_ * other.m_);
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint()); }

ComplexMatrix nearest_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

int total(const IntVector& n) { return std::accumulate(n.begin(), n.end(), 0); }

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double factorial_product(const IntVector& n) {
  double f = 1.0;
  for (int v : n) f *= factorial(v);
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return std::round(b);
}

}  // namespace vibro
