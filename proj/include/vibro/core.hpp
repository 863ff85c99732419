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

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vibro {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using IntVector = std::vector<int>;

/// Bad input: wrong shape, out-of-range parameter, schema violation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: non-symplectic input, singular system, residual too large.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cost guard was exceeded.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

constexpr double kUnitaryTol = 1e-10;
constexpr double kSymplecticTol = 1e-8;

double max_abs(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);
void require_finite(const ComplexMatrix& m, const std::string& what);
void require_square(const ComplexMatrix& m, const std::string& what);

/// Square matrix with U^dagger U = I checked at construction.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  explicit UnitaryMatrix(ComplexMatrix m, double tol = kUnitaryTol);

  static UnitaryMatrix identity(int m);

  const ComplexMatrix& matrix() const { return m_; }
  int modes() const { return static_cast<int>(m_.rows()); }

  UnitaryMatrix operator*(const UnitaryMatrix& other) const;
  UnitaryMatrix adjoint() const;

 private:
  ComplexMatrix m_;
};

/// Monte Carlo estimate with its empirical and analytic error.
struct EstimateWithBound {
  cplx value{0.0, 0.0};
  double std_error{0.0};
  std::size_t n_samples{1};
  /// Hoeffding radius times the worst-case magnitude of a single term.
  double analytic_bound{0.0};
  double confidence{0.99};
};

/// Sampling controls shared by every Monte Carlo routine.
struct SampleSpec {
  std::size_t n_samples{1000};
  std::uint64_t seed{0};
  double confidence{0.99};
  /// Sum over the whole sample space instead of sampling.
  bool exhaustive{false};
};

/// Nearest unitary in Frobenius norm (polar factor).
ComplexMatrix nearest_unitary(const ComplexMatrix& m);

/// Spectral norm (largest singular value).
double spectral_norm(const ComplexMatrix& m);

/// Number of photons, n_sum.
int total(const IntVector& n);

double log_factorial(int n);
double factorial(int n);
/// Product of factorials of the entries.
double factorial_product(const IntVector& n);
double binomial(int n, int k);

}  // namespace vibro
