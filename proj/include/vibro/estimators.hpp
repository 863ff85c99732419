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

#include <cstdint>
#include <vector>

#include "vibro/core.hpp"
#include "vibro/fourier.hpp"
#include "vibro/gaussian.hpp"

namespace vibro {

/**
 * @brief Matrix, loop weights and normalization of a Gaussian unitary's Fock amplitudes.
 *
 * For W = D(xi) U2 S(r) U1,
 *   <m|W|n> = lhaf(sigma~) / (z_norm sqrt(m! n!)),
 * where sigma~ repeats row/column i of the first block m_i times and of the
 * second block n_i times, and its diagonal holds the matching entries of zeta.
 */
struct SigmaSystem {
  ComplexMatrix sigma;
  ComplexVector zeta;
  /// Z, with 1/Z = <0|W|0>.
  cplx z_norm{1.0};

  int modes() const { return static_cast<int>(sigma.rows() / 2); }
};

SigmaSystem build_sigma_system(const BlochMessiahForm& f);

/// Index list selecting output copies (block 1, m_i each) then input copies (block 2, n_i each).
std::vector<int> sigma_indices(const IntVector& out_reps, const IntVector& in_reps);

/// The repeated loop matrix: repeated sigma with diagonal replaced by repeated zeta.
ComplexMatrix assemble_loop_matrix(const SigmaSystem& sys, const IntVector& out_reps,
                                   const IntVector& in_reps);

/// Two-sided Hoeffding radius for a mean of N terms in [-1, 1].
double hoeffding_radius(double confidence, std::size_t n_samples);

/// N = ceil(2 ln(2 / (1 - confidence)) / epsilon^2).
std::size_t plan_samples(double epsilon, double confidence);

/// Seed for component k of a series, so different components use unrelated streams.
std::uint64_t component_seed(std::uint64_t seed, std::int64_t k);

/**
 * @brief Unbiased estimate of Per(B_{n,n}) / n! from random roots of unity.
 *
 * Modes with n_i = 0 are dropped. Exhaustive mode averages over every root tuple.
 */
EstimateWithBound gurvits_generalized(const ComplexMatrix& b, const IntVector& n,
                                      const SampleSpec& spec);

/// G~(k) = <n|V|n> with V = U^dag diag(exp(-i k theta w)) U, through gurvits_generalized.
EstimateWithBound fourier_fock(const UnitaryMatrix& u, const WeightVector& w,
                               const SpectralGrid& grid, std::int64_t k, const IntVector& n,
                               const SampleSpec& spec);

/// Kan hafnian estimator over v in {0,1}^n.
EstimateWithBound kan_hafnian_estimate(const ComplexMatrix& sigma, const SampleSpec& spec);

/// Hafnian of sigma with row/column i repeated n_i times, via binomially weighted v.
EstimateWithBound kan_hafnian_repeated(const ComplexMatrix& sigma, const IntVector& n,
                                       const SampleSpec& spec);

/// Loop hafnian of (sigma off the diagonal, mu on it); samples v and the edge count r.
EstimateWithBound kan_loop_hafnian_estimate(const ComplexMatrix& sigma, const ComplexVector& mu,
                                            const SampleSpec& spec);

/// <n|W|n> for W = D(xi) U2 S(r) U1 with the factors' own phases, through its loop hafnian.
EstimateWithBound fock_expectation_estimate(const BlochMessiahForm& f, const IntVector& n,
                                            const SampleSpec& spec);

/// G~(k) for a squeezed, displaced Fock input.
EstimateWithBound fourier_fock_squeezed(const GaussianCircuit& c, const WeightVector& w,
                                        const SpectralGrid& grid, std::int64_t k,
                                        const IntVector& n, const SampleSpec& spec);

/// Estimated series with per-component diagnostics.
struct EstimatedSeries {
  FourierSeries series;
  std::vector<EstimateWithBound> components;
  /// sqrt(2) times the largest per-part analytic_bound: bounds |error| of every component,
  /// and hence of every spectrum bin.
  double max_bound{0.0};
};

/// fourier_fock for k = 0..d/2 with component seeds; the rest follows by conjugation.
EstimatedSeries fourier_fock_series(const UnitaryMatrix& u, const WeightVector& w,
                                    const SpectralGrid& grid, const IntVector& n,
                                    const SampleSpec& spec);

EstimatedSeries fourier_fock_squeezed_series(const GaussianCircuit& c, const WeightVector& w,
                                             const SpectralGrid& grid, const IntVector& n,
                                             const SampleSpec& spec);

}  // namespace vibro
