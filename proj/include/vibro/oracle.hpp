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
#include <functional>
#include <vector>

#include "vibro/core.hpp"
#include "vibro/estimators.hpp"
#include "vibro/fourier.hpp"

namespace vibro {

/// Raised when the enumerated probability mass falls short of the requested tolerance.
class CutoffError : public NumericError {
 public:
  using NumericError::NumericError;
};

struct EnumerationConfig {
  /// Largest total photon number enumerated.
  int photon_cutoff{30};
  /// Largest accepted 1 - (enumerated mass).
  double mass_deficit_tol{1e-8};
};

struct EnumerationResult {
  Spectrum spectrum;
  double mass_deficit{0.0};
  std::size_t outcomes{0};
};

/// Calls f(m) for every m >= 0 of length `modes` with sum(m) == total, in colex order.
void for_each_outcome(int modes, int total, const std::function<void(const IntVector&)>& f);

/// |<m|U|n>|^2 = |Per(U_{m,n})|^2 / (m! n!).
double fock_probability(const UnitaryMatrix& u, const IntVector& n_in, const IntVector& m_out);

/// <m|W|n> through loop_hafnian_exact on the repeated loop matrix (size sum(m) + sum(n) <= 14).
cplx gaussian_amplitude(const SigmaSystem& sys, const IntVector& m_out, const IntVector& n_in);

/// Exact grouped spectrum of a Fock input through a passive circuit; sum(n) <= 8, M <= 8.
EnumerationResult enumerate_spectrum_fock(const UnitaryMatrix& u, const IntVector& n_in,
                                          const WeightVector& w, const SpectralGrid& grid);

/**
 * @brief Grouped spectrum of U D(alpha) S(r0)|n_in> over outcomes with at most
 * cfg.photon_cutoff photons.
 *
 * Frequencies above omega_max wrap modulo the grid size. Throws CutoffError when
 * the missing mass exceeds cfg.mass_deficit_tol.
 */
EnumerationResult enumerate_spectrum_gaussian(const GaussianCircuit& c, const IntVector& n_in,
                                              const WeightVector& w, const SpectralGrid& grid,
                                              const EnumerationConfig& cfg);

/// Bin indices drawn i.i.d. from a spectrum.
struct SampleSet {
  std::vector<std::int64_t> bins;
  std::uint64_t seed{0};
  /// 1 - sum of the source spectrum before renormalization.
  double mass_deficit{0.0};
};

struct SamplerRun {
  SampleSet samples;
  Spectrum empirical;
};

/// Inverse-CDF sampling of n_samples bins; sample i uses stream (seed, i).
SamplerRun emulate_sampler(const Spectrum& spectrum, std::size_t n_samples, std::uint64_t seed);

}  // namespace vibro
