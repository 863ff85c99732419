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
#include "vibro/gaussian.hpp"

namespace vibro {

/// Nonnegative integer frequency per mode; an outcome m lands in bin w.m.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(IntVector omega);

  const IntVector& omega() const { return omega_; }
  int size() const { return static_cast<int>(omega_.size()); }
  int operator[](int i) const { return omega_[static_cast<std::size_t>(i)]; }
  /// w.m
  std::int64_t dot(const IntVector& m) const;
  int max() const;

 private:
  IntVector omega_;
};

/**
 * @brief Bins 0..omega_max with theta = 2 pi / (omega_max + 1).
 *
 * `offset` shifts every outcome by a fixed number of bins (index = w.m + offset
 * mod d). It is zero except for finite-temperature problems, where it moves the
 * negative emission frequencies onto nonnegative indices.
 */
struct SpectralGrid {
  std::int64_t omega_max{0};
  double theta{0.0};
  std::int64_t offset{0};

  SpectralGrid() = default;
  explicit SpectralGrid(std::int64_t omega_max, std::int64_t offset = 0);

  std::int64_t size() const { return omega_max + 1; }
  /// Bin index of frequency w.m (periodic in the grid size).
  std::int64_t bin(std::int64_t frequency) const;
  /// exp(-i k theta x) computed with exact index reduction.
  cplx phase(std::int64_t k, std::int64_t x) const;
};

struct FourierSeries {
  SpectralGrid grid;
  std::vector<cplx> values;
};

struct Spectrum {
  SpectralGrid grid;
  std::vector<double> values;
};

struct PositivePSample {
  RealVector x;
  RealVector y;
};

/// Squeezing below this is treated as vacuum in the closed form.
constexpr double kMinSqueezing = 1e-7;

/// Closed-form Fourier component G~(k) of a Gaussian state's grouped photon statistics.
cplx exact_fourier_gaussian(const GaussianCircuit& c, const WeightVector& w,
                            const SpectralGrid& grid, std::int64_t k);

/// All components k = 0..omega_max.
FourierSeries exact_fourier_series(const GaussianCircuit& c, const WeightVector& w,
                                   const SpectralGrid& grid);

Spectrum inverse_dft(const FourierSeries& f);
FourierSeries forward_dft(const Spectrum& s);

/// Per-bin spectrum error implied by a per-component error eps.
double parseval_bound(double per_component_error, const SpectralGrid& grid);

/// Draws one (x, y) pair per mode from the squeezed-vacuum positive P-function.
PositivePSample sample_positive_p(const RealVector& r0, std::uint64_t seed, std::uint64_t index);

EstimateWithBound montecarlo_fourier_positive_p(const GaussianCircuit& c, const WeightVector& w,
                                                const SpectralGrid& grid, std::int64_t k,
                                                std::size_t n_samples, std::uint64_t seed);

struct LiftedProblem {
  GaussianCircuit circuit;
  WeightVector weights;
  SpectralGrid grid;
};

/**
 * @brief Mode doubling for a thermal input.
 *
 * Mode M+i purifies the thermal occupation of mode i through a two-mode
 * squeezer with parameter s_i. Its weight is stored as (d - w_initial_i) so that
 * emission frequencies stay nonnegative modulo d; grid.offset holds the shift
 * photon_cutoff * max(w_initial).
 */
LiftedProblem finite_temperature_lift(const GaussianCircuit& c, const RealVector& s,
                                      const WeightVector& w_initial,
                                      const WeightVector& w_final, int photon_cutoff);

}  // namespace vibro
