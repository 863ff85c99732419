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
#include "vibro/fourier.hpp"

namespace vibro {

/// k -> G~(k) for k in [0, d).
using FourierOracle = std::function<cplx(std::int64_t)>;

struct SparseRecoveryConfig {
  /// Grid size; a power of two.
  std::int64_t d{1 << 20};
  /// Number of peaks reported.
  int t{10};
  /// Buckets per round; a power of two with buckets >= 4 t and d / buckets >= 64.
  int buckets{64};
  int n_rounds{12};
  std::uint64_t seed{0};
  /// Reported peaks have value >= epsilon. Buckets above epsilon / 4 are examined,
  /// and a bucket counts as a single clean peak when its shifted sums agree within epsilon / 8.
  double epsilon{1e-3};
};

struct Peak {
  std::int64_t omega{0};
  double value{0.0};
};

struct PeakList {
  /// Sorted by value, descending; ties go to the lower omega.
  std::vector<Peak> entries;
  std::size_t oracle_calls{0};
  int rounds_used{0};
};

/// Thrown when too many buckets stay unresolved after the last round.
class RecoveryIncomplete : public NumericError {
 public:
  RecoveryIncomplete(const std::string& what, PeakList partial)
      : NumericError(what), partial_(std::move(partial)) {}
  const PeakList& partial() const { return partial_; }

 private:
  PeakList partial_;
};

/**
 * @brief Largest spectrum components from Fourier-component queries.
 *
 * Each round permutes the spectrum with a random odd multiplier and shift,
 * splits it into buckets with a flat-top window, locates the single frequency
 * of each clean bucket by phase estimation over shifted queries, and subtracts
 * what was found from later rounds. Buckets holding two or more peaks fail a
 * consistency test and wait for a later round with a different permutation.
 */
PeakList recover_peaks(const FourierOracle& oracle, const SparseRecoveryConfig& cfg);

/// Exact response of the bucket window at integer offset nu, for grid size d.
double window_response(std::int64_t d, int buckets, std::int64_t nu);

/// Smallest power of two >= n.
std::int64_t next_pow2(std::int64_t n);

/**
 * @brief recover_peaks fed by fourier_fock estimates.
 *
 * The grid is padded to a power of two (cfg.d is overwritten). Component k uses
 * the seed component_seed(spec.seed, k). spec.n_samples == 0 (and not exhaustive)
 * means plan_samples(cfg.epsilon, spec.confidence).
 */
PeakList peaks_fock_pipeline(const UnitaryMatrix& u, const WeightVector& w, std::int64_t omega_max,
                             const IntVector& n, SparseRecoveryConfig cfg, SampleSpec spec);

}  // namespace vibro
