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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vibro/core.hpp"
#include "vibro/fourier.hpp"
#include "vibro/gaussian.hpp"
#include "vibro/sparse.hpp"

namespace vibro::cli {

enum class Mode { GaussianExact, FockEstimate, FockSqueezedEstimate, Oracle, Peaks, FiniteTemperature };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct EstimatorSpec {
  std::optional<double> epsilon;
  double confidence{0.99};
  std::optional<std::size_t> n_samples;
  bool exhaustive{false};
};

struct PeaksSpec {
  int t{10};
  int buckets{64};
  int rounds{12};
  double epsilon{1e-3};
};

/// Parsed problem document. Exactly one of `circuit` and `doktorov` is set.
struct ProblemSpec {
  Mode mode{Mode::GaussianExact};
  std::optional<GaussianCircuit> circuit;
  std::optional<DoktorovSpec> doktorov;
  IntVector weights;
  std::int64_t omega_max{0};
  std::optional<IntVector> input_fock;
  EstimatorSpec estimator;
  std::optional<std::uint64_t> seed;
  std::optional<int> cutoff;
  /// Two-mode squeezing per mode for a thermal input.
  std::optional<std::vector<double>> temperature;
  /// Initial-state frequencies for the finite-temperature route (defaults to weights).
  std::optional<IntVector> initial_weights;
  PeaksSpec peaks;

  /// The Gaussian circuit, built from the Doktorov parameters when needed.
  GaussianCircuit resolved_circuit() const;
};

/// Validates a JSON document; DomainError messages name the offending field.
ProblemSpec parse_spec(const nlohmann::json& doc);
nlohmann::json spec_to_json(const ProblemSpec& spec);

struct RunOptions {
  std::string out_dir{"."};
  std::optional<Mode> route;
  std::optional<std::uint64_t> seed;
  bool emit_fourier{false};
  bool compare_oracle{false};
  double resolution{1.0};
};

/// Seed precedence: flag, then spec, then VIBRO_SEED, then 0.
std::uint64_t resolve_seed(const RunOptions& opt, const ProblemSpec& spec);

struct ComponentReport {
  std::int64_t k{0};
  cplx value{0.0};
  double std_error{0.0};
  double analytic_bound{0.0};
  std::size_t n_samples{0};
};

struct SpectrumReport {
  Mode route{Mode::GaussianExact};
  SpectralGrid grid;
  std::vector<double> spectrum;
  std::vector<cplx> fourier;
  /// Per-bin error bound; present for estimator routes.
  std::optional<double> error_bound;
  std::vector<ComponentReport> components;
  std::vector<Peak> peaks;
  std::optional<double> mass_deficit;
  /// Second route for overlays (the enumeration oracle).
  std::vector<double> oracle_spectrum;
  std::optional<double> oracle_max_diff;
  std::size_t samples_used{0};
  std::uint64_t seed{0};
};

SpectrumReport execute(const ProblemSpec& spec, const RunOptions& opt);

nlohmann::json report_to_json(const SpectrumReport& r);

/// Writes the report's data blocks: plot.dat, plus plot_overlay.dat for dual-route reports.
void emit_plot_data(const SpectrumReport& r, const std::string& out_dir, double resolution);

/// spectrum.csv, fourier.csv (optional), report.json, plot data.
void write_outputs(const SpectrumReport& r, const RunOptions& opt);

/// Formats a double with 17 significant digits.
std::string fmt17(double x);

/// Entry point of the `vibro` executable; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace vibro::cli
