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

#include "vibro/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vibro/estimators.hpp"
#include "vibro/oracle.hpp"

namespace vibro::cli {

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitNumeric = 3;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw DomainError(field + ": " + msg);
}

const json& require(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.contains(key)) fail(path + key, "missing required field");
  return doc.at(key);
}

double to_real(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

std::int64_t to_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<std::int64_t>();
}

cplx to_complex(const json& v, const std::string& field) {
  if (v.is_number()) return {to_real(v, field), 0.0};
  if (!v.is_array() || v.size() != 2) fail(field, "expected a number or an [re, im] pair");
  return {to_real(v[0], field + "[0]"), to_real(v[1], field + "[1]")};
}

std::vector<double> real_list(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_real(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

IntVector int_list(const json& v, const std::string& field, bool nonneg) {
  if (!v.is_array()) fail(field, "expected an array");
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const std::int64_t x = to_int(v[i], f);
    if (nonneg && x < 0) fail(f, "must be >= 0");
    if (x > std::numeric_limits<int>::max() || x < std::numeric_limits<int>::min()) fail(f, "out of range");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

ComplexVector complex_list(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array");
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = to_complex(v[i], field + "[" + std::to_string(i) + "]");
  }
  return out;
}

UnitaryMatrix unitary_from(const json& v, const std::string& field) {
  const ComplexVector flat = complex_list(v, field);
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
  if (n < 1 || n * n != flat.size()) fail(field, "expected M*M row-major entries");
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = flat(i * n + j);
  }
  try {
    return UnitaryMatrix(m);
  } catch (const DomainError& e) {
    fail(field, e.what());
  }
}

RealVector to_eigen(const std::vector<double>& v) {
  RealVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json unitary_json(const UnitaryMatrix& u) {
  json a = json::array();
  for (Eigen::Index i = 0; i < u.matrix().rows(); ++i) {
    for (Eigen::Index j = 0; j < u.matrix().cols(); ++j) a.push_back(complex_json(u.matrix()(i, j)));
  }
  return a;
}

bool is_passive(const GaussianCircuit& c) {
  return c.r0.cwiseAbs().maxCoeff() == 0.0 && c.alpha.cwiseAbs().maxCoeff() == 0.0;
}

std::size_t samples_for(const EstimatorSpec& e) {
  if (e.n_samples) return *e.n_samples;
  if (e.epsilon) return plan_samples(*e.epsilon, e.confidence);
  return 1000;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw DomainError("out: cannot write " + p.string());
  f << text;
}

}  // namespace

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::GaussianExact: return "gaussian-exact";
    case Mode::FockEstimate: return "fock-estimate";
    case Mode::FockSqueezedEstimate: return "fock-squeezed-estimate";
    case Mode::Oracle: return "oracle";
    case Mode::Peaks: return "peaks";
    case Mode::FiniteTemperature: return "finite-temperature";
  }
  return "gaussian-exact";
}

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::GaussianExact, Mode::FockEstimate, Mode::FockSqueezedEstimate, Mode::Oracle,
                 Mode::Peaks, Mode::FiniteTemperature}) {
    if (mode_name(m) == s) return m;
  }
  fail("mode", "unknown mode '" + s + "'");
}

GaussianCircuit ProblemSpec::resolved_circuit() const {
  if (circuit) return *circuit;
  return doktorov_to_circuit(*doktorov);
}

ProblemSpec parse_spec(const json& doc) {
  if (!doc.is_object()) fail("spec", "expected a JSON object");
  ProblemSpec s;
  const json& mode = require(doc, "mode", "");
  if (!mode.is_string()) fail("mode", "expected a string");
  s.mode = parse_mode(mode.get<std::string>());

  const bool has_c = doc.contains("circuit");
  const bool has_d = doc.contains("doktorov");
  if (has_c == has_d) fail("circuit", "exactly one of 'circuit' and 'doktorov' must be present");
  if (has_c) {
    const json& c = doc.at("circuit");
    if (!c.is_object()) fail("circuit", "expected an object");
    const UnitaryMatrix u = unitary_from(require(c, "unitary", "circuit."), "circuit.unitary");
    const int m = u.modes();
    RealVector r0 = RealVector::Zero(m);
    ComplexVector alpha = ComplexVector::Zero(m);
    if (c.contains("r0")) {
      r0 = to_eigen(real_list(c.at("r0"), "circuit.r0"));
      if (r0.size() != m) fail("circuit.r0", "length must equal the number of modes");
      for (int i = 0; i < m; ++i) {
        if (r0(i) < 0.0) fail("circuit.r0[" + std::to_string(i) + "]", "must be >= 0");
      }
    }
    if (c.contains("alpha")) {
      alpha = complex_list(c.at("alpha"), "circuit.alpha");
      if (alpha.size() != m) fail("circuit.alpha", "length must equal the number of modes");
    }
    s.circuit = GaussianCircuit(u, r0, alpha);
  } else {
    const json& d = doc.at("doktorov");
    if (!d.is_object()) fail("doktorov", "expected an object");
    DoktorovSpec k;
    k.omega_i = to_eigen(real_list(require(d, "omega_i", "doktorov."), "doktorov.omega_i"));
    k.omega_f = to_eigen(real_list(require(d, "omega_f", "doktorov."), "doktorov.omega_f"));
    k.u_r = unitary_from(require(d, "u_r", "doktorov."), "doktorov.u_r");
    k.delta = to_eigen(real_list(require(d, "delta", "doktorov."), "doktorov.delta"));
    const auto m = k.u_r.modes();
    if (k.omega_i.size() != m || k.omega_f.size() != m || k.delta.size() != m) {
      fail("doktorov", "omega_i, omega_f, delta and u_r must have matching sizes");
    }
    for (int i = 0; i < m; ++i) {
      if (!(k.omega_i(i) > 0.0)) fail("doktorov.omega_i[" + std::to_string(i) + "]", "must be > 0");
      if (!(k.omega_f(i) > 0.0)) fail("doktorov.omega_f[" + std::to_string(i) + "]", "must be > 0");
    }
    s.doktorov = k;
  }
  const int m = has_c ? s.circuit->modes() : s.doktorov->u_r.modes();

  s.weights = int_list(require(doc, "weights", ""), "weights", true);
  if (static_cast<int>(s.weights.size()) != m) fail("weights", "length must equal the number of modes");
  if (std::all_of(s.weights.begin(), s.weights.end(), [](int v) { return v == 0; })) {
    fail("weights", "at least one entry must be > 0");
  }
  s.omega_max = to_int(require(doc, "omega_max", ""), "omega_max");
  if (s.omega_max < 0) fail("omega_max", "must be >= 0");

  if (doc.contains("input_fock")) {
    s.input_fock = int_list(doc.at("input_fock"), "input_fock", true);
    if (static_cast<int>(s.input_fock->size()) != m) fail("input_fock", "length must equal the number of modes");
  }
  if (doc.contains("estimator")) {
    const json& e = doc.at("estimator");
    if (!e.is_object()) fail("estimator", "expected an object");
    if (e.contains("epsilon")) {
      s.estimator.epsilon = to_real(e.at("epsilon"), "estimator.epsilon");
      if (!(*s.estimator.epsilon > 0.0)) fail("estimator.epsilon", "must be > 0");
    }
    if (e.contains("confidence")) {
      s.estimator.confidence = to_real(e.at("confidence"), "estimator.confidence");
      if (!(s.estimator.confidence > 0.0 && s.estimator.confidence < 1.0)) {
        fail("estimator.confidence", "must lie in (0, 1)");
      }
    }
    if (e.contains("n_samples")) {
      const std::int64_t n = to_int(e.at("n_samples"), "estimator.n_samples");
      if (n < 1) fail("estimator.n_samples", "must be >= 1");
      s.estimator.n_samples = static_cast<std::size_t>(n);
    }
    if (s.estimator.epsilon && s.estimator.n_samples) {
      fail("estimator", "give either epsilon or n_samples, not both");
    }
    if (e.contains("exhaustive")) {
      if (!e.at("exhaustive").is_boolean()) fail("estimator.exhaustive", "expected a boolean");
      s.estimator.exhaustive = e.at("exhaustive").get<bool>();
    }
  }
  if (doc.contains("seed")) {
    const std::int64_t v = to_int(doc.at("seed"), "seed");
    if (v < 0) fail("seed", "must be >= 0");
    s.seed = static_cast<std::uint64_t>(v);
  }
  if (doc.contains("cutoff")) {
    const std::int64_t v = to_int(doc.at("cutoff"), "cutoff");
    if (v < 0 || v > 10000) fail("cutoff", "must lie in [0, 10000]");
    s.cutoff = static_cast<int>(v);
  }
  if (doc.contains("temperature")) {
    s.temperature = real_list(doc.at("temperature"), "temperature");
    if (static_cast<int>(s.temperature->size()) != m) fail("temperature", "length must equal the number of modes");
    for (std::size_t i = 0; i < s.temperature->size(); ++i) {
      if ((*s.temperature)[i] < 0.0) fail("temperature[" + std::to_string(i) + "]", "must be >= 0");
    }
  }
  if (doc.contains("initial_weights")) {
    s.initial_weights = int_list(doc.at("initial_weights"), "initial_weights", true);
    if (static_cast<int>(s.initial_weights->size()) != m) {
      fail("initial_weights", "length must equal the number of modes");
    }
  }
  if (doc.contains("peaks")) {
    const json& p = doc.at("peaks");
    if (!p.is_object()) fail("peaks", "expected an object");
    if (p.contains("t")) s.peaks.t = static_cast<int>(to_int(p.at("t"), "peaks.t"));
    if (p.contains("buckets")) s.peaks.buckets = static_cast<int>(to_int(p.at("buckets"), "peaks.buckets"));
    if (p.contains("rounds")) s.peaks.rounds = static_cast<int>(to_int(p.at("rounds"), "peaks.rounds"));
    if (p.contains("epsilon")) s.peaks.epsilon = to_real(p.at("epsilon"), "peaks.epsilon");
  }
  return s;
}

json spec_to_json(const ProblemSpec& s) {
  json doc;
  doc["mode"] = mode_name(s.mode);
  if (s.circuit) {
    json c;
    c["unitary"] = unitary_json(s.circuit->unitary);
    c["r0"] = std::vector<double>(s.circuit->r0.data(), s.circuit->r0.data() + s.circuit->r0.size());
    json a = json::array();
    for (Eigen::Index i = 0; i < s.circuit->alpha.size(); ++i) a.push_back(complex_json(s.circuit->alpha(i)));
    c["alpha"] = a;
    doc["circuit"] = c;
  } else {
    const DoktorovSpec& k = *s.doktorov;
    json d;
    d["omega_i"] = std::vector<double>(k.omega_i.data(), k.omega_i.data() + k.omega_i.size());
    d["omega_f"] = std::vector<double>(k.omega_f.data(), k.omega_f.data() + k.omega_f.size());
    d["u_r"] = unitary_json(k.u_r);
    d["delta"] = std::vector<double>(k.delta.data(), k.delta.data() + k.delta.size());
    doc["doktorov"] = d;
  }
  doc["weights"] = s.weights;
  doc["omega_max"] = s.omega_max;
  if (s.input_fock) doc["input_fock"] = *s.input_fock;
  json e;
  if (s.estimator.epsilon) e["epsilon"] = *s.estimator.epsilon;
  e["confidence"] = s.estimator.confidence;
  if (s.estimator.n_samples) e["n_samples"] = *s.estimator.n_samples;
  e["exhaustive"] = s.estimator.exhaustive;
  doc["estimator"] = e;
  if (s.seed) doc["seed"] = *s.seed;
  if (s.cutoff) doc["cutoff"] = *s.cutoff;
  if (s.temperature) doc["temperature"] = *s.temperature;
  if (s.initial_weights) doc["initial_weights"] = *s.initial_weights;
  doc["peaks"] = {{"t", s.peaks.t}, {"buckets", s.peaks.buckets}, {"rounds", s.peaks.rounds},
                  {"epsilon", s.peaks.epsilon}};
  return doc;
}

std::uint64_t resolve_seed(const RunOptions& opt, const ProblemSpec& spec) {
  if (opt.seed) return *opt.seed;
  if (spec.seed) return *spec.seed;
  if (const char* env = std::getenv("VIBRO_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') fail("VIBRO_SEED", "expected a nonnegative integer");
    return v;
  }
  return 0;
}

SpectrumReport execute(const ProblemSpec& spec, const RunOptions& opt) {
  SpectrumReport r;
  r.route = opt.route.value_or(spec.mode);
  r.seed = resolve_seed(opt, spec);
  const GaussianCircuit c = spec.resolved_circuit();
  const WeightVector w(spec.weights);
  r.grid = SpectralGrid(spec.omega_max);
  const IntVector zeros(spec.weights.size(), 0);
  const IntVector n = spec.input_fock.value_or(zeros);
  EnumerationConfig ecfg;
  if (spec.cutoff) ecfg.photon_cutoff = *spec.cutoff;

  SampleSpec ss;
  ss.seed = r.seed;
  ss.confidence = spec.estimator.confidence;
  ss.exhaustive = spec.estimator.exhaustive;
  ss.n_samples = samples_for(spec.estimator);

  auto take_series = [&](const FourierSeries& f) {
    r.fourier = f.values;
    r.spectrum = inverse_dft(f).values;
  };
  auto take_estimate = [&](const EstimatedSeries& es) {
    take_series(es.series);
    r.error_bound = parseval_bound(es.max_bound, r.grid);
    for (std::size_t k = 0; k < es.components.size(); ++k) {
      const auto& e = es.components[k];
      r.components.push_back({static_cast<std::int64_t>(k), e.value, e.std_error, e.analytic_bound, e.n_samples});
    }
    r.samples_used = ss.exhaustive ? 0 : ss.n_samples;
  };
  auto gaussian_oracle = [&](const GaussianCircuit& gc, const WeightVector& gw, const SpectralGrid& g) {
    const EnumerationResult e = enumerate_spectrum_gaussian(gc, n, gw, g, ecfg);
    r.mass_deficit = e.mass_deficit;
    return e.spectrum.values;
  };

  switch (r.route) {
    case Mode::GaussianExact: {
      if (total(n) != 0) fail("input_fock", "gaussian-exact requires the vacuum input");
      take_series(exact_fourier_series(c, w, r.grid));
      if (opt.compare_oracle) r.oracle_spectrum = gaussian_oracle(c, w, r.grid);
      break;
    }
    case Mode::FockEstimate: {
      if (!is_passive(c)) fail("circuit", "fock-estimate requires r0 = 0 and alpha = 0");
      if (!spec.input_fock) fail("input_fock", "required for fock-estimate");
      take_estimate(fourier_fock_series(c.unitary, w, r.grid, n, ss));
      if (opt.compare_oracle) r.oracle_spectrum = enumerate_spectrum_fock(c.unitary, n, w, r.grid).spectrum.values;
      break;
    }
    case Mode::FockSqueezedEstimate: {
      if (!spec.input_fock) fail("input_fock", "required for fock-squeezed-estimate");
      take_estimate(fourier_fock_squeezed_series(c, w, r.grid, n, ss));
      if (opt.compare_oracle) r.oracle_spectrum = gaussian_oracle(c, w, r.grid);
      break;
    }
    case Mode::Oracle: {
      if (is_passive(c) && spec.input_fock) {
        const EnumerationResult e = enumerate_spectrum_fock(c.unitary, n, w, r.grid);
        r.spectrum = e.spectrum.values;
        r.mass_deficit = e.mass_deficit;
      } else {
        r.spectrum = gaussian_oracle(c, w, r.grid);
      }
      if (opt.emit_fourier) r.fourier = forward_dft(Spectrum{r.grid, r.spectrum}).values;
      if (opt.compare_oracle && !spec.input_fock) {
        r.oracle_spectrum = r.spectrum;
        r.spectrum = inverse_dft(exact_fourier_series(c, w, r.grid)).values;
      }
      break;
    }
    case Mode::Peaks: {
      if (!is_passive(c)) fail("circuit", "peaks requires r0 = 0 and alpha = 0");
      if (!spec.input_fock) fail("input_fock", "required for peaks");
      SparseRecoveryConfig cfg;
      cfg.t = spec.peaks.t;
      cfg.buckets = spec.peaks.buckets;
      cfg.n_rounds = spec.peaks.rounds;
      cfg.epsilon = spec.peaks.epsilon;
      cfg.seed = r.seed;
      SampleSpec ps = ss;
      if (!spec.estimator.n_samples && !spec.estimator.epsilon) ps.n_samples = 0;
      const PeakList pl = peaks_fock_pipeline(c.unitary, w, spec.omega_max, n, cfg, ps);
      r.peaks = pl.entries;
      r.grid = SpectralGrid(next_pow2(std::max<std::int64_t>(spec.omega_max + 1, 64 * cfg.buckets)) - 1);
      r.samples_used = ps.exhaustive ? 0 : (ps.n_samples ? ps.n_samples : plan_samples(cfg.epsilon, ps.confidence));
      break;
    }
    case Mode::FiniteTemperature: {
      if (!spec.temperature) fail("temperature", "required for finite-temperature");
      if (total(n) != 0) fail("input_fock", "finite-temperature requires the vacuum input");
      const int cutoff = spec.cutoff.value_or(20);
      const WeightVector wi(spec.initial_weights.value_or(spec.weights));
      const LiftedProblem lp =
          finite_temperature_lift(c, to_eigen(*spec.temperature), wi, w, cutoff);
      r.grid = lp.grid;
      take_series(exact_fourier_series(lp.circuit, lp.weights, lp.grid));
      if (opt.compare_oracle) {
        const IntVector n2(static_cast<std::size_t>(lp.circuit.modes()), 0);
        const EnumerationResult e = enumerate_spectrum_gaussian(lp.circuit, n2, lp.weights, lp.grid, ecfg);
        r.mass_deficit = e.mass_deficit;
        r.oracle_spectrum = e.spectrum.values;
      }
      break;
    }
  }
  if (!r.oracle_spectrum.empty()) r.oracle_max_diff = max_diff(r.spectrum, r.oracle_spectrum);
  if (!opt.emit_fourier) r.fourier.clear();
  return r;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json report_to_json(const SpectrumReport& r) {
  json j;
  j["route"] = mode_name(r.route);
  j["seed"] = r.seed;
  j["grid"] = {{"omega_max", r.grid.omega_max}, {"offset", r.grid.offset}, {"size", r.grid.size()}};
  j["spectrum"] = r.spectrum;
  if (!r.fourier.empty()) {
    json f = json::array();
    for (const cplx& z : r.fourier) f.push_back(complex_json(z));
    j["fourier"] = f;
  }
  json diag = json::object();
  if (r.error_bound) {
    diag["per_bin_error_bound"] = *r.error_bound;
    json comps = json::array();
    for (const auto& c : r.components) {
      comps.push_back({{"k", c.k}, {"value", complex_json(c.value)}, {"std_error", c.std_error},
                       {"analytic_bound", c.analytic_bound}, {"n_samples", c.n_samples}});
    }
    j["components"] = comps;
  }
  if (!r.peaks.empty()) {
    json p = json::array();
    for (const auto& pk : r.peaks) p.push_back({{"omega", pk.omega}, {"value", pk.value}});
    j["peaks"] = p;
  }
  if (r.mass_deficit) diag["mass_deficit"] = *r.mass_deficit;
  if (r.oracle_max_diff) diag["oracle_max_diff"] = *r.oracle_max_diff;
  diag["samples_used"] = r.samples_used;
  j["diagnostics"] = diag;
  return j;
}

void emit_plot_data(const SpectrumReport& r, const std::string& out_dir, double resolution) {
  const std::filesystem::path dir(out_dir);
  auto block = [&](const std::vector<double>& v) {
    std::string s = "# x G\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x = static_cast<double>(static_cast<std::int64_t>(i) - r.grid.offset) * resolution;
      s += fmt17(x) + " " + fmt17(v[i]) + "\n";
    }
    return s;
  };
  if (!r.peaks.empty()) {
    std::string s = "# x G\n";
    for (const auto& p : r.peaks) s += fmt17(static_cast<double>(p.omega) * resolution) + " " + fmt17(p.value) + "\n";
    write_file(dir / "plot.dat", s);
    return;
  }
  write_file(dir / "plot.dat", block(r.spectrum));
  if (!r.oracle_spectrum.empty()) write_file(dir / "plot_overlay.dat", block(r.oracle_spectrum));
}

void write_outputs(const SpectrumReport& r, const RunOptions& opt) {
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  std::string csv = "bin,omega,value\n";
  if (!r.peaks.empty()) {
    for (const auto& p : r.peaks) {
      csv += std::to_string(p.omega) + "," + std::to_string(p.omega) + "," + fmt17(p.value) + "\n";
    }
  } else {
    for (std::size_t i = 0; i < r.spectrum.size(); ++i) {
      const auto omega = static_cast<std::int64_t>(i) - r.grid.offset;
      csv += std::to_string(i) + "," + std::to_string(omega) + "," + fmt17(r.spectrum[i]) + "\n";
    }
  }
  write_file(dir / "spectrum.csv", csv);
  if (!r.fourier.empty()) {
    std::string f = "k,re,im\n";
    for (std::size_t k = 0; k < r.fourier.size(); ++k) {
      f += std::to_string(k) + "," + fmt17(r.fourier[k].real()) + "," + fmt17(r.fourier[k].imag()) + "\n";
    }
    write_file(dir / "fourier.csv", f);
  }
  write_file(dir / "report.json", report_to_json(r).dump(2) + "\n");
  emit_plot_data(r, opt.out_dir, opt.resolution);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Vibronic spectra from Fourier components"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Compute a spectrum from a problem spec");
  std::string spec_path;
  std::string route;
  std::uint64_t seed = 0;
  RunOptions opt;
  run->add_option("spec", spec_path, "Problem spec (JSON)")->required();
  run->add_option("--out", opt.out_dir, "Output directory")->required();
  CLI::Option* route_opt = run->add_option("--route", route, "Override the problem file's mode");
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Random seed");
  run->add_flag("--emit-fourier", opt.emit_fourier, "Also write fourier.csv");
  run->add_flag("--compare-oracle", opt.compare_oracle, "Run the enumeration oracle alongside");
  run->add_option("--resolution", opt.resolution, "Plot x-axis units per bin");

  auto report_error = [](const char* kind, const std::string& msg, int code) {
    std::cerr << json{{"error", kind}, {"message", msg}}.dump() << "\n";
    return code;
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kExitDomain);
  }
  try {
    if (route_opt->count() > 0) opt.route = parse_mode(route);
    if (seed_opt->count() > 0) opt.seed = seed;
    std::ifstream in(spec_path);
    if (!in) fail("spec", "cannot read " + spec_path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      fail("spec", std::string("invalid JSON: ") + e.what());
    }
    const ProblemSpec spec = parse_spec(doc);
    const SpectrumReport r = execute(spec, opt);
    write_outputs(r, opt);
  } catch (const DomainError& e) {
    return report_error("validation", e.what(), kExitDomain);
  } catch (const NumericError& e) {
    return report_error("numeric", e.what(), kExitNumeric);
  } catch (const SizeError& e) {
    return report_error("size", e.what(), kExitNumeric);
  } catch (const std::exception& e) {
    return report_error("numeric", e.what(), kExitNumeric);
  }
  return kExitOk;
}

}  // namespace vibro::cli
