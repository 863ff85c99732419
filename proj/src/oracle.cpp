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

#include "vibro/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vibro/hafnian.hpp"
#include "vibro/rng.hpp"

namespace vibro {

namespace {

constexpr double kMaxOutcomes = 1e6;

void outcome_rec(int pos, int left, IntVector& m, const std::function<void(const IntVector&)>& f) {
  if (pos == 0) {
    m[0] = left;
    f(m);
    return;
  }
  // the last coordinate is the most significant one
  for (int v = 0; v <= left; ++v) {
    m[static_cast<std::size_t>(pos)] = v;
    outcome_rec(pos - 1, left - v, m, f);
  }
  m[static_cast<std::size_t>(pos)] = 0;
}

std::vector<int> expand(const IntVector& n) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 0) throw DomainError("negative photon count");
    for (int c = 0; c < n[i]; ++c) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

double outcome_count(int modes, int cutoff) {
  // number of m with sum(m) <= cutoff: C(cutoff + modes, modes)
  return std::exp(std::lgamma(cutoff + modes + 1.0) - std::lgamma(cutoff + 1.0) -
                  std::lgamma(modes + 1.0));
}

}  // namespace

void for_each_outcome(int modes, int total, const std::function<void(const IntVector&)>& f) {
  if (modes < 1 || total < 0) throw DomainError("for_each_outcome: invalid arguments");
  IntVector m(static_cast<std::size_t>(modes), 0);
  outcome_rec(modes - 1, total, m, f);
}

double fock_probability(const UnitaryMatrix& u, const IntVector& n_in, const IntVector& m_out) {
  if (static_cast<int>(n_in.size()) != u.modes() || m_out.size() != n_in.size()) {
    throw DomainError("fock_probability: dimension mismatch");
  }
  if (total(n_in) != total(m_out)) return 0.0;
  const ComplexMatrix sub = u.matrix()(expand(m_out), expand(n_in));
  return std::norm(permanent_exact(sub)) / (factorial_product(m_out) * factorial_product(n_in));
}

cplx gaussian_amplitude(const SigmaSystem& sys, const IntVector& m_out, const IntVector& n_in) {
  const ComplexMatrix s = assemble_loop_matrix(sys, m_out, n_in);
  const double norm = std::sqrt(factorial_product(m_out) * factorial_product(n_in));
  return loop_hafnian_exact(s) / (sys.z_norm * norm);
}

EnumerationResult enumerate_spectrum_fock(const UnitaryMatrix& u, const IntVector& n_in,
                                          const WeightVector& w, const SpectralGrid& grid) {
  const int m = u.modes();
  if (static_cast<int>(n_in.size()) != m || w.size() != m) {
    throw DomainError("enumerate_spectrum_fock: dimension mismatch");
  }
  const int n_sum = total(n_in);
  if (n_sum > 8 || m > 8) throw SizeError("enumerate_spectrum_fock: needs sum(n) <= 8 and M <= 8");
  EnumerationResult out;
  out.spectrum = Spectrum{grid, std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0)};
  double mass = 0.0;
  for_each_outcome(m, n_sum, [&](const IntVector& mo) {
    const double p = fock_probability(u, n_in, mo);
    out.spectrum.values[static_cast<std::size_t>(grid.bin(w.dot(mo)))] += p;
    mass += p;
    ++out.outcomes;
  });
  out.mass_deficit = 1.0 - mass;
  return out;
}

EnumerationResult enumerate_spectrum_gaussian(const GaussianCircuit& c, const IntVector& n_in,
                                              const WeightVector& w, const SpectralGrid& grid,
                                              const EnumerationConfig& cfg) {
  const int m = c.modes();
  if (static_cast<int>(n_in.size()) != m || w.size() != m) {
    throw DomainError("enumerate_spectrum_gaussian: dimension mismatch");
  }
  if (cfg.photon_cutoff < 0) throw DomainError("enumerate_spectrum_gaussian: negative cutoff");
  if (!(cfg.mass_deficit_tol > 0.0 && cfg.mass_deficit_tol < 1.0)) {
    throw DomainError("enumerate_spectrum_gaussian: mass_deficit_tol must lie in (0, 1)");
  }
  if (outcome_count(m, cfg.photon_cutoff) > kMaxOutcomes) {
    throw SizeError("enumerate_spectrum_gaussian: more than 1e6 outcomes below the cutoff");
  }
  const SigmaSystem sys = build_sigma_system(bloch_messiah(circuit_transform(c)));
  RepeatedLoopHafnian lhaf(sys.sigma, sys.zeta);
  const double in_fact = factorial_product(n_in);

  EnumerationResult out;
  out.spectrum = Spectrum{grid, std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0)};
  double mass = 0.0;
  IntVector reps(static_cast<std::size_t>(2 * m), 0);
  std::copy(n_in.begin(), n_in.end(), reps.begin() + m);
  for (int tot = 0; tot <= cfg.photon_cutoff; ++tot) {
    for_each_outcome(m, tot, [&](const IntVector& mo) {
      std::copy(mo.begin(), mo.end(), reps.begin());
      const cplx amp = lhaf(reps) / sys.z_norm;
      const double p = std::norm(amp) / (factorial_product(mo) * in_fact);
      out.spectrum.values[static_cast<std::size_t>(grid.bin(w.dot(mo)))] += p;
      mass += p;
      ++out.outcomes;
    });
  }
  out.mass_deficit = 1.0 - mass;
  if (out.mass_deficit > cfg.mass_deficit_tol) {
    throw CutoffError("enumerate_spectrum_gaussian: mass deficit " + std::to_string(out.mass_deficit) +
                      " exceeds tolerance at photon_cutoff " + std::to_string(cfg.photon_cutoff) +
                      "; raise the cutoff");
  }
  return out;
}

SamplerRun emulate_sampler(const Spectrum& spectrum, std::size_t n_samples, std::uint64_t seed) {
  const std::size_t d = spectrum.values.size();
  if (d == 0) throw DomainError("emulate_sampler: empty spectrum");
  std::vector<double> cdf(d);
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    acc += std::max(0.0, spectrum.values[i]);
    cdf[i] = acc;
  }
  if (!(acc > 0.0)) throw DomainError("emulate_sampler: spectrum has no mass");
  if (std::abs(acc - 1.0) > 1e-6) {
    throw DomainError("emulate_sampler: spectrum must sum to 1 within 1e-6");
  }
  SamplerRun run;
  run.samples.seed = seed;
  run.samples.mass_deficit = 1.0 - acc;
  run.samples.bins.reserve(n_samples);
  run.empirical = Spectrum{spectrum.grid, std::vector<double>(d, 0.0)};
  for (std::size_t i = 0; i < n_samples; ++i) {
    Stream s = make_stream(seed, Lane::Sampler, i);
    const double u = s.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    const auto b = static_cast<std::int64_t>(it - cdf.begin());
    run.samples.bins.push_back(b);
    run.empirical.values[static_cast<std::size_t>(b)] += 1.0;
  }
  if (n_samples > 0) {
    for (double& v : run.empirical.values) v /= static_cast<double>(n_samples);
  }
  return run;
}

}  // namespace vibro
