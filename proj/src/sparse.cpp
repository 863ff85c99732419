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

#include "vibro/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "vibro/estimators.hpp"
#include "vibro/rng.hpp"

namespace vibro {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mask) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b) & mask;
}

cplx unit_phase(std::uint64_t x, std::uint64_t d) {
  // exp(-2 pi i x / d), x already reduced
  return std::polar(1.0, -kTwoPi * static_cast<double>(x) / static_cast<double>(d));
}

/// Gaussian-smoothed flat-top window of width d / buckets, truncated to |j| <= k.
struct Window {
  std::int64_t d;
  int buckets;
  std::int64_t k;
  std::vector<double> taps;  // taps[j + k]

  Window(std::int64_t d_, int buckets_) : d(d_), buckets(buckets_) {
    const double l = static_cast<double>(d) / buckets;
    const double sg = l / 32.0;
    // Gaussian factor exp(-2 pi^2 sg^2 j^2 / d^2) falls below 1e-9 at |j| = k
    k = static_cast<std::int64_t>(std::ceil(std::sqrt(20.8 / 2.0) * static_cast<double>(d) / (std::numbers::pi * sg)));
    k = std::min<std::int64_t>(k, (d - 1) / 2);
    taps.resize(static_cast<std::size_t>(2 * k + 1));
    for (std::int64_t j = -k; j <= k; ++j) {
      double dir = l;
      if (j != 0) {
        dir = std::sin(std::numbers::pi * static_cast<double>(j) / buckets) /
              std::sin(std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
      }
      const double x = static_cast<double>(j) / static_cast<double>(d);
      taps[static_cast<std::size_t>(j + k)] = dir * std::exp(-2.0 * std::numbers::pi * std::numbers::pi * sg * sg * x * x) /
                                              static_cast<double>(d);
    }
  }

  double tap(std::int64_t j) const { return taps[static_cast<std::size_t>(j + k)]; }

  double response(std::int64_t nu) const {
    const auto ud = static_cast<std::uint64_t>(d);
    const std::uint64_t mask = ud - 1;
    const auto unu = static_cast<std::uint64_t>(nu) & mask;
    double acc = tap(0);
    for (std::int64_t j = 1; j <= k; ++j) {
      const std::uint64_t x = mulmod(static_cast<std::uint64_t>(j), unu, mask);
      acc += 2.0 * tap(j) * std::cos(kTwoPi * static_cast<double>(x) / static_cast<double>(d));
    }
    return acc;
  }
};

std::int64_t signed_mod(std::int64_t a, std::int64_t d) {
  std::int64_t r = a % d;
  if (r < 0) r += d;
  if (r > d / 2) r -= d;
  return r;
}

double wrap(double x, double p) {
  // into (-p/2, p/2]
  x = std::fmod(x, p);
  if (x > p / 2) x -= p;
  if (x <= -p / 2) x += p;
  return x;
}

bool is_pow2(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

std::int64_t next_pow2(std::int64_t n) {
  if (n < 1) throw DomainError("next_pow2: n must be >= 1");
  std::int64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

double window_response(std::int64_t d, int buckets, std::int64_t nu) {
  return Window(d, buckets).response(nu);
}

PeakList recover_peaks(const FourierOracle& oracle, const SparseRecoveryConfig& cfg) {
  if (!is_pow2(cfg.d)) throw DomainError("recover_peaks: d must be a power of two");
  if (!is_pow2(cfg.buckets)) throw DomainError("recover_peaks: buckets must be a power of two");
  if (cfg.t < 1) throw DomainError("recover_peaks: t must be >= 1");
  if (cfg.buckets < 4 * cfg.t) throw DomainError("recover_peaks: buckets must be >= 4 t");
  if (cfg.d / cfg.buckets < 64) throw DomainError("recover_peaks: d / buckets must be >= 64");
  if (cfg.n_rounds < 1) throw DomainError("recover_peaks: n_rounds must be >= 1");
  if (!(cfg.epsilon > 0.0)) throw DomainError("recover_peaks: epsilon must be > 0");

  const std::int64_t d = cfg.d;
  const auto ud = static_cast<std::uint64_t>(d);
  const std::uint64_t mask = ud - 1;
  const int nb = cfg.buckets;
  const std::int64_t l = d / nb;
  const Window win(d, nb);
  const double detect = cfg.epsilon / 4.0;
  const double tol = cfg.epsilon / 8.0;

  // shift s = d / p for periods p = 8 l, 8 l / 16, ... >= 16
  std::vector<std::int64_t> periods;
  for (std::int64_t p = std::min<std::int64_t>(8 * l, d); p >= 16; p /= 16) periods.push_back(p);

  std::map<std::int64_t, double> found;
  PeakList out;
  auto residual = [&](std::uint64_t k) {
    cplx v = oracle(static_cast<std::int64_t>(k));
    ++out.oracle_calls;
    for (const auto& [om, val] : found) v -= val * unit_phase(mulmod(k, static_cast<std::uint64_t>(om), mask), ud);
    return v;
  };

  int unresolved = 0;
  for (int round = 0; round < cfg.n_rounds; ++round) {
    out.rounds_used = round + 1;
    Stream rng = make_stream(cfg.seed, Lane::Hash, static_cast<std::uint64_t>(round));
    const std::uint64_t sigma = 2 * rng.below(ud / 2) + 1;
    const std::uint64_t tau = rng.below(ud);

    // bucket sums for shift 0 and every period
    std::vector<std::vector<cplx>> z;
    std::vector<std::int64_t> shifts{0};
    for (std::int64_t p : periods) shifts.push_back(d / p);
    for (std::int64_t s : shifts) {
      // shifted sums are only needed when some bucket is active
      if (s != 0 && std::none_of(z[0].begin(), z[0].end(), [&](cplx v) { return std::abs(v) > detect; })) break;
      std::vector<cplx> fold(static_cast<std::size_t>(nb), 0.0);
      for (std::int64_t j = -win.k; j <= win.k; ++j) {
        const auto js = static_cast<std::uint64_t>(j + s) & mask;
        const cplx x = residual(mulmod(sigma, js, mask)) * unit_phase(mulmod(js, tau, mask), ud);
        fold[static_cast<std::size_t>(((j % nb) + nb) % nb)] += win.tap(j) * x;
      }
      std::vector<cplx> zb(static_cast<std::size_t>(nb), 0.0);
      for (int b = 0; b < nb; ++b) {
        cplx acc = 0.0;
        for (int r = 0; r < nb; ++r) {
          acc += fold[static_cast<std::size_t>(r)] * std::polar(1.0, kTwoPi * ((r * b) % nb) / nb);
        }
        zb[static_cast<std::size_t>(b)] = acc;
      }
      z.push_back(std::move(zb));
    }

    if (z.size() < shifts.size()) {
      unresolved = 0;
      break;
    }

    // omega -> (value, window response) of this round's clean buckets
    std::map<std::int64_t, std::pair<double, double>> located;
    int active = 0;
    unresolved = 0;
    for (int b = 0; b < nb; ++b) {
      const cplx z0 = z[0][static_cast<std::size_t>(b)];
      if (std::abs(z0) <= detect) continue;
      ++active;
      double c = static_cast<double>(b) * static_cast<double>(l);
      for (std::size_t i = 0; i < periods.size(); ++i) {
        const double p = static_cast<double>(periods[i]);
        const cplx rho = z[i + 1][static_cast<std::size_t>(b)] / z0;
        const double theta = -std::arg(rho) * p / kTwoPi;
        c += wrap(theta - c, p);
      }
      const auto om_perm = static_cast<std::int64_t>(std::llround(c)) & static_cast<std::int64_t>(mask);
      bool clean = true;
      for (std::size_t i = 0; i < shifts.size(); ++i) {
        const cplx pred = z0 * unit_phase(mulmod(static_cast<std::uint64_t>(shifts[i]),
                                                 static_cast<std::uint64_t>(om_perm), mask), ud);
        if (std::abs(z[i][static_cast<std::size_t>(b)] - pred) > tol) clean = false;
      }
      const double resp = win.response(signed_mod(om_perm - static_cast<std::int64_t>(b) * l, d));
      if (resp < 0.25) clean = false;
      const cplx v = clean ? z0 / resp : cplx(0.0);
      if (std::abs(v.imag()) > tol) clean = false;
      if (!clean) {
        ++unresolved;
        continue;
      }
      // undo the permutation: omega' = sigma omega + tau
      std::uint64_t inv = sigma;
      for (int it = 0; it < 6; ++it) inv *= 2 - sigma * inv;
      const auto om = static_cast<std::int64_t>(
          mulmod(inv, (static_cast<std::uint64_t>(om_perm) - tau) & mask, mask));
      auto it = located.find(om);
      if (it == located.end() || it->second.second < resp) located[om] = {v.real(), resp};
    }
    for (const auto& [om, vr] : located) found[om] += vr.first;
    if (active == 0) break;
  }

  for (const auto& [om, val] : found) {
    if (val >= cfg.epsilon) out.entries.push_back(Peak{om, val});
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const Peak& a, const Peak& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.omega < b.omega;
  });
  if (static_cast<int>(out.entries.size()) > cfg.t) out.entries.resize(static_cast<std::size_t>(cfg.t));
  if (unresolved > nb / 4) {
    throw RecoveryIncomplete("recover_peaks: " + std::to_string(unresolved) +
                                 " buckets still hold colliding peaks after the last round",
                             out);
  }
  return out;
}

PeakList peaks_fock_pipeline(const UnitaryMatrix& u, const WeightVector& w, std::int64_t omega_max,
                             const IntVector& n, SparseRecoveryConfig cfg, SampleSpec spec) {
  if (omega_max < 0) throw DomainError("peaks_fock_pipeline: omega_max must be >= 0");
  cfg.d = next_pow2(std::max<std::int64_t>(omega_max + 1, 64 * cfg.buckets));
  if (!spec.exhaustive && spec.n_samples == 0) spec.n_samples = plan_samples(cfg.epsilon, spec.confidence);
  // pad bins above omega_max carry no mass
  const SpectralGrid grid(cfg.d - 1);
  const FourierOracle oracle = [&](std::int64_t k) {
    SampleSpec sk = spec;
    sk.seed = component_seed(spec.seed, k);
    return fourier_fock(u, w, grid, k, n, sk).value;
  };
  return recover_peaks(oracle, cfg);
}

}  // namespace vibro
