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

#include "vibro/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "vibro/rng.hpp"

namespace vibro {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// exhaustive enumeration refuses sample spaces larger than this
constexpr double kMaxExhaustive = 1u << 26;
constexpr double kSymmetryTol = 1e-10;

cplx ipow(cplx base, int e) {
  cplx out = 1.0;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

void require_symmetric(const ComplexMatrix& s, const char* what) {
  require_square(s, what);
  if (max_abs(s - s.transpose()) > kSymmetryTol) {
    throw DomainError(std::string(what) + ": matrix is not symmetric");
  }
}

void check_spec(const SampleSpec& spec, const char* what) {
  if (!spec.exhaustive && spec.n_samples == 0) {
    throw DomainError(std::string(what) + ": n_samples must be >= 1");
  }
  if (!(spec.confidence > 0.0 && spec.confidence < 1.0)) {
    throw DomainError(std::string(what) + ": confidence must lie in (0, 1)");
  }
}

/**
 * Averages term(stream) over spec.n_samples draws. The real part of the
 * estimate uses the Real lane, the imaginary part the Imag lane.
 */
template <class Term>
EstimateWithBound monte_carlo(const SampleSpec& spec, double worst_term, Term&& term) {
  double sr = 0.0, si = 0.0, sr2 = 0.0, si2 = 0.0;
  for (std::size_t i = 0; i < spec.n_samples; ++i) {
    Stream a = make_stream(spec.seed, Lane::Real, i);
    const double re = term(a).real();
    Stream b = make_stream(spec.seed, Lane::Imag, i);
    const double im = term(b).imag();
    sr += re;
    sr2 += re * re;
    si += im;
    si2 += im * im;
  }
  const double n = static_cast<double>(spec.n_samples);
  EstimateWithBound out;
  out.value = cplx(sr / n, si / n);
  if (spec.n_samples > 1) {
    const double vr = std::max(0.0, (sr2 - sr * sr / n) / (n - 1.0));
    const double vi = std::max(0.0, (si2 - si * si / n) / (n - 1.0));
    out.std_error = std::sqrt((vr + vi) / n);
  }
  out.n_samples = spec.n_samples;
  out.analytic_bound = hoeffding_radius(spec.confidence, spec.n_samples) * worst_term;
  out.confidence = spec.confidence;
  return out;
}

EstimateWithBound exact_result(cplx value, double count) {
  EstimateWithBound out;
  out.value = value;
  out.std_error = 0.0;
  out.n_samples = static_cast<std::size_t>(count);
  out.analytic_bound = 0.0;
  out.confidence = 1.0;
  return out;
}

/// Calls f(counter) for every tuple of a mixed-radix counter with the given radices.
template <class F>
void for_each_tuple(const IntVector& radix, F&& f) {
  IntVector c(radix.size(), 0);
  while (true) {
    f(c);
    std::size_t i = 0;
    for (; i < c.size(); ++i) {
      if (++c[i] < radix[i]) break;
      c[i] = 0;
    }
    if (i == c.size()) return;
  }
}

double space_size(const IntVector& radix) {
  double s = 1.0;
  for (int r : radix) s *= r;
  return s;
}

void guard_exhaustive(double size, const char* what) {
  if (size > kMaxExhaustive) {
    throw SizeError(std::string(what) + ": exhaustive sample space too large");
  }
}

cplx quad_form(const ComplexMatrix& s, const RealVector& h) {
  return (h.cast<cplx>().transpose() * s * h.cast<cplx>())(0);
}

void check_series_grid(const SpectralGrid& grid) {
  if (grid.size() > (1 << 16)) throw SizeError("series: grid larger than 65536 bins");
}

RealVector phases_for(const WeightVector& w, const SpectralGrid& grid, std::int64_t k) {
  const std::int64_t d = grid.size();
  RealVector phi(w.size());
  for (int j = 0; j < w.size(); ++j) {
    const std::int64_t x = ((k % d) * (w[j] % d)) % d;
    phi(j) = -kTwoPi * static_cast<double>(x) / static_cast<double>(d);
  }
  return phi;
}

template <class Component>
EstimatedSeries build_series(const SpectralGrid& grid, const SampleSpec& spec, Component&& comp) {
  check_series_grid(grid);
  const std::int64_t d = grid.size();
  EstimatedSeries out;
  out.series.grid = grid;
  out.series.values.resize(static_cast<std::size_t>(d));
  out.components.resize(static_cast<std::size_t>(d));
  double worst = 0.0;
  for (std::int64_t k = 0; k <= d / 2; ++k) {
    SampleSpec sk = spec;
    sk.seed = component_seed(spec.seed, k);
    EstimateWithBound e = comp(k, sk);
    // G~(d/2) is real for even d; keep only the real part of its estimate
    if (2 * k == d) e.value = e.value.real();
    out.components[static_cast<std::size_t>(k)] = e;
    out.series.values[static_cast<std::size_t>(k)] = e.value;
    worst = std::max(worst, e.analytic_bound);
  }
  for (std::int64_t k = d / 2 + 1; k < d; ++k) {
    EstimateWithBound e = out.components[static_cast<std::size_t>(d - k)];
    e.value = std::conj(e.value);
    out.components[static_cast<std::size_t>(k)] = e;
    out.series.values[static_cast<std::size_t>(k)] = e.value;
  }
  out.max_bound = std::sqrt(2.0) * worst;
  return out;
}

}  // namespace

SigmaSystem build_sigma_system(const BlochMessiahForm& f) {
  const int m = f.modes();
  const ComplexMatrix& u2 = f.u_lin2.matrix();
  const ComplexMatrix& u1 = f.u_lin1.matrix();
  ComplexVector th(m), sh(m);
  double log_cosh = 0.0;
  for (int i = 0; i < m; ++i) {
    th(i) = std::tanh(f.r(i));
    sh(i) = 1.0 / std::cosh(f.r(i));
    log_cosh += std::log(std::cosh(f.r(i)));
  }
  const ComplexMatrix t = u2 * th.asDiagonal() * u2.transpose();
  const ComplexMatrix sg = u2 * sh.asDiagonal() * u1;
  SigmaSystem sys;
  sys.sigma.resize(2 * m, 2 * m);
  sys.sigma.topLeftCorner(m, m) = t;
  sys.sigma.topRightCorner(m, m) = sg;
  sys.sigma.bottomLeftCorner(m, m) = sg.transpose();
  sys.sigma.bottomRightCorner(m, m) = -(u1.transpose() * th.asDiagonal() * u1);

  const ComplexVector xc = f.xi.conjugate();
  sys.zeta.resize(2 * m);
  sys.zeta.head(m) = f.xi - t * xc;
  sys.zeta.tail(m) = -(sg.transpose() * xc);
  // 1/Z = <0|W|0>
  const cplx log_vac = -0.5 * f.xi.squaredNorm() + 0.5 * (xc.transpose() * t * xc)(0) - 0.5 * log_cosh;
  sys.z_norm = std::exp(-log_vac);
  return sys;
}

std::vector<int> sigma_indices(const IntVector& out_reps, const IntVector& in_reps) {
  if (out_reps.size() != in_reps.size()) throw DomainError("sigma_indices: length mismatch");
  const int m = static_cast<int>(out_reps.size());
  std::vector<int> idx;
  for (int i = 0; i < m; ++i) {
    if (out_reps[static_cast<std::size_t>(i)] < 0) throw DomainError("sigma_indices: negative count");
    for (int c = 0; c < out_reps[static_cast<std::size_t>(i)]; ++c) idx.push_back(i);
  }
  for (int i = 0; i < m; ++i) {
    if (in_reps[static_cast<std::size_t>(i)] < 0) throw DomainError("sigma_indices: negative count");
    for (int c = 0; c < in_reps[static_cast<std::size_t>(i)]; ++c) idx.push_back(m + i);
  }
  return idx;
}

ComplexMatrix assemble_loop_matrix(const SigmaSystem& sys, const IntVector& out_reps,
                                   const IntVector& in_reps) {
  if (static_cast<int>(out_reps.size()) != sys.modes()) {
    throw DomainError("assemble_loop_matrix: count vector length mismatch");
  }
  const std::vector<int> idx = sigma_indices(out_reps, in_reps);
  ComplexMatrix s = sys.sigma(idx, idx);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = sys.zeta(idx[i]);
  }
  return s;
}

double hoeffding_radius(double confidence, std::size_t n_samples) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError("hoeffding_radius: confidence must lie in (0, 1)");
  }
  if (n_samples == 0) throw DomainError("hoeffding_radius: n_samples must be >= 1");
  return std::sqrt(2.0 * std::log(2.0 / (1.0 - confidence)) / static_cast<double>(n_samples));
}

std::size_t plan_samples(double epsilon, double confidence) {
  if (!(epsilon > 0.0)) throw DomainError("plan_samples: epsilon must be > 0");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError("plan_samples: confidence must lie in (0, 1)");
  }
  const double n = std::ceil(2.0 * std::log(2.0 / (1.0 - confidence)) / (epsilon * epsilon));
  if (n > 1e15) throw SizeError("plan_samples: sample count overflows");
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

std::uint64_t component_seed(std::uint64_t seed, std::int64_t k) {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(k) + 0xD1B54A32D192ED03ULL));
}

EstimateWithBound gurvits_generalized(const ComplexMatrix& b, const IntVector& n,
                                      const SampleSpec& spec) {
  require_square(b, "gurvits_generalized");
  check_spec(spec, "gurvits_generalized");
  if (static_cast<Eigen::Index>(n.size()) != b.rows()) {
    throw DomainError("gurvits_generalized: count vector length mismatch");
  }
  std::vector<int> act;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 0) throw DomainError("gurvits_generalized: negative count");
    if (n[i] > 0) act.push_back(static_cast<int>(i));
  }
  if (act.empty()) throw DomainError("gurvits_generalized: all-zero count vector");
  const int k = static_cast<int>(act.size());
  const ComplexMatrix bb = b(act, act);
  IntVector nn(static_cast<std::size_t>(k)), radix(static_cast<std::size_t>(k));
  std::vector<std::vector<cplx>> roots(static_cast<std::size_t>(k));
  int n_sum = 0;
  for (int i = 0; i < k; ++i) {
    const int ni = n[static_cast<std::size_t>(act[static_cast<std::size_t>(i)])];
    nn[static_cast<std::size_t>(i)] = ni;
    radix[static_cast<std::size_t>(i)] = ni + 1;
    n_sum += ni;
    // roots of unity of order n_i + 1, scaled by sqrt(n_i)
    auto& r = roots[static_cast<std::size_t>(i)];
    for (int j = 0; j <= ni; ++j) {
      r.push_back(std::sqrt(static_cast<double>(ni)) *
                  std::polar(1.0, kTwoPi * j / static_cast<double>(ni + 1)));
    }
  }
  ComplexVector y(k);
  auto evaluate = [&]() {
    const ComplexVector by = bb * y;
    cplx t = 1.0;
    for (int i = 0; i < k; ++i) {
      const int ni = nn[static_cast<std::size_t>(i)];
      t *= ipow(std::conj(y(i)) * by(i) / static_cast<double>(ni), ni);
    }
    return t;
  };

  if (spec.exhaustive) {
    const double size = space_size(radix);
    guard_exhaustive(size, "gurvits_generalized");
    cplx sum = 0.0;
    for_each_tuple(radix, [&](const IntVector& c) {
      for (int i = 0; i < k; ++i) y(i) = roots[static_cast<std::size_t>(i)][static_cast<std::size_t>(c[static_cast<std::size_t>(i)])];
      sum += evaluate();
    });
    return exact_result(sum / size, size);
  }
  const double worst = std::pow(spectral_norm(bb), n_sum);
  return monte_carlo(spec, worst, [&](Stream& s) {
    for (int i = 0; i < k; ++i) {
      y(i) = roots[static_cast<std::size_t>(i)][s.below(static_cast<std::uint64_t>(radix[static_cast<std::size_t>(i)]))];
    }
    return evaluate();
  });
}

EstimateWithBound fourier_fock(const UnitaryMatrix& u, const WeightVector& w,
                               const SpectralGrid& grid, std::int64_t k, const IntVector& n,
                               const SampleSpec& spec) {
  const int m = u.modes();
  if (w.size() != m || static_cast<int>(n.size()) != m) {
    throw DomainError("fourier_fock: dimension mismatch");
  }
  if (k < 0 || k > grid.omega_max) throw DomainError("fourier_fock: k out of range");
  const cplx shift = grid.phase(k, grid.offset);
  // V = I at k = 0, so every sample term is exactly 1
  if (total(n) == 0 || k == 0) return exact_result(shift, 1.0);
  ComplexVector e(m);
  for (int j = 0; j < m; ++j) e(j) = grid.phase(k, w[j]);
  const ComplexMatrix v = u.matrix().adjoint() * e.asDiagonal() * u.matrix();
  EstimateWithBound out = gurvits_generalized(v, n, spec);
  out.value *= shift;
  return out;
}

EstimateWithBound kan_hafnian_estimate(const ComplexMatrix& sigma, const SampleSpec& spec) {
  require_symmetric(sigma, "kan_hafnian_estimate");
  check_spec(spec, "kan_hafnian_estimate");
  const int n = static_cast<int>(sigma.rows());
  if (n % 2 != 0) return exact_result(0.0, 1.0);
  if (n == 0) return exact_result(1.0, 1.0);
  if (n > 62) throw SizeError("kan_hafnian_estimate: n > 62");
  const int half = n / 2;
  // per-sample term: (-1)^{|v|} 2^{n/2} / (n/2)! (h^T sigma h)^{n/2}, h = 1/2 - v
  const double coef = std::exp(half * std::log(2.0) - log_factorial(half));
  RealVector h(n);
  auto term = [&](std::uint64_t bits) {
    int ones = 0;
    for (int i = 0; i < n; ++i) {
      const bool v = (bits >> i) & 1u;
      ones += v;
      h(i) = v ? -0.5 : 0.5;
    }
    const cplx q = quad_form(sigma, h);
    return (ones % 2 ? -coef : coef) * ipow(q, half);
  };
  if (spec.exhaustive) {
    const double size = std::ldexp(1.0, n);
    guard_exhaustive(size, "kan_hafnian_estimate");
    cplx sum = 0.0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) sum += term(bits);
    return exact_result(sum / size, size);
  }
  const double worst =
      std::exp(half * std::log(n * spectral_norm(sigma)) - log_factorial(half) - half * std::log(2.0));
  return monte_carlo(spec, worst, [&](Stream& s) {
    std::uint64_t bits = s.next();
    if (n < 64) bits &= (std::uint64_t{1} << n) - 1;
    return term(bits);
  });
}

EstimateWithBound kan_hafnian_repeated(const ComplexMatrix& sigma, const IntVector& n,
                                       const SampleSpec& spec) {
  require_symmetric(sigma, "kan_hafnian_repeated");
  check_spec(spec, "kan_hafnian_repeated");
  const int m = static_cast<int>(sigma.rows());
  if (static_cast<int>(n.size()) != m) throw DomainError("kan_hafnian_repeated: length mismatch");
  int n_sum = 0;
  double sq_sum = 0.0;
  for (int v : n) {
    if (v < 0) throw DomainError("kan_hafnian_repeated: negative count");
    n_sum += v;
    sq_sum += static_cast<double>(v) * v;
  }
  if (n_sum % 2 != 0) return exact_result(0.0, 1.0);
  if (n_sum == 0) return exact_result(1.0, 1.0);
  const int half = n_sum / 2;
  RealVector h(m);
  // (-1)^{|v|} (h^T sigma h / 2)^{n/2}, h = n/2 - v
  auto core = [&](const IntVector& v) {
    int vs = 0;
    for (int i = 0; i < m; ++i) {
      h(i) = 0.5 * n[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)];
      vs += v[static_cast<std::size_t>(i)];
    }
    const cplx q = quad_form(sigma, h);
    const cplx t = ipow(0.5 * q, half);
    return vs % 2 ? -t : t;
  };
  const double inv_half_fact = std::exp(-log_factorial(half));
  if (spec.exhaustive) {
    IntVector radix(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) radix[i] = n[i] + 1;
    const double size = space_size(radix);
    guard_exhaustive(size, "kan_hafnian_repeated");
    cplx sum = 0.0;
    for_each_tuple(radix, [&](const IntVector& v) {
      double wgt = 1.0;
      for (std::size_t i = 0; i < v.size(); ++i) wgt *= binomial(n[i], v[i]);
      sum += wgt * core(v);
    });
    return exact_result(sum * inv_half_fact, size);
  }
  // v_i ~ Binomial(n_i, 1/2), so the weight prod C(n_i, v_i) becomes 2^{n_sum}
  const double coef = std::exp(n_sum * std::log(2.0) - log_factorial(half));
  const double worst = std::exp(n_sum * std::log(2.0) - log_factorial(half) +
                                half * std::log(spectral_norm(sigma) * sq_sum / 8.0));
  IntVector v(n.size());
  return monte_carlo(spec, worst, [&](Stream& s) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      int c = 0;
      for (int left = n[i]; left > 0; left -= 64) {
        std::uint64_t bits = s.next();
        if (left < 64) bits &= (std::uint64_t{1} << left) - 1;
        c += std::popcount(bits);
      }
      v[i] = c;
    }
    return coef * core(v);
  });
}

EstimateWithBound kan_loop_hafnian_estimate(const ComplexMatrix& sigma, const ComplexVector& mu,
                                            const SampleSpec& spec) {
  require_symmetric(sigma, "kan_loop_hafnian_estimate");
  check_spec(spec, "kan_loop_hafnian_estimate");
  const int n = static_cast<int>(sigma.rows());
  if (mu.size() != n) throw DomainError("kan_loop_hafnian_estimate: mu length mismatch");
  if (n == 0) return exact_result(1.0, 1.0);
  if (n > 62) throw SizeError("kan_loop_hafnian_estimate: n > 62");
  const int rmax = n / 2;
  std::vector<double> inv_fact(static_cast<std::size_t>(rmax + 1));
  for (int r = 0; r <= rmax; ++r) {
    inv_fact[static_cast<std::size_t>(r)] = std::exp(-log_factorial(r) - log_factorial(n - 2 * r));
  }
  RealVector h(n);
  cplx q = 0.0, hm = 0.0;
  int ones = 0;
  auto set_v = [&](std::uint64_t bits) {
    ones = 0;
    for (int i = 0; i < n; ++i) {
      const bool v = (bits >> i) & 1u;
      ones += v;
      h(i) = v ? -0.5 : 0.5;
    }
    q = quad_form(sigma, h);
    hm = (h.cast<cplx>().transpose() * mu)(0);
  };
  // (h^T sigma h / 2)^r (h.mu)^{n-2r} / (r! (n-2r)!)
  auto r_term = [&](int r) { return ipow(0.5 * q, r) * ipow(hm, n - 2 * r) * inv_fact[static_cast<std::size_t>(r)]; };
  if (spec.exhaustive) {
    const double size = std::ldexp(1.0, n) * (rmax + 1);
    guard_exhaustive(size, "kan_loop_hafnian_estimate");
    cplx sum = 0.0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      set_v(bits);
      cplx s = 0.0;
      for (int r = 0; r <= rmax; ++r) s += r_term(r);
      sum += ones % 2 ? -s : s;
    }
    return exact_result(sum, size);
  }
  // uniform proposal over (v, r): weight 2^n (floor(n/2) + 1)
  const double coef = std::ldexp(1.0, n) * (rmax + 1);
  const double sn = spectral_norm(sigma);
  const double mn = mu.norm();
  double worst = 0.0;
  for (int r = 0; r <= rmax; ++r) {
    const double env = (rmax + 1) * std::pow(static_cast<double>(n), 0.5 * n) * std::pow(sn, r) *
                       std::pow(mn, n - 2 * r) * std::ldexp(1.0, -r) * inv_fact[static_cast<std::size_t>(r)];
    worst = std::max(worst, env);
  }
  return monte_carlo(spec, worst, [&](Stream& s) {
    std::uint64_t bits = s.next();
    bits &= (std::uint64_t{1} << n) - 1;
    const int r = static_cast<int>(s.below(static_cast<std::uint64_t>(rmax + 1)));
    set_v(bits);
    const cplx t = coef * r_term(r);
    return ones % 2 ? -t : t;
  });
}

EstimateWithBound fock_expectation_estimate(const BlochMessiahForm& f, const IntVector& n,
                                            const SampleSpec& spec) {
  if (static_cast<int>(n.size()) != f.modes()) {
    throw DomainError("fock_expectation_estimate: count vector length mismatch");
  }
  const SigmaSystem sys = build_sigma_system(f);
  const double scale = factorial_product(n);
  if (total(n) == 0) return exact_result(1.0 / sys.z_norm, 1.0);
  EstimateWithBound est;
  if (sys.zeta.cwiseAbs().maxCoeff() <= 1e-14) {
    IntVector reps(n);
    reps.insert(reps.end(), n.begin(), n.end());
    est = kan_hafnian_repeated(sys.sigma, reps, spec);
  } else {
    const std::vector<int> idx = sigma_indices(n, n);
    const ComplexMatrix s = sys.sigma(idx, idx);
    const ComplexVector mu = sys.zeta(idx);
    est = kan_loop_hafnian_estimate(s, mu, spec);
  }
  const double denom = scale * std::abs(sys.z_norm);
  est.value /= scale * sys.z_norm;
  est.std_error /= denom;
  est.analytic_bound /= denom;
  return est;
}

EstimateWithBound fourier_fock_squeezed(const GaussianCircuit& c, const WeightVector& w,
                                        const SpectralGrid& grid, std::int64_t k,
                                        const IntVector& n, const SampleSpec& spec) {
  const int m = c.modes();
  if (w.size() != m || static_cast<int>(n.size()) != m) {
    throw DomainError("fourier_fock_squeezed: dimension mismatch");
  }
  if (k < 0 || k > grid.omega_max) throw DomainError("fourier_fock_squeezed: k out of range");
  const BogoliubovTransform wt = conjugated_phase_shift(c, phases_for(w, grid, k));
  const BlochMessiahForm f = bloch_messiah(wt);
  EstimateWithBound out = fock_expectation_estimate(f, n, spec);
  // The transform fixes the operator only up to a global phase. Pin it with the
  // vacuum component, which the closed form gives for the conjugated operator.
  const cplx vac_form = 1.0 / build_sigma_system(f).z_norm;
  const cplx shift = grid.phase(k, grid.offset);
  const cplx vac_exact = exact_fourier_gaussian(c, w, grid, k) / shift;
  if (std::abs(std::abs(vac_form) - std::abs(vac_exact)) > 1e-8 * std::max(1.0, std::abs(vac_exact))) {
    throw NumericError("fourier_fock_squeezed: vacuum component mismatch at k=" + std::to_string(k));
  }
  const cplx fix = std::abs(vac_form) > 0.0 ? vac_exact / vac_form : cplx(1.0);
  out.value *= shift * fix / std::abs(fix);
  return out;
}

EstimatedSeries fourier_fock_series(const UnitaryMatrix& u, const WeightVector& w,
                                    const SpectralGrid& grid, const IntVector& n,
                                    const SampleSpec& spec) {
  return build_series(grid, spec, [&](std::int64_t k, const SampleSpec& sk) {
    return fourier_fock(u, w, grid, k, n, sk);
  });
}

EstimatedSeries fourier_fock_squeezed_series(const GaussianCircuit& c, const WeightVector& w,
                                             const SpectralGrid& grid, const IntVector& n,
                                             const SampleSpec& spec) {
  return build_series(grid, spec, [&](std::int64_t k, const SampleSpec& sk) {
    return fourier_fock_squeezed(c, w, grid, k, n, sk);
  });
}

}  // namespace vibro
