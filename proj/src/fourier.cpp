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

#include "vibro/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vibro/rng.hpp"

namespace vibro {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kDenseLimit = 1 << 16;

std::int64_t mod(std::int64_t a, std::int64_t d) {
  const std::int64_t r = a % d;
  return r < 0 ? r + d : r;
}

std::vector<cplx> twiddles(std::int64_t d, double sign) {
  std::vector<cplx> tw(static_cast<std::size_t>(d));
  for (std::int64_t j = 0; j < d; ++j) {
    tw[static_cast<std::size_t>(j)] = std::polar(1.0, sign * kTwoPi * static_cast<double>(j) / d);
  }
  return tw;
}

void check_dense(std::int64_t d) {
  if (d > kDenseLimit) {
    throw SizeError("dense transform limited to " + std::to_string(kDenseLimit) +
                    " bins; use the peak-recovery route");
  }
}

}  // namespace

WeightVector::WeightVector(IntVector omega) : omega_(std::move(omega)) {
  if (omega_.empty()) throw DomainError("WeightVector: empty");
  bool positive = false;
  for (int v : omega_) {
    if (v < 0) throw DomainError("WeightVector: entries must be >= 0");
    positive = positive || v > 0;
  }
  if (!positive) throw DomainError("WeightVector: at least one entry must be > 0");
}

std::int64_t WeightVector::dot(const IntVector& m) const {
  if (m.size() != omega_.size()) throw DomainError("WeightVector.dot: length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += static_cast<std::int64_t>(omega_[i]) * m[i];
  return s;
}

int WeightVector::max() const { return *std::max_element(omega_.begin(), omega_.end()); }

SpectralGrid::SpectralGrid(std::int64_t omega_max_, std::int64_t offset_)
    : omega_max(omega_max_), theta(0.0), offset(offset_) {
  if (omega_max < 0) throw DomainError("SpectralGrid: omega_max must be >= 0");
  theta = kTwoPi / static_cast<double>(omega_max + 1);
}

std::int64_t SpectralGrid::bin(std::int64_t frequency) const {
  return mod(frequency + offset, size());
}

cplx SpectralGrid::phase(std::int64_t k, std::int64_t x) const {
  const std::int64_t d = size();
  const std::int64_t j = mod(mod(k, d) * mod(x, d), d);
  return std::polar(1.0, -kTwoPi * static_cast<double>(j) / static_cast<double>(d));
}

cplx exact_fourier_gaussian(const GaussianCircuit& c, const WeightVector& w,
                            const SpectralGrid& grid, std::int64_t k) {
  const int m = c.modes();
  if (w.size() != m) throw DomainError("exact_fourier_gaussian: weight length mismatch");
  if (k < 0 || k > grid.omega_max) throw DomainError("exact_fourier_gaussian: k out of range");

  // Phi = diag(exp(i phi_j) - 1), phi_j = -k theta w_j
  ComplexVector e(m), phi(m);
  for (int j = 0; j < m; ++j) {
    e(j) = grid.phase(k, w[j]);
    phi(j) = e(j) - 1.0;
  }
  const ComplexMatrix& u = c.unitary.matrix();
  const ComplexVector x0 = c.final_displacement();
  const ComplexVector y0 = x0.conjugate();
  const cplx c0 = (x0.array() * phi.array() * y0.array()).sum();

  // Modes with vanishing squeezing have a point-mass P-function at the origin;
  // their integration variables drop out.
  std::vector<int> act;
  for (int i = 0; i < m; ++i) {
    if (c.r0(i) > kMinSqueezing) act.push_back(i);
  }
  const int p = static_cast<int>(act.size());
  cplx log_g = c0;
  if (p > 0) {
    ComplexMatrix ua(m, p);
    RealVector gamma(p);
    for (int j = 0; j < p; ++j) {
      ua.col(j) = u.col(act[static_cast<std::size_t>(j)]);
      gamma(j) = std::expm1(2.0 * c.r0(act[static_cast<std::size_t>(j)]));
    }
    const ComplexMatrix off = -(ua.transpose() * e.asDiagonal() * ua.conjugate());
    ComplexMatrix q = ComplexMatrix::Zero(2 * p, 2 * p);
    for (int j = 0; j < p; ++j) {
      q(j, j) = 2.0 / gamma(j) + 1.0;
      q(p + j, p + j) = 2.0 / gamma(j) + 1.0;
    }
    q.topRightCorner(p, p) = off;
    q.bottomLeftCorner(p, p) = off.transpose();
    ComplexVector cv(2 * p);
    cv.head(p) = ua.transpose() * phi.asDiagonal() * y0;
    cv.tail(p) = ua.adjoint() * phi.asDiagonal() * x0;

    const Eigen::PartialPivLU<ComplexMatrix> lu(q);
    const cplx det = lu.determinant();
    if (!(std::abs(det) > 0.0) || !std::isfinite(std::abs(det))) {
      throw NumericError("exact_fourier_gaussian: singular Q at k=" + std::to_string(k));
    }
    // Every eigenvalue of Q has positive real part (Re Q is positive definite),
    // so the product of principal roots is the branch continuous from k = 0.
    const Eigen::ComplexEigenSolver<ComplexMatrix> es(q, false);
    cplx log_sqrt_det = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      log_sqrt_det += 0.5 * std::log(es.eigenvalues()(i));
    }
    const cplx sq = std::exp(log_sqrt_det);
    if (std::abs(sq * sq - det) > 1e-6 * std::abs(det)) {
      throw NumericError("exact_fourier_gaussian: determinant mismatch at k=" + std::to_string(k));
    }
    // N (2 pi)^p = prod 2 sqrt(1 + gamma) / gamma
    double log_norm = 0.0;
    for (int j = 0; j < p; ++j) {
      log_norm += std::log(2.0) + 0.5 * std::log1p(gamma(j)) - std::log(gamma(j));
    }
    const ComplexVector sol = lu.solve(cv);
    log_g += log_norm - log_sqrt_det + 0.5 * (cv.transpose() * sol)(0);
  }
  cplx g = std::exp(log_g) * grid.phase(k, grid.offset);
  if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
    throw NumericError("exact_fourier_gaussian: non-finite result at k=" + std::to_string(k));
  }
  return g;
}

FourierSeries exact_fourier_series(const GaussianCircuit& c, const WeightVector& w,
                                   const SpectralGrid& grid) {
  check_dense(grid.size());
  FourierSeries f{grid, std::vector<cplx>(static_cast<std::size_t>(grid.size()))};
  const std::int64_t d = grid.size();
  for (std::int64_t k = 0; k <= d / 2; ++k) {
    f.values[static_cast<std::size_t>(k)] = exact_fourier_gaussian(c, w, grid, k);
  }
  // the spectrum is real, so the upper half is the conjugate of the lower half
  for (std::int64_t k = d / 2 + 1; k < d; ++k) {
    f.values[static_cast<std::size_t>(k)] = std::conj(f.values[static_cast<std::size_t>(d - k)]);
  }
  return f;
}

Spectrum inverse_dft(const FourierSeries& f) {
  const std::int64_t d = f.grid.size();
  if (static_cast<std::int64_t>(f.values.size()) != d) {
    throw DomainError("inverse_dft: series length does not match grid");
  }
  check_dense(d);
  const auto tw = twiddles(d, +1.0);
  Spectrum s{f.grid, std::vector<double>(static_cast<std::size_t>(d))};
  double worst = 0.0;
  for (std::int64_t om = 0; om < d; ++om) {
    cplx acc = 0.0;
    for (std::int64_t k = 0; k < d; ++k) {
      acc += f.values[static_cast<std::size_t>(k)] * tw[static_cast<std::size_t>((k * om) % d)];
    }
    acc /= static_cast<double>(d);
    worst = std::max(worst, std::abs(acc.imag()));
    s.values[static_cast<std::size_t>(om)] = acc.real();
  }
  if (worst > 1e-6) {
    throw NumericError("inverse_dft: imaginary residue " + std::to_string(worst) +
                       " indicates inconsistent Fourier data");
  }
  return s;
}

FourierSeries forward_dft(const Spectrum& s) {
  const std::int64_t d = s.grid.size();
  if (static_cast<std::int64_t>(s.values.size()) != d) {
    throw DomainError("forward_dft: spectrum length does not match grid");
  }
  check_dense(d);
  const auto tw = twiddles(d, -1.0);
  FourierSeries f{s.grid, std::vector<cplx>(static_cast<std::size_t>(d))};
  for (std::int64_t k = 0; k < d; ++k) {
    cplx acc = 0.0;
    for (std::int64_t om = 0; om < d; ++om) {
      acc += s.values[static_cast<std::size_t>(om)] * tw[static_cast<std::size_t>((k * om) % d)];
    }
    f.values[static_cast<std::size_t>(k)] = acc;
  }
  return f;
}

double parseval_bound(double per_component_error, const SpectralGrid& grid) {
  (void)grid;
  if (per_component_error < 0.0) throw DomainError("parseval_bound: eps must be >= 0");
  // sum |dG|^2 = (1/d) sum |dG~|^2 <= eps^2 bounds every single bin
  return per_component_error;
}

PositivePSample sample_positive_p(const RealVector& r0, std::uint64_t seed, std::uint64_t index) {
  const auto m = r0.size();
  PositivePSample s{RealVector(m), RealVector(m)};
  Stream rng = make_stream(seed, Lane::Real, index);
  for (Eigen::Index i = 0; i < m; ++i) {
    // precision matrix 2 [[1/g + 1/2, -1/2], [-1/2, 1/g + 1/2]] = L L^T
    const double a = 1.0 / std::expm1(2.0 * r0(i)) + 0.5;
    const double l11 = std::sqrt(2.0 * a);
    const double l21 = -1.0 / l11;
    const double l22 = std::sqrt(2.0 * a - l21 * l21);
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    s.y(i) = z2 / l22;
    s.x(i) = (z1 - l21 * s.y(i)) / l11;
  }
  return s;
}

EstimateWithBound montecarlo_fourier_positive_p(const GaussianCircuit& c, const WeightVector& w,
                                                const SpectralGrid& grid, std::int64_t k,
                                                std::size_t n_samples, std::uint64_t seed) {
  const int m = c.modes();
  if (w.size() != m) throw DomainError("positive-P: weight length mismatch");
  if (k < 0 || k > grid.omega_max) throw DomainError("positive-P: k out of range");
  if (n_samples == 0) throw DomainError("positive-P: n_samples must be >= 1");
  for (int i = 0; i < m; ++i) {
    if (!(c.r0(i) > 0.0)) {
      throw DomainError("positive-P: zero squeezing has no squeezed-vacuum P-function; use the exact route");
    }
  }
  if (c.alpha.cwiseAbs().maxCoeff() != 0.0) {
    throw DomainError("positive-P: displaced inputs are handled by the exact route");
  }
  ComplexVector phi(m);
  for (int j = 0; j < m; ++j) phi(j) = grid.phase(k, w[j]) - 1.0;
  const ComplexMatrix& u = c.unitary.matrix();
  const ComplexMatrix uc = u.conjugate();

  double sr = 0.0, si = 0.0, sr2 = 0.0, si2 = 0.0;
  for (std::size_t n = 0; n < n_samples; ++n) {
    const PositivePSample s = sample_positive_p(c.r0, seed, n);
    const ComplexVector xp = u * s.x.cast<cplx>();
    const ComplexVector yp = uc * s.y.cast<cplx>();
    const cplx f = std::exp((xp.array() * yp.array() * phi.array()).sum());
    sr += f.real();
    si += f.imag();
    sr2 += f.real() * f.real();
    si2 += f.imag() * f.imag();
  }
  const double nn = static_cast<double>(n_samples);
  const cplx mean(sr / nn, si / nn);
  const double var = std::max(0.0, sr2 / nn - mean.real() * mean.real()) +
                     std::max(0.0, si2 / nn - mean.imag() * mean.imag());
  EstimateWithBound out;
  out.value = mean * grid.phase(k, grid.offset);
  out.std_error = n_samples > 1 ? std::sqrt(var / (nn - 1.0)) : 0.0;
  out.n_samples = n_samples;
  // the integrand is unbounded, so there is no worst-case envelope
  out.analytic_bound = std::numeric_limits<double>::infinity();
  out.confidence = 0.0;
  return out;
}

LiftedProblem finite_temperature_lift(const GaussianCircuit& c, const RealVector& s,
                                      const WeightVector& w_initial,
                                      const WeightVector& w_final, int photon_cutoff) {
  const int m = c.modes();
  if (s.size() != m || w_initial.size() != m || w_final.size() != m) {
    throw DomainError("finite_temperature_lift: dimension mismatch");
  }
  if (photon_cutoff < 1) throw DomainError("finite_temperature_lift: photon_cutoff must be >= 1");
  for (int i = 0; i < m; ++i) {
    if (!(s(i) >= 0.0)) throw DomainError("finite_temperature_lift: squeezing must be >= 0");
  }
  const int mm = 2 * m;
  // two-mode squeezers pairing mode i with mode m + i
  BogoliubovTransform tms = BogoliubovTransform::identity(mm);
  for (int i = 0; i < m; ++i) {
    tms.a(i, i) = tms.a(m + i, m + i) = std::cosh(s(i));
    tms.b(i, m + i) = tms.b(m + i, i) = std::sinh(s(i));
  }
  const BogoliubovTransform g = circuit_transform(c);
  BogoliubovTransform gg = BogoliubovTransform::identity(mm);
  gg.a.topLeftCorner(m, m) = g.a;
  gg.b.topLeftCorner(m, m) = g.b;
  gg.xi.head(m) = g.xi;
  const BlochMessiahForm f = bloch_messiah(compose(gg, tms));

  const std::int64_t shift = static_cast<std::int64_t>(photon_cutoff) * w_initial.max();
  const std::int64_t omega_max = shift + static_cast<std::int64_t>(photon_cutoff) * w_final.max();
  const std::int64_t d = omega_max + 1;
  IntVector w(static_cast<std::size_t>(mm));
  for (int i = 0; i < m; ++i) {
    w[static_cast<std::size_t>(i)] = w_final[i];
    w[static_cast<std::size_t>(m + i)] = static_cast<int>((d - w_initial[i]) % d);
  }
  return LiftedProblem{GaussianCircuit(f.u_lin2, f.r, f.u_lin2.matrix().adjoint() * f.xi),
                       WeightVector(std::move(w)), SpectralGrid(omega_max, shift)};
}

}  // namespace vibro
