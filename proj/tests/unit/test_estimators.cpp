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

#include <doctest.h>

#include "support/oracles.hpp"
#include "vibro/estimators.hpp"
#include "vibro/hafnian.hpp"
#include "vibro/oracle.hpp"

using namespace vibro;

namespace {

SampleSpec exhaustive() {
  SampleSpec s;
  s.exhaustive = true;
  return s;
}

SampleSpec sampled(std::size_t n, std::uint64_t seed) {
  SampleSpec s;
  s.n_samples = n;
  s.seed = seed;
  return s;
}

BlochMessiahForm random_form(int m, std::mt19937_64& gen, double rmax, double xi_scale) {
  RealVector r(m);
  for (int i = 0; i < m; ++i) r(i) = oracle::uniform(gen, 0.0, rmax);
  std::sort(r.data(), r.data() + m, std::greater<>());
  ComplexVector xi = ComplexVector::Zero(m);
  if (xi_scale > 0) xi = oracle::random_complex(m, 1, gen, xi_scale);
  return BlochMessiahForm{oracle::random_unitary(m, gen), r, oracle::random_unitary(m, gen), xi};
}

ComplexMatrix with_diagonal(ComplexMatrix s, const ComplexVector& d) {
  s.diagonal() = d;
  return s;
}

}  // namespace

TEST_CASE("generalized Gurvits") {
  CHECK(std::abs(gurvits_generalized(ComplexMatrix::Identity(2, 2), {1, 1}, exhaustive()).value - 1.0) < 1e-15);
  CHECK(std::abs(gurvits_generalized(ComplexMatrix::Ones(1, 1), {2}, exhaustive()).value - 1.0) < 1e-12);
  std::mt19937_64 gen(41);
  const ComplexMatrix u = oracle::random_unitary(3, gen).matrix();
  const IntVector n{2, 1, 1};
  const cplx want = oracle::ryser_permanent(oracle::repeat(u, n)) / oracle::fact_product(n);
  CHECK(std::abs(gurvits_generalized(u, n, exhaustive()).value - want) < 1e-10);
  CHECK(std::abs(gurvits_generalized(u, {0, 3, 0}, exhaustive()).value -
                 oracle::ryser_permanent(oracle::repeat(u, {0, 3, 0})) / 6.0) < 1e-10);
  CHECK_THROWS_AS(gurvits_generalized(u, {0, 0, 0}, exhaustive()), DomainError);
}

TEST_CASE("Gurvits sampling respects its analytic bound and is deterministic") {
  std::mt19937_64 gen(42);
  const ComplexMatrix u = oracle::random_unitary(4, gen).matrix();
  const IntVector n{1, 2, 0, 1};
  const cplx want = oracle::ryser_permanent(oracle::repeat(u, n)) / oracle::fact_product(n);
  int misses = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const EstimateWithBound e = gurvits_generalized(u, n, sampled(plan_samples(0.1, 0.99), seed));
    CHECK(e.analytic_bound > 0.0);
    if (std::abs(e.value.real() - want.real()) > e.analytic_bound ||
        std::abs(e.value.imag() - want.imag()) > e.analytic_bound) {
      ++misses;
    }
  }
  CHECK(misses <= 2);
  const EstimateWithBound a = gurvits_generalized(u, n, sampled(5000, 9));
  const EstimateWithBound b = gurvits_generalized(u, n, sampled(5000, 9));
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("fourier_fock") {
  std::mt19937_64 gen(43);
  const UnitaryMatrix u = oracle::random_unitary(4, gen);
  const WeightVector w({1, 2, 3, 4});
  const SpectralGrid grid(16);
  const IntVector n{1, 1, 1, 1};
  SUBCASE("k = 0") {
    const EstimateWithBound e = fourier_fock(u, w, grid, 0, n, sampled(100, 1));
    CHECK(e.value == cplx(1.0));
  }
  SUBCASE("the conjugated phase matrix has unit norm") {
    for (std::int64_t k = 0; k < 17; ++k) {
      ComplexVector e(4);
      for (int j = 0; j < 4; ++j) e(j) = grid.phase(k, w[j]);
      CHECK(spectral_norm(u.matrix().adjoint() * e.asDiagonal() * u.matrix()) <= 1.0 + 1e-10);
    }
  }
  SUBCASE("exhaustive series equals the enumeration oracle") {
    const Spectrum want = enumerate_spectrum_fock(u, n, w, grid).spectrum;
    const EstimatedSeries es = fourier_fock_series(u, w, grid, n, exhaustive());
    CHECK(oracle::max_diff(inverse_dft(es.series).values, want.values) <= 1e-9);
  }
  SUBCASE("sampled series stays inside its bound") {
    const Spectrum want = enumerate_spectrum_fock(u, n, w, grid).spectrum;
    const EstimatedSeries es = fourier_fock_series(u, w, grid, n, sampled(100000, 5));
    CHECK(oracle::max_diff(inverse_dft(es.series).values, want.values) <= parseval_bound(es.max_bound, grid));
    for (const EstimateWithBound& c : es.components) CHECK(c.std_error <= c.analytic_bound);
  }
  SUBCASE("even grid: the middle component is real") {
    const SpectralGrid even(17);
    const EstimatedSeries es = fourier_fock_series(u, w, even, n, sampled(1000, 9));
    CHECK(es.series.values[9].imag() == 0.0);
    CHECK_NOTHROW(inverse_dft(es.series));
  }
}

TEST_CASE("sigma system") {
  std::mt19937_64 gen(44);
  SUBCASE("no squeezing, no displacement") {
    BlochMessiahForm f = random_form(3, gen, 0.0, 0.0);
    f.r.setZero();
    const SigmaSystem s = build_sigma_system(f);
    const ComplexMatrix p = f.u_lin2.matrix() * f.u_lin1.matrix();
    CHECK(max_abs(s.sigma.topLeftCorner(3, 3)) < 1e-15);
    CHECK(max_abs(s.sigma.bottomRightCorner(3, 3)) < 1e-15);
    CHECK(max_abs(s.sigma.topRightCorner(3, 3) - p) < 1e-14);
    CHECK(max_abs(s.sigma.bottomLeftCorner(3, 3) - p.transpose()) < 1e-14);
    CHECK(s.zeta.cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(s.z_norm - 1.0) < 1e-15);
  }
  SUBCASE("single mode squeezer") {
    const double r = 0.6;
    const BlochMessiahForm f{UnitaryMatrix::identity(1), RealVector::Constant(1, r), UnitaryMatrix::identity(1),
                             ComplexVector::Zero(1)};
    const SigmaSystem s = build_sigma_system(f);
    CHECK(std::abs(s.sigma(0, 0) - std::tanh(r)) < 1e-15);
    CHECK(std::abs(s.sigma(0, 1) - 1.0 / std::cosh(r)) < 1e-15);
    CHECK(std::abs(s.sigma(1, 1) + std::tanh(r)) < 1e-15);
    CHECK(std::abs(s.z_norm - std::sqrt(std::cosh(r))) < 1e-14);
  }
  SUBCASE("unit norm") {
    for (int t = 0; t < 200; ++t) {
      const SigmaSystem s = build_sigma_system(random_form(1 + t % 5, gen, 2.0, 0.5));
      CHECK(std::abs(spectral_norm(s.sigma) - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("Kan hafnian") {
  std::mt19937_64 gen(45);
  ComplexMatrix two(2, 2);
  two << 3.0, cplx(0.2, -0.4), cplx(0.2, -0.4), -1.0;
  CHECK(std::abs(kan_hafnian_estimate(two, exhaustive()).value - cplx(0.2, -0.4)) < 1e-14);
  CHECK(std::abs(kan_hafnian_estimate(ComplexMatrix::Ones(4, 4), exhaustive()).value - 3.0) < 1e-12);
  CHECK(kan_hafnian_estimate(ComplexMatrix::Ones(3, 3), exhaustive()).value == cplx(0.0));
  for (int n = 2; n <= 8; n += 2) {
    const ComplexMatrix s = oracle::random_symmetric(n, gen);
    CHECK(std::abs(kan_hafnian_estimate(s, exhaustive()).value - oracle::matching_hafnian(s)) < 1e-10);
  }
  const ComplexMatrix s2 = oracle::random_symmetric(2, gen);
  CHECK(std::abs(kan_hafnian_repeated(s2, {2, 2}, exhaustive()).value -
                 oracle::matching_hafnian(oracle::repeat(s2, {2, 2}))) < 1e-10);
  const ComplexMatrix s3 = oracle::random_symmetric(3, gen);
  CHECK(std::abs(kan_hafnian_repeated(s3, {3, 1, 2}, exhaustive()).value -
                 oracle::matching_hafnian(oracle::repeat(s3, {3, 1, 2}))) < 1e-10);
  CHECK(kan_hafnian_repeated(s3, {1, 1, 1}, exhaustive()).value == cplx(0.0));
  ComplexMatrix ns = s3;
  ns(0, 1) += 0.1;
  CHECK_THROWS_AS(kan_hafnian_estimate(ns, exhaustive()), DomainError);
}

TEST_CASE("Kan loop hafnian") {
  std::mt19937_64 gen(46);
  ComplexMatrix two = ComplexMatrix::Zero(2, 2);
  two(0, 1) = two(1, 0) = 0.5;
  const ComplexVector mu2 = (ComplexVector(2) << cplx(1.0, 1.0), cplx(2.0, 0.0)).finished();
  CHECK(std::abs(kan_loop_hafnian_estimate(two, mu2, exhaustive()).value - (0.5 + mu2(0) * mu2(1))) < 1e-13);
  CHECK(std::abs(kan_loop_hafnian_estimate(ComplexMatrix::Ones(3, 3), ComplexVector::Ones(3), exhaustive()).value -
                 4.0) < 1e-12);
  for (int n = 1; n <= 8; ++n) {
    const ComplexMatrix s = oracle::random_symmetric(n, gen);
    const ComplexVector mu = oracle::random_complex(n, 1, gen);
    CHECK(std::abs(kan_loop_hafnian_estimate(s, mu, exhaustive()).value -
                   oracle::matching_loop_hafnian(with_diagonal(s, mu))) < 1e-10);
    const cplx zero_mu = kan_loop_hafnian_estimate(s, ComplexVector::Zero(n), exhaustive()).value;
    CHECK(std::abs(zero_mu - kan_hafnian_estimate(s, exhaustive()).value) < 1e-10);
  }
}

TEST_CASE("Fock expectation of a Gaussian unitary") {
  std::mt19937_64 gen(47);
  const BlochMessiahForm f = random_form(2, gen, 0.6, 0.3);
  const oracle::FockSpace fs(2, 40);
  const oracle::ExpProduct w = fs.displacement(f.xi) * fs.passive(f.u_lin2.matrix()) * fs.squeezer(f.r) *
                               fs.passive(f.u_lin1.matrix());
  for (const IntVector& n : std::vector<IntVector>{{0, 0}, {1, 0}, {1, 1}, {2, 1}}) {
    const cplx want = w.apply(fs.basis(n))(fs.index(n));
    CHECK(std::abs(fock_expectation_estimate(f, n, exhaustive()).value - want) < 1e-8);
  }
}

TEST_CASE("fourier_fock_squeezed") {
  std::mt19937_64 gen(48);
  SUBCASE("vacuum input is the Gaussian component") {
    const GaussianCircuit c(oracle::random_unitary(2, gen), (RealVector(2) << 0.5, 0.2).finished(),
                            (ComplexVector(2) << cplx(0.1, 0.2), 0.0).finished());
    const WeightVector w({1, 3});
    const SpectralGrid grid(31);
    for (std::int64_t k : {0, 1, 5, 17}) {
      CHECK(std::abs(fourier_fock_squeezed(c, w, grid, k, {0, 0}, exhaustive()).value -
                     exact_fourier_gaussian(c, w, grid, k)) < 1e-10);
    }
  }
  SUBCASE("no squeezing reduces to the permanent route") {
    const UnitaryMatrix u = oracle::random_unitary(3, gen);
    const GaussianCircuit c(u, RealVector::Zero(3), ComplexVector::Zero(3));
    const WeightVector w({1, 2, 4});
    const SpectralGrid grid(12);
    for (const IntVector& n : std::vector<IntVector>{{1, 1, 0}, {2, 0, 1}, {1, 1, 2}}) {
      for (std::int64_t k = 0; k <= 12; ++k) {
        CHECK(std::abs(fourier_fock_squeezed(c, w, grid, k, n, exhaustive()).value -
                       fourier_fock(u, w, grid, k, n, exhaustive()).value) < 1e-10);
      }
    }
  }
  SUBCASE("squeezed single photons against enumeration") {
    const GaussianCircuit c(oracle::random_unitary(2, gen), RealVector::Constant(2, 0.8), ComplexVector::Zero(2));
    const WeightVector w({1, 2});
    const SpectralGrid grid(127);
    EnumerationConfig cfg;
    cfg.photon_cutoff = 70;
    const EnumerationResult e = enumerate_spectrum_gaussian(c, {1, 1}, w, grid, cfg);
    const std::vector<cplx> want = oracle::slow_dft(e.spectrum.values);
    for (std::int64_t k : {0, 1, 2, 7, 40, 64, 100}) {
      CHECK(std::abs(fourier_fock_squeezed(c, w, grid, k, {1, 1}, exhaustive()).value -
                     want[static_cast<std::size_t>(k)]) < 1e-8);
    }
  }
}

TEST_CASE("plan_samples") {
  CHECK(plan_samples(1.0, 0.5000001) >= 1);
  const long double want = std::ceil(2.0L * std::log(2.0L / 1e-6L) / 1e-4L);
  CHECK(plan_samples(0.01, 1.0 - 1e-6) == static_cast<std::size_t>(want));
  CHECK_THROWS_AS(plan_samples(0.0, 0.9), DomainError);
  CHECK_THROWS_AS(plan_samples(0.1, 1.0), DomainError);
  CHECK(hoeffding_radius(0.99, plan_samples(0.05, 0.99)) <= 0.05);
}
