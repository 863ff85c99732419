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

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "vibro/gaussian.hpp"

using namespace vibro;

namespace {

double diff(const BogoliubovTransform& x, const BogoliubovTransform& y) {
  return std::max({max_abs(x.a - y.a), max_abs(x.b - y.b), (x.xi - y.xi).cwiseAbs().maxCoeff()});
}

BogoliubovTransform random_gaussian(int m, std::mt19937_64& gen, bool displaced = true) {
  RealVector r(m);
  for (int i = 0; i < m; ++i) r(i) = oracle::uniform(gen, 0.0, 1.2);
  ComplexVector xi = ComplexVector::Zero(m);
  if (displaced) xi = oracle::random_complex(m, 1, gen, 0.5);
  return compose(BogoliubovTransform::displacement(xi),
                 compose(BogoliubovTransform::passive(oracle::random_unitary(m, gen).matrix()),
                         compose(BogoliubovTransform::squeezer(r),
                                 BogoliubovTransform::passive(oracle::random_unitary(m, gen).matrix()))));
}

}  // namespace

TEST_CASE("unitary matrix rejects non-unitary input and closes under products") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(UnitaryMatrix{m}, DomainError);
  std::mt19937_64 gen(1);
  for (int t = 0; t < 20; ++t) {
    const UnitaryMatrix a = oracle::random_unitary(4, gen);
    const UnitaryMatrix b = oracle::random_unitary(4, gen);
    CHECK_NOTHROW((void)(a * b));
  }
}

TEST_CASE("doktorov_to_circuit") {
  SUBCASE("identical modes give the identity circuit") {
    DoktorovSpec s{RealVector::Constant(2, 1.5), RealVector::Constant(2, 1.5), UnitaryMatrix::identity(2),
                   RealVector::Zero(2)};
    const GaussianCircuit c = doktorov_to_circuit(s);
    CHECK(c.r0.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(c.alpha.cwiseAbs().maxCoeff() < 1e-12);
    const ComplexMatrix u = c.unitary.matrix();
    const cplx ph = u(0, 0);
    CHECK(max_abs(u - ph * ComplexMatrix::Identity(2, 2)) < 1e-10);
  }
  SUBCASE("frequency ratio 4 is a squeezer of ln 2") {
    DoktorovSpec s{RealVector::Constant(1, 1.0), RealVector::Constant(1, 4.0), UnitaryMatrix::identity(1),
                   RealVector::Zero(1)};
    const GaussianCircuit c = doktorov_to_circuit(s);
    CHECK(c.r0(0) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(std::abs(c.alpha(0)) < 1e-12);
  }
  SUBCASE("displacement sqrt 2 maps to alpha of modulus 1") {
    DoktorovSpec s{RealVector::Constant(1, 1.0), RealVector::Constant(1, 1.0), UnitaryMatrix::identity(1),
                   RealVector::Constant(1, std::sqrt(2.0))};
    const GaussianCircuit c = doktorov_to_circuit(s);
    CHECK(c.r0(0) < 1e-12);
    CHECK(std::abs(c.final_displacement()(0)) == doctest::Approx(1.0).epsilon(1e-10));
    // first moment <n> = |alpha|^2 from the Fock oracle
    const oracle::FockSpace fs(1, 40);
    const ComplexVector psi = fs.circuit(c).apply(fs.basis({0}));
    double mean = 0.0;
    for (int k = 0; k < 40; ++k) mean += k * std::norm(psi(k));
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("non-positive frequency") {
    DoktorovSpec s{RealVector::Constant(1, 0.0), RealVector::Constant(1, 1.0), UnitaryMatrix::identity(1),
                   RealVector::Zero(1)};
    CHECK_THROWS_AS(doktorov_to_circuit(s), DomainError);
  }
}

TEST_CASE("bloch_messiah examples") {
  SUBCASE("identity") {
    const BlochMessiahForm f = bloch_messiah(BogoliubovTransform::identity(3));
    CHECK(f.r.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_abs(f.u_lin2.matrix() * f.u_lin1.matrix() - ComplexMatrix::Identity(3, 3)) < 1e-10);
  }
  SUBCASE("single-mode squeezer is already canonical") {
    const double s = 0.7;
    const BlochMessiahForm f = bloch_messiah(BogoliubovTransform::squeezer(RealVector::Constant(1, s)));
    CHECK(f.r(0) == doctest::Approx(s).epsilon(1e-12));
    CHECK(std::abs(f.u_lin2.matrix()(0, 0) - 1.0) < 1e-10);
    CHECK(std::abs(f.u_lin1.matrix()(0, 0) - 1.0) < 1e-10);
  }
  SUBCASE("symplectic violation") {
    BogoliubovTransform t = BogoliubovTransform::identity(2);
    t.b(0, 1) = 0.3;
    CHECK_THROWS_AS(bloch_messiah(t), NumericError);
  }
}

TEST_CASE("bloch_messiah roundtrip on random transforms") {
  std::mt19937_64 gen(7);
  double worst3 = 0.0;
  for (int t = 0; t < 50; ++t) {
    const BogoliubovTransform g = random_gaussian(3, gen);
    worst3 = std::max(worst3, diff(bloch_messiah(g).recompose(), g));
  }
  CHECK(worst3 <= 1e-10);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int m = 1 + t % 6;
    const BogoliubovTransform g = random_gaussian(m, gen);
    const BlochMessiahForm f = bloch_messiah(g);
    worst = std::max(worst, diff(f.recompose(), g));
    for (int i = 1; i < m; ++i) REQUIRE(f.r(i - 1) >= f.r(i));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("bloch_messiah with degenerate squeezing") {
  std::mt19937_64 gen(9);
  const BogoliubovTransform g =
      compose(BogoliubovTransform::passive(oracle::random_unitary(3, gen).matrix()),
              compose(BogoliubovTransform::squeezer(RealVector::Constant(3, 0.5)),
                      BogoliubovTransform::passive(oracle::random_unitary(3, gen).matrix())));
  CHECK(diff(bloch_messiah(g).recompose(), g) <= 1e-10);
}

TEST_CASE("compose") {
  std::mt19937_64 gen(3);
  const BogoliubovTransform t = random_gaussian(3, gen);
  CHECK(diff(compose(BogoliubovTransform::identity(3), t), t) < 1e-14);
  CHECK(diff(compose(t, t.inverse()), BogoliubovTransform::identity(3)) < 1e-10);
  CHECK(diff(compose(BogoliubovTransform::squeezer(RealVector::Constant(1, 0.3)),
                     BogoliubovTransform::squeezer(RealVector::Constant(1, 0.4))),
             BogoliubovTransform::squeezer(RealVector::Constant(1, 0.7))) < 1e-12);
  for (int i = 0; i < 20; ++i) {
    const BogoliubovTransform a = random_gaussian(3, gen);
    const BogoliubovTransform b = random_gaussian(3, gen);
    const BogoliubovTransform c = random_gaussian(3, gen);
    CHECK(diff(compose(compose(a, b), c), compose(a, compose(b, c))) < 1e-10);
  }
}

TEST_CASE("transforms agree with Fock-space operators") {
  std::mt19937_64 gen(11);
  SUBCASE("single mode circuit") {
    const GaussianCircuit c(UnitaryMatrix(ComplexMatrix::Constant(1, 1, std::polar(1.0, 0.4))),
                            RealVector::Constant(1, 0.5), ComplexVector::Constant(1, cplx(0.3, -0.2)));
    const oracle::FockSpace fs(1, 80);
    CHECK(oracle::transform_mismatch(fs, fs.circuit(c), circuit_transform(c), 4) < 1e-9);
  }
  SUBCASE("two-mode circuit") {
    const GaussianCircuit c(oracle::random_unitary(2, gen), (RealVector(2) << 0.3, 0.2).finished(),
                            (ComplexVector(2) << cplx(0.2, 0.1), cplx(0.0, -0.3)).finished());
    const oracle::FockSpace fs(2, 40);
    CHECK(oracle::transform_mismatch(fs, fs.circuit(c), circuit_transform(c), 3) < 1e-9);
  }
}

TEST_CASE("conjugated_phase_shift") {
  std::mt19937_64 gen(5);
  const GaussianCircuit c(oracle::random_unitary(3, gen), (RealVector(3) << 0.2, 0.5, 0.1).finished(),
                          oracle::random_complex(3, 1, gen, 0.3));
  SUBCASE("zero phases give the identity") {
    CHECK(diff(conjugated_phase_shift(c, RealVector::Zero(3)), BogoliubovTransform::identity(3)) < 1e-12);
  }
  SUBCASE("passive circuit") {
    const UnitaryMatrix u = oracle::random_unitary(3, gen);
    const GaussianCircuit p(u, RealVector::Zero(3), ComplexVector::Zero(3));
    const RealVector phi = (RealVector(3) << 0.3, -1.1, 2.0).finished();
    const BogoliubovTransform t = conjugated_phase_shift(p, phi);
    const ComplexMatrix d = phi.unaryExpr([](double x) { return std::polar(1.0, x); }).asDiagonal();
    CHECK(max_abs(t.a - u.matrix().adjoint() * d * u.matrix()) < 1e-12);
    CHECK(max_abs(t.b) < 1e-12);
  }
  SUBCASE("single-mode squeezer with phase pi") {
    const double r = 1.0;
    const GaussianCircuit s(UnitaryMatrix::identity(1), RealVector::Constant(1, r), ComplexVector::Zero(1));
    const BogoliubovTransform t = conjugated_phase_shift(s, RealVector::Constant(1, std::numbers::pi));
    // S^dag P^dag a P S = -(a cosh r + a^dag sinh r) mapped back through S^-1: a -> -a
    CHECK(std::abs(t.a(0, 0) + 1.0) < 1e-12);
    CHECK(std::abs(t.b(0, 0)) < 1e-12);
    const oracle::FockSpace fs(1, 90);
    const oracle::ExpProduct sq = fs.squeezer(s.r0);
    const oracle::ExpProduct ph = fs.phase(RealVector::Constant(1, std::numbers::pi));
    CHECK(oracle::transform_mismatch(fs, sq.adjoint() * ph * sq, t, 4) < 1e-9);
  }
  SUBCASE("random circuit against Fock space") {
    const GaussianCircuit c2(oracle::random_unitary(2, gen), (RealVector(2) << 0.2, 0.1).finished(),
                             (ComplexVector(2) << cplx(0.2, 0.0), cplx(0.0, 0.1)).finished());
    const RealVector phi = (RealVector(2) << 0.7, -0.4).finished();
    const oracle::FockSpace fs(2, 40);
    const oracle::ExpProduct w = fs.circuit(c2);
    CHECK(oracle::transform_mismatch(fs, w.adjoint() * fs.phase(phi) * w, conjugated_phase_shift(c2, phi), 3) < 1e-9);
  }
}

TEST_CASE("takagi factorization") {
  std::mt19937_64 gen(13);
  const ComplexMatrix s = oracle::random_symmetric(5, gen);
  const TakagiResult t = takagi(s);
  CHECK(max_abs(t.u * t.d.cast<cplx>().asDiagonal() * t.u.transpose() - s) < 1e-10);
  CHECK(max_abs(t.u.adjoint() * t.u - ComplexMatrix::Identity(5, 5)) < 1e-10);
  for (int i = 1; i < 5; ++i) CHECK(t.d(i - 1) >= t.d(i));
}
