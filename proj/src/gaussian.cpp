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

#include "vibro/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vibro {

namespace {

void check_modes(int expected, Eigen::Index got, const char* what) {
  if (got != expected) {
    throw DomainError(std::string(what) + ": expected length " + std::to_string(expected) +
                      ", got " + std::to_string(got));
  }
}

// Deterministic phase: the largest entry of each column gets a positive real
// part. Columns before `sign_only` may only flip sign (Takagi vectors of a
// nonzero value); the rest take a full phase.
void fix_column_phases(ComplexMatrix& u, Eigen::Index sign_only) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      // small bias keeps the pick stable between near-equal entries
      const double a = std::abs(u(i, j));
      if (a > best_abs * (1.0 + 1e-9)) {
        best_abs = a;
        best = i;
      }
    }
    if (best_abs <= 0.0) continue;
    if (j < sign_only) {
      if (u(best, j).real() < 0.0) u.col(j) *= -1.0;
    } else {
      u.col(j) *= std::conj(u(best, j)) / best_abs;
    }
  }
}

}  // namespace

GaussianCircuit::GaussianCircuit(UnitaryMatrix u, RealVector r, ComplexVector a)
    : unitary(std::move(u)), r0(std::move(r)), alpha(std::move(a)) {
  const int m = unitary.modes();
  check_modes(m, r0.size(), "GaussianCircuit.r0");
  check_modes(m, alpha.size(), "GaussianCircuit.alpha");
  for (int i = 0; i < m; ++i) {
    if (!(r0(i) >= 0.0) || !std::isfinite(r0(i))) {
      throw DomainError("GaussianCircuit.r0: entries must be finite and >= 0");
    }
  }
  require_finite(alpha, "GaussianCircuit.alpha");
}

ComplexVector GaussianCircuit::final_displacement() const { return unitary.matrix() * alpha; }

BogoliubovTransform BogoliubovTransform::identity(int m) {
  return {ComplexMatrix::Identity(m, m), ComplexMatrix::Zero(m, m), ComplexVector::Zero(m)};
}

BogoliubovTransform BogoliubovTransform::passive(const ComplexMatrix& u) {
  const auto m = u.rows();
  return {u, ComplexMatrix::Zero(m, m), ComplexVector::Zero(m)};
}

BogoliubovTransform BogoliubovTransform::squeezer(const RealVector& r) {
  const auto m = r.size();
  ComplexMatrix a = ComplexMatrix::Zero(m, m);
  ComplexMatrix b = ComplexMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, i) = std::cosh(r(i));
    b(i, i) = std::sinh(r(i));
  }
  return {a, b, ComplexVector::Zero(m)};
}

BogoliubovTransform BogoliubovTransform::displacement(const ComplexVector& alpha) {
  const auto m = alpha.size();
  return {ComplexMatrix::Identity(m, m), ComplexMatrix::Zero(m, m), alpha};
}

BogoliubovTransform BogoliubovTransform::phase_shift(const RealVector& phi) {
  const auto m = phi.size();
  ComplexMatrix a = ComplexMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) a(i, i) = std::polar(1.0, phi(i));
  return passive(a);
}

double BogoliubovTransform::symplectic_error() const {
  const auto m = a.rows();
  const double e1 = max_abs(a * a.adjoint() - b * b.adjoint() - ComplexMatrix::Identity(m, m));
  const double e2 = max_abs(a * b.transpose() - b * a.transpose());
  return std::max(e1, e2);
}

BogoliubovTransform BogoliubovTransform::inverse() const {
  BogoliubovTransform inv;
  inv.a = a.adjoint();
  inv.b = -b.transpose();
  inv.xi = -(a.adjoint() * xi) + b.transpose() * xi.conjugate();
  return inv;
}

BogoliubovTransform BlochMessiahForm::recompose() const {
  const auto m = r.size();
  RealVector ch(m), sh(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    ch(i) = std::cosh(r(i));
    sh(i) = std::sinh(r(i));
  }
  const ComplexMatrix& u2 = u_lin2.matrix();
  const ComplexMatrix& u1 = u_lin1.matrix();
  BogoliubovTransform t;
  t.a = u2 * ch.cast<cplx>().asDiagonal() * u1;
  t.b = u2 * sh.cast<cplx>().asDiagonal() * u1.conjugate();
  t.xi = xi;
  return t;
}

TakagiResult takagi(const ComplexMatrix& s, double zero_tol) {
  require_square(s, "takagi");
  const auto n = s.rows();
  if (max_abs(s - s.transpose()) > 1e-8 * std::max(1.0, max_abs(s))) {
    throw DomainError("takagi: matrix is not symmetric");
  }
  // With S = X + iY and u = p + iq, S conj(u) = d u is the real symmetric
  // eigenproblem [[X, Y], [Y, -X]] (p; q) = d (p; q); eigenvalues pair as +-d.
  Eigen::MatrixXd h(2 * n, 2 * n);
  const Eigen::MatrixXd x = 0.5 * (s.real() + s.real().transpose());
  const Eigen::MatrixXd y = 0.5 * (s.imag() + s.imag().transpose());
  h << x, y, y, -x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw NumericError("takagi: eigensolver failed");

  TakagiResult out{ComplexMatrix::Zero(n, n), RealVector::Zero(n)};
  Eigen::Index kept = 0;
  for (Eigen::Index k = 2 * n - 1; k >= n; --k) {
    const double ev = es.eigenvalues()(k);
    if (ev <= zero_tol) break;
    const auto v = es.eigenvectors().col(k);
    for (Eigen::Index i = 0; i < n; ++i) out.u(i, kept) = cplx(v(i), v(n + i));
    out.d(kept) = ev;
    ++kept;
  }
  // tiny values can leave the complex columns slightly non-orthogonal
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < kept; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) out.u.col(j) -= out.u.col(i).dot(out.u.col(j)) * out.u.col(i);
      out.u.col(j).normalize();
    }
  }
  if (kept < n) {
    // complete with an orthonormal basis of the orthogonal complement; any such
    // vector u satisfies S conj(u) = 0
    Eigen::Index filled = kept;
    for (Eigen::Index j = 0; j < n && filled < n; ++j) {
      ComplexVector v = ComplexVector::Unit(n, j);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index i = 0; i < filled; ++i) v -= out.u.col(i).dot(v) * out.u.col(i);
      }
      const double nv = v.norm();
      if (nv > 1e-6) {
        out.u.col(filled) = v / nv;
        out.d(filled) = 0.0;
        ++filled;
      }
    }
    if (filled != n) throw NumericError("takagi: failed to complete the unitary basis");
  }
  fix_column_phases(out.u, kept);
  return out;
}

BogoliubovTransform compose(const BogoliubovTransform& t1, const BogoliubovTransform& t2) {
  if (t1.modes() != t2.modes()) throw DomainError("compose: mode count mismatch");
  BogoliubovTransform t;
  t.a = t1.a * t2.a + t1.b * t2.b.conjugate();
  t.b = t1.a * t2.b + t1.b * t2.a.conjugate();
  t.xi = t1.a * t2.xi + t1.b * t2.xi.conjugate() + t1.xi;
  return t;
}

BlochMessiahForm bloch_messiah(const BogoliubovTransform& t) {
  const int m = t.modes();
  if (t.b.rows() != m || t.b.cols() != m || t.xi.size() != m || t.a.cols() != m) {
    throw DomainError("bloch_messiah: inconsistent block shapes");
  }
  require_finite(t.a, "bloch_messiah");
  require_finite(t.b, "bloch_messiah");
  const double serr = t.symplectic_error();
  if (serr > kSymplecticTol) {
    throw NumericError("bloch_messiah: symplectic violation " + std::to_string(serr));
  }
  // A B^T = U2 cosh(r) sinh(r) U2^T, so its Takagi vectors are the output modes.
  ComplexMatrix abt = t.a * t.b.transpose();
  abt = 0.5 * (abt + abt.transpose()).eval();
  const TakagiResult tk = takagi(abt, 1e-12);
  RealVector r(m), ch(m);
  for (int i = 0; i < m; ++i) {
    r(i) = 0.5 * std::asinh(2.0 * tk.d(i));
    ch(i) = std::cosh(r(i));
  }
  ComplexMatrix u1 = ch.cwiseInverse().cast<cplx>().asDiagonal() * (tk.u.adjoint() * t.a);
  u1 = nearest_unitary(u1);
  BlochMessiahForm f{UnitaryMatrix(nearest_unitary(tk.u)), r, UnitaryMatrix(u1), t.xi};
  const BogoliubovTransform back = f.recompose();
  const double rerr = std::max(max_abs(back.a - t.a), max_abs(back.b - t.b));
  if (rerr > kSymplecticTol) {
    throw NumericError("bloch_messiah: recomposition error " + std::to_string(rerr));
  }
  return f;
}

BogoliubovTransform circuit_transform(const GaussianCircuit& c) {
  return compose(BogoliubovTransform::passive(c.unitary.matrix()),
                 compose(BogoliubovTransform::displacement(c.alpha),
                         BogoliubovTransform::squeezer(c.r0)));
}

GaussianCircuit doktorov_to_circuit(const DoktorovSpec& spec) {
  const int m = spec.u_r.modes();
  check_modes(m, spec.omega_i.size(), "DoktorovSpec.omega_i");
  check_modes(m, spec.omega_f.size(), "DoktorovSpec.omega_f");
  check_modes(m, spec.delta.size(), "DoktorovSpec.delta");
  RealVector si(m), sf(m);
  for (int i = 0; i < m; ++i) {
    if (!(spec.omega_i(i) > 0.0) || !(spec.omega_f(i) > 0.0)) {
      throw DomainError("DoktorovSpec: frequencies must be strictly positive");
    }
    si(i) = 0.5 * std::log(spec.omega_i(i));
    sf(i) = -0.5 * std::log(spec.omega_f(i));
  }
  const ComplexVector shift = spec.delta.cast<cplx>() / std::sqrt(2.0);
  const BogoliubovTransform dok =
      compose(BogoliubovTransform::displacement(shift),
              compose(BogoliubovTransform::squeezer(sf),
                      compose(BogoliubovTransform::passive(spec.u_r.matrix()),
                              BogoliubovTransform::squeezer(si))));
  const BlochMessiahForm f = bloch_messiah(dok);
  // D(xi) U2 = U2 D(U2^dag xi); the trailing passive U1 leaves the vacuum invariant
  return GaussianCircuit(f.u_lin2, f.r, f.u_lin2.matrix().adjoint() * f.xi);
}

BogoliubovTransform conjugated_phase_shift(const GaussianCircuit& c, const RealVector& phi) {
  check_modes(c.modes(), phi.size(), "conjugated_phase_shift.phi");
  const BogoliubovTransform g = circuit_transform(c);
  return compose(g.inverse(), compose(BogoliubovTransform::phase_shift(phi), g));
}

}  // namespace vibro
