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

#include "vibro/core.hpp"

namespace vibro {

/**
 * @brief Gaussian input preparation U D(alpha) S(r0) acting on a Fock state.
 *
 * Conventions used throughout the library:
 *   passive U:     U^dag a_i U = sum_j U_ij a_j
 *   squeezer S(r): S^dag a S = a cosh r + a^dag sinh r
 *   displacement:  D^dag a D = a + alpha
 */
struct GaussianCircuit {
  UnitaryMatrix unitary;
  RealVector r0;
  ComplexVector alpha;

  GaussianCircuit() = default;
  GaussianCircuit(UnitaryMatrix u, RealVector r, ComplexVector a);

  int modes() const { return unitary.modes(); }
  /// Displacement of the output state, U alpha.
  ComplexVector final_displacement() const;
};

/// Harmonic frequencies, Duschinsky rotation and displacement of a vibronic transition.
struct DoktorovSpec {
  RealVector omega_i;
  RealVector omega_f;
  UnitaryMatrix u_r;
  RealVector delta;
};

/**
 * @brief Heisenberg action W^dag a W = A a + B a^dag + xi of a Gaussian unitary.
 */
struct BogoliubovTransform {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexVector xi;

  int modes() const { return static_cast<int>(a.rows()); }

  static BogoliubovTransform identity(int m);
  static BogoliubovTransform passive(const ComplexMatrix& u);
  static BogoliubovTransform squeezer(const RealVector& r);
  static BogoliubovTransform displacement(const ComplexVector& alpha);
  static BogoliubovTransform phase_shift(const RealVector& phi);

  /// max of |A A^dag - B B^dag - I| and |A B^T - B A^T|.
  double symplectic_error() const;
  BogoliubovTransform inverse() const;
};

/// W = D(xi) U_lin2 S(r) U_lin1, r sorted descending.
struct BlochMessiahForm {
  UnitaryMatrix u_lin2;
  RealVector r;
  UnitaryMatrix u_lin1;
  ComplexVector xi;

  int modes() const { return u_lin2.modes(); }
  BogoliubovTransform recompose() const;
};

/// Complex symmetric factorization S = U diag(d) U^T with d >= 0 descending.
struct TakagiResult {
  ComplexMatrix u;
  RealVector d;
};
TakagiResult takagi(const ComplexMatrix& s, double zero_tol = 1e-10);

/// Operator product t1 * t2 (t2 acts first on the state).
BogoliubovTransform compose(const BogoliubovTransform& t1, const BogoliubovTransform& t2);

BlochMessiahForm bloch_messiah(const BogoliubovTransform& t);

/// Transform of the circuit operator U D(alpha) S(r0).
BogoliubovTransform circuit_transform(const GaussianCircuit& c);

GaussianCircuit doktorov_to_circuit(const DoktorovSpec& spec);

/// S^dag D^dag U^dag exp(i phi.n) U D S; phi = -k theta w gives the Fourier operator.
BogoliubovTransform conjugated_phase_shift(const GaussianCircuit& c, const RealVector& phi);

}  // namespace vibro
