// Copyright 2026 The qbayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>

namespace qbayes {

using cplx = std::complex<double>;

inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-9;

/// Bloch vector (<sigma_x>, <sigma_y>, <sigma_z>).
struct Bloch {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Bloch&, const Bloch&) = default;
};

// Basis convention: |e> is the +1 eigenstate of sigma_z. `rho_ge` stores the
// coherence <e|rho|g>, which precesses as exp(-i omega t) under the qubit
// Hamiltonian omega sigma_z / 2. With that choice
//   <sigma_x> = 2 Re rho_ge,  <sigma_y> = -2 Im rho_ge,  <sigma_z> = rho_ee - rho_gg.

/// 2x2 qubit density matrix, stored as its three independent entries.
struct QubitState {
  double rho_gg = 1.0;
  double rho_ee = 0.0;
  cplx rho_ge{0.0, 0.0};

  [[nodiscard]] double trace() const { return rho_gg + rho_ee; }
  [[nodiscard]] double sz() const { return rho_ee - rho_gg; }
  /// Smaller eigenvalue of the (Hermitian) matrix.
  [[nodiscard]] double min_eigenvalue() const;
  [[nodiscard]] double purity() const;

  static QubitState ground() { return {1.0, 0.0, {0.0, 0.0}}; }
  static QubitState excited() { return {0.0, 1.0, {0.0, 0.0}}; }
  static QubitState maximally_mixed() { return {0.5, 0.5, {0.0, 0.0}}; }
  /// (|g> + |e>)/sqrt(2): the +x pole.
  static QubitState plus_x() { return {0.5, 0.5, {0.5, 0.0}}; }

  friend bool operator==(const QubitState&, const QubitState&) = default;
};

Bloch bloch_of(const QubitState& rho);
QubitState state_of_bloch(const Bloch& b);

/// True when trace and positivity hold within the fixed tolerances.
bool is_physical(const QubitState& rho);

/// Scales to unit trace and pulls the state back onto the positive cone:
/// negative populations are zeroed and the coherence is shrunk to
/// |rho_ge|^2 <= rho_gg rho_ee.
QubitState normalize_and_clamp(QubitState rho);

/// Euclidean distance between Bloch vectors.
double bloch_distance(const QubitState& a, const QubitState& b);

}  // namespace qbayes
