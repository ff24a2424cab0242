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

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qbayes/cavity.hpp"
#include "qbayes/noise.hpp"
#include "qbayes/params.hpp"
#include "qbayes/qubit_state.hpp"

namespace qbayes {

/// Photocurrent samples on the integration grid plus their window averages.
///
/// samples[k] is the current over [t_k, t_k + dt); window j averages
/// samples[j n .. (j + 1) n) with n = steps_per_window and is attributed to
/// the window end t_{(j+1) n}.
struct MeasurementRecord {
  double dt = 0.0;
  double t_m = 0.0;
  std::int64_t steps_per_window = 0;
  std::vector<double> times;
  std::vector<double> samples;
  std::vector<double> window_means;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;

  [[nodiscard]] std::span<const double> window_samples(std::int64_t j) const;
};

/// One stochastic realization: states, record, and the shared cavity track
/// on the grid t_k = k dt, k = 0..K.
struct TrajectoryResult {
  std::vector<double> times;
  std::vector<QubitState> states;
  MeasurementRecord record;
  std::shared_ptr<const CavityTrack> cavity;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  /// States at t = 0 and at every window end.
  [[nodiscard]] std::vector<QubitState> window_end_states() const;
};

/// Shared conditional update used by both the stochastic master equation and
/// the filter. `current` is the measured current with the qubit-independent
/// offset removed, i.e. signed_ci_root <sigma_z> + xi for a true trajectory.
///
/// The measurement part is the Kraus-form discretization
///   rho' ~ M rho M^+,  M = 1 - 1/2 L^+L dt + L dY + 1/2 L^2 (dY^2 - dt),
/// with L = (s + i a) sigma_z / 2 and dY = current * dt. The Hamiltonian
/// (omega_q_tilde + B) sigma_z / 2, the residual dephasing r D[sigma_z] with
/// r = (Gamma_d + gamma_phi)/2 - |L|^2 and the decay gamma_1 D[sigma_-] are
/// applied in closed form over the step. To first order in dt this reproduces
///   d rho = -i (omega_q_tilde + B)/2 [sigma_z, rho] dt
///           + (Gamma_d + gamma_phi)/2 D[sigma_z] rho dt + gamma_1 D[sigma_-] rho dt
///           + s M[sigma_z] rho xi dt + i a/2 [sigma_z, rho] xi dt.
/// Throws NumericalError("state blow-up: reduce dt") when the unclamped
/// result has an eigenvalue below -1e-6.
QubitState conditional_step(const QubitState& rho, const DerivedRates& rates,
                            const SystemParams& p, double current);

/// One step of the qubit SME driven by the white-noise sample xi = W / sqrt(dt).
QubitState sme_step(const QubitState& rho, const DerivedRates& rates, const SystemParams& p,
                    double xi);

/// I = signed_ci_root <sigma_z> + xi + sqrt(kappa eta)|mu|cos(theta_mu - phi).
double photocurrent_sample(const QubitState& rho, const CavityBranchState& s,
                           const DerivedRates& rates, const SystemParams& p, double xi);

TrajectoryResult simulate_trajectory(const SystemParams& p, const QubitState& rho0,
                                     const NoiseStream& stream);
TrajectoryResult simulate_trajectory(const SystemParams& p, const QubitState& rho0,
                                     const NoiseStream& stream,
                                     std::shared_ptr<const CavityTrack> cavity);

/// Deterministic (noise-free) evolution of the qubit master equation on the
/// full integration grid. Cavity rates are held at their left-point values
/// over each step, which the qubit equation then integrates exactly.
std::vector<Bloch> lindblad_reference(const SystemParams& p, const QubitState& rho0);
std::vector<Bloch> lindblad_reference(const SystemParams& p, const QubitState& rho0,
                                      const CavityTrack& cavity);

/// Mean of one window's dt samples. Throws ConfigError on a wrong count.
double integrate_measurement(std::span<const double> window, const SystemParams& p);

struct ReferenceOutputs {
  double g = 0.0;
  double e = 0.0;
};

/// Window-j average of 2 sqrt(kappa eta) Re[alpha_{g,e}(t) e^{-i phi}] using
/// the same left-point samples as the photocurrent.
ReferenceOutputs reference_outputs(const CavityTrack& cavity, const SystemParams& p,
                                   std::int64_t window);
ReferenceOutputs reference_outputs(const SystemParams& p, std::int64_t window);

/// Normal density with variance D_I = 1 / t_m evaluated at I_m.
double gaussian_likelihood(double I_m, double Ibar, double t_m);

}  // namespace qbayes
