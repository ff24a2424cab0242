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
#include <cstdint>
#include <string>
#include <string_view>

namespace qbayes {

// Unit system: time in microseconds, rates and angular frequencies in
// inverse microseconds. A value quoted in "MHz" is stored with the same
// numeric value (1 MHz -> 1 rad/us) and "kHz" maps to 1e-3.
inline constexpr std::string_view kUnitConvention =
    "time=us; rate=1/us; angular_frequency=rad/us; 1 MHz -> 1.0, 1 kHz -> 0.001";

/// Physical rates, drive and measurement settings of the dispersive model.
struct SystemParams {
  double omega_q_tilde = 1.0;   ///< shifted qubit frequency (omega_q + chi)
  double delta_r = 0.0;         ///< drive detuning from the resonator
  double chi = 1.0;             ///< dispersive coupling
  std::complex<double> epsilon_d{15.0, 0.0};  ///< constant drive amplitude
  double kappa = 20.0;          ///< resonator damping
  double gamma_1 = 0.0;         ///< qubit decay
  double gamma_phi = 0.0;       ///< pure dephasing
  double eta = 0.1;             ///< measurement efficiency
  double phi_lo = 3.14159265358979323846;  ///< local-oscillator phase
  double t_m = 0.01;            ///< measurement averaging window
  double dt = 0.001;            ///< integration step
  double t_total = 10.0;        ///< simulated time

  /// Number of integration steps per averaging window.
  [[nodiscard]] std::int64_t steps_per_window() const;
  /// Number of averaging windows in t_total.
  [[nodiscard]] std::int64_t window_count() const;
  /// Number of integration steps in t_total.
  [[nodiscard]] std::int64_t step_count() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Throws ConfigError naming the first violated invariant; returns p otherwise.
const SystemParams& validate_params(const SystemParams& p);

/// Parameter set of the single-measurement demonstration: t_m = 0.01 us,
/// omega_q = 0, Delta_r = 0, chi = 1, epsilon_d = 15, kappa = 20, no qubit
/// decay or dephasing, phi = pi, with eta = 0.1 for the estimation runs.
SystemParams demo_params();

/// Names accepted by sweeps: chi, delta_r, epsilon_d, eta, gamma_1,
/// gamma_phi, kappa. Throws ConfigError for anything else.
void set_sweep_param(SystemParams& p, std::string_view name, double value);
double get_sweep_param(const SystemParams& p, std::string_view name);
bool is_sweep_param(std::string_view name);

}  // namespace qbayes
