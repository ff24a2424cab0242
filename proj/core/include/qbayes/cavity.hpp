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

#include <vector>

#include "qbayes/params.hpp"
#include "qbayes/qubit_state.hpp"

namespace qbayes {

/// Coherent amplitudes of the resonator conditioned on the qubit being in
/// |g> or |e>.
struct CavityBranchState {
  cplx alpha_g{0.0, 0.0};
  cplx alpha_e{0.0, 0.0};

  [[nodiscard]] cplx beta() const { return alpha_e - alpha_g; }
  [[nodiscard]] cplx mu() const { return alpha_e + alpha_g; }

  friend bool operator==(const CavityBranchState&, const CavityBranchState&) = default;
};

/// Qubit-facing rates induced by the cavity field.
///
/// The homodyne quadrature of beta is split into an informational part
/// (signed_ci_root = sqrt(eta kappa) Re[beta e^{-i phi}]) and a phase
/// back-action part (signed_ab_root = sqrt(eta kappa) Im[beta e^{-i phi}]).
/// With theta_beta = arg(beta) these are sqrt(eta kappa)|beta|cos(phi - theta)
/// and -sqrt(eta kappa)|beta|sin(phi - theta), so Gamma_ci and Gamma_ab are
/// their squares and sum to eta kappa |beta|^2.
struct DerivedRates {
  double B = 0.0;         ///< ac-Stark shift 2 chi Re[alpha_g conj(alpha_e)]
  double Gamma_d = 0.0;   ///< induced dephasing 2 chi Im[alpha_g conj(alpha_e)]
  double Gamma_ci = 0.0;
  double Gamma_ab = 0.0;
  double signed_ci_root = 0.0;
  double signed_ab_root = 0.0;
};

/// One fixed-step RK4 step of
///   d alpha_{e,g}/dt = -i eps_d - i (Delta_r +- chi) alpha_{e,g} - kappa alpha_{e,g} / 2,
/// e-branch with +chi, g-branch with -chi.
CavityBranchState step_cavity(const CavityBranchState& s, const SystemParams& p, double dt);

/// Closed-form fixed point alpha_{e,g} = -i eps_d / (i (Delta_r +- chi) + kappa / 2).
/// Throws NumericalError("no steady state") when kappa = 0 and eps_d != 0.
CavityBranchState steady_state_amplitudes(const SystemParams& p);

DerivedRates derived_rates(const CavityBranchState& s, const SystemParams& p);

/// |<alpha_e|alpha_g>| = exp(-|alpha_e - alpha_g|^2 / 2).
double coherent_overlap(const CavityBranchState& s);

/// sqrt(kappa eta) Re[mu e^{-i phi}]: the qubit-independent part of the
/// photocurrent, i.e. sqrt(kappa eta)|mu|cos(theta_mu - phi).
double signal_offset(const CavityBranchState& s, const SystemParams& p);

/// 2 sqrt(kappa eta) Re[alpha e^{-i phi}]: mean current with the qubit in the
/// branch whose amplitude is alpha.
double branch_current(cplx alpha, const SystemParams& p);

/// Cavity branches and everything derived from them on the integration grid
/// t_k = k dt, k = 0..step_count(). The cavity evolution does not depend on
/// the qubit trajectory, so one track is shared by every trajectory with the
/// same parameters.
struct CavityTrack {
  std::vector<CavityBranchState> states;
  std::vector<DerivedRates> rates;
  std::vector<double> offsets;
  std::vector<double> overlaps;

  [[nodiscard]] std::size_t size() const { return states.size(); }

  static CavityTrack integrate(const SystemParams& p, CavityBranchState initial = {});
};

}  // namespace qbayes
