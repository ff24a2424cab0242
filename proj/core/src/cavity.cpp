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

#include "qbayes/cavity.hpp"

#include <cmath>

#include "qbayes/errors.hpp"

namespace qbayes {
namespace {

constexpr cplx kI{0.0, 1.0};

cplx branch_rhs(cplx alpha, double detuning, const SystemParams& p) {
  return -kI * p.epsilon_d - kI * detuning * alpha - 0.5 * p.kappa * alpha;
}

cplx rk4(cplx alpha, double detuning, const SystemParams& p, double dt) {
  const cplx k1 = branch_rhs(alpha, detuning, p);
  const cplx k2 = branch_rhs(alpha + 0.5 * dt * k1, detuning, p);
  const cplx k3 = branch_rhs(alpha + 0.5 * dt * k2, detuning, p);
  const cplx k4 = branch_rhs(alpha + dt * k3, detuning, p);
  return alpha + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

CavityBranchState step_cavity(const CavityBranchState& s, const SystemParams& p, double dt) {
  return {rk4(s.alpha_g, p.delta_r - p.chi, p, dt), rk4(s.alpha_e, p.delta_r + p.chi, p, dt)};
}

CavityBranchState steady_state_amplitudes(const SystemParams& p) {
  if (p.kappa == 0.0) {
    if (p.epsilon_d == cplx{0.0, 0.0}) return {};
    throw NumericalError("no steady state");
  }
  auto fixed_point = [&](double detuning) {
    return -kI * p.epsilon_d / (kI * detuning + 0.5 * p.kappa);
  };
  return {fixed_point(p.delta_r - p.chi), fixed_point(p.delta_r + p.chi)};
}

DerivedRates derived_rates(const CavityBranchState& s, const SystemParams& p) {
  DerivedRates r;
  const cplx overlap_product = s.alpha_g * std::conj(s.alpha_e);
  r.B = 2.0 * p.chi * overlap_product.real();
  r.Gamma_d = 2.0 * p.chi * overlap_product.imag();
  const double gain = std::sqrt(p.eta * p.kappa);
  const cplx quadrature = s.beta() * std::polar(1.0, -p.phi_lo);
  r.signed_ci_root = gain * quadrature.real();
  r.signed_ab_root = gain * quadrature.imag();
  r.Gamma_ci = r.signed_ci_root * r.signed_ci_root;
  r.Gamma_ab = r.signed_ab_root * r.signed_ab_root;
  return r;
}

double coherent_overlap(const CavityBranchState& s) { return std::exp(-0.5 * std::norm(s.beta())); }

double signal_offset(const CavityBranchState& s, const SystemParams& p) {
  return std::sqrt(p.kappa * p.eta) * (s.mu() * std::polar(1.0, -p.phi_lo)).real();
}

double branch_current(cplx alpha, const SystemParams& p) {
  return 2.0 * std::sqrt(p.kappa * p.eta) * (alpha * std::polar(1.0, -p.phi_lo)).real();
}

CavityTrack CavityTrack::integrate(const SystemParams& p, CavityBranchState initial) {
  const auto n = static_cast<std::size_t>(p.step_count()) + 1;
  CavityTrack track;
  track.states.reserve(n);
  track.rates.reserve(n);
  track.offsets.reserve(n);
  track.overlaps.reserve(n);
  CavityBranchState s = initial;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) s = step_cavity(s, p, p.dt);
    track.states.push_back(s);
    track.rates.push_back(derived_rates(s, p));
    track.offsets.push_back(signal_offset(s, p));
    track.overlaps.push_back(coherent_overlap(s));
  }
  return track;
}

}  // namespace qbayes
