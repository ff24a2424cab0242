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

#include "qbayes/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qbayes/errors.hpp"

namespace qbayes {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kBlowUpThreshold = -1e-6;

}  // namespace

std::span<const double> MeasurementRecord::window_samples(std::int64_t j) const {
  const auto n = static_cast<std::size_t>(steps_per_window);
  return std::span<const double>(samples).subspan(static_cast<std::size_t>(j) * n, n);
}

std::vector<QubitState> TrajectoryResult::window_end_states() const {
  const auto n = static_cast<std::size_t>(record.steps_per_window);
  std::vector<QubitState> out;
  out.reserve(states.size() / n + 1);
  for (std::size_t k = 0; k < states.size(); k += n) out.push_back(states[k]);
  return out;
}

QubitState conditional_step(const QubitState& rho, const DerivedRates& rates,
                            const SystemParams& p, double current) {
  const double dt = p.dt;
  const double h = 0.5 * (p.omega_q_tilde + rates.B);
  const cplx cm = 0.5 * cplx(rates.signed_ci_root, rates.signed_ab_root);
  const double cm2 = std::norm(cm);
  const double residual = 0.5 * (rates.Gamma_d + p.gamma_phi) - cm2;
  const double dy = current * dt;
  const cplx kraus = 1.0 - 0.5 * cm2 * dt + 0.5 * cm * cm * (dy * dy - dt);

  // H, the residual dephasing and the decay of |e> are applied exactly.
  const cplx rotation = std::exp(-kI * h * dt);
  const double decayed = -std::expm1(-p.gamma_1 * dt);
  const cplx me = rotation * std::sqrt(1.0 - decayed) * (kraus + cm * dy);
  const cplx mg = std::conj(rotation) * (kraus - cm * dy);

  QubitState next;
  next.rho_ee = std::norm(me) * rho.rho_ee;
  next.rho_gg = std::norm(mg) * rho.rho_gg + decayed * rho.rho_ee;
  next.rho_ge = me * std::conj(mg) * std::exp(-2.0 * residual * dt) * rho.rho_ge;

  const double tr = next.trace();
  if (!(tr > 0.0) || !std::isfinite(tr) || next.min_eigenvalue() / tr < kBlowUpThreshold) {
    throw NumericalError("state blow-up: reduce dt");
  }
  return normalize_and_clamp(next);
}

QubitState sme_step(const QubitState& rho, const DerivedRates& rates, const SystemParams& p,
                    double xi) {
  return conditional_step(rho, rates, p, rates.signed_ci_root * rho.sz() + xi);
}

double photocurrent_sample(const QubitState& rho, const CavityBranchState& s,
                           const DerivedRates& rates, const SystemParams& p, double xi) {
  return rates.signed_ci_root * rho.sz() + xi + signal_offset(s, p);
}

TrajectoryResult simulate_trajectory(const SystemParams& p, const QubitState& rho0,
                                     const NoiseStream& stream) {
  validate_params(p);
  return simulate_trajectory(p, rho0, stream,
                             std::make_shared<const CavityTrack>(CavityTrack::integrate(p)));
}

TrajectoryResult simulate_trajectory(const SystemParams& p, const QubitState& rho0,
                                     const NoiseStream& stream,
                                     std::shared_ptr<const CavityTrack> cavity) {
  if (!is_physical(rho0)) throw ConfigError("initial state not physical");
  const auto n_steps = static_cast<std::size_t>(p.step_count());
  if (cavity->size() != n_steps + 1) throw ConfigError("cavity track does not match the grid");

  TrajectoryResult out;
  out.seed = stream.seed();
  out.index = stream.index();
  out.cavity = std::move(cavity);
  const CavityTrack& track = *out.cavity;

  out.times.resize(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) out.times[k] = static_cast<double>(k) * p.dt;

  std::vector<double> noise(n_steps + 1);
  stream.fill(noise);
  const double inv_sqrt_dt = 1.0 / std::sqrt(p.dt);

  MeasurementRecord& rec = out.record;
  rec.dt = p.dt;
  rec.t_m = p.t_m;
  rec.steps_per_window = p.steps_per_window();
  rec.seed = stream.seed();
  rec.stream_index = stream.index();
  rec.times = out.times;
  rec.samples.resize(n_steps + 1);

  out.states.resize(n_steps + 1);
  out.states[0] = rho0;
  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double xi = noise[k] * inv_sqrt_dt;
    rec.samples[k] = photocurrent_sample(out.states[k], track.states[k], track.rates[k], p, xi);
    if (k < n_steps) out.states[k + 1] = sme_step(out.states[k], track.rates[k], p, xi);
  }

  const std::int64_t windows = p.window_count();
  rec.window_means.resize(static_cast<std::size_t>(windows));
  for (std::int64_t j = 0; j < windows; ++j) {
    rec.window_means[static_cast<std::size_t>(j)] = integrate_measurement(rec.window_samples(j), p);
  }
  return out;
}

std::vector<Bloch> lindblad_reference(const SystemParams& p, const QubitState& rho0) {
  validate_params(p);
  return lindblad_reference(p, rho0, CavityTrack::integrate(p));
}

std::vector<Bloch> lindblad_reference(const SystemParams& p, const QubitState& rho0,
                                      const CavityTrack& cavity) {
  const auto n_steps = static_cast<std::size_t>(p.step_count());
  std::vector<Bloch> out;
  out.reserve(n_steps + 1);
  QubitState rho = rho0;
  out.push_back(bloch_of(rho));
  const double dt = p.dt;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const DerivedRates& r = cavity.rates[k];
    const double decay = -std::expm1(-p.gamma_1 * dt) * rho.rho_ee;
    const cplx generator =
        -kI * (p.omega_q_tilde + r.B) - (r.Gamma_d + p.gamma_phi) - 0.5 * p.gamma_1;
    rho.rho_ee -= decay;
    rho.rho_gg += decay;
    rho.rho_ge *= std::exp(dt * generator);
    out.push_back(bloch_of(rho));
  }
  return out;
}

double integrate_measurement(std::span<const double> window, const SystemParams& p) {
  if (static_cast<std::int64_t>(window.size()) != p.steps_per_window() || window.empty()) {
    throw ConfigError("window sample count does not match t_m / dt");
  }
  double sum = 0.0;
  for (double v : window) sum += v;
  return sum / static_cast<double>(window.size());
}

ReferenceOutputs reference_outputs(const CavityTrack& cavity, const SystemParams& p,
                                   std::int64_t window) {
  const auto n = static_cast<std::size_t>(p.steps_per_window());
  const std::size_t first = static_cast<std::size_t>(window) * n;
  double g = 0.0;
  double e = 0.0;
  for (std::size_t k = first; k < first + n; ++k) {
    g += branch_current(cavity.states[k].alpha_g, p);
    e += branch_current(cavity.states[k].alpha_e, p);
  }
  return {g / static_cast<double>(n), e / static_cast<double>(n)};
}

ReferenceOutputs reference_outputs(const SystemParams& p, std::int64_t window) {
  validate_params(p);
  return reference_outputs(CavityTrack::integrate(p), p, window);
}

double gaussian_likelihood(double I_m, double Ibar, double t_m) {
  const double d = I_m - Ibar;
  return std::sqrt(t_m / (2.0 * std::numbers::pi)) * std::exp(-0.5 * d * d * t_m);
}

}  // namespace qbayes
