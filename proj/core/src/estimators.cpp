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

#include "qbayes/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "qbayes/errors.hpp"

namespace qbayes {

DiagonalPosterior bayes_diagonal_update(const QubitState& prior, double I_m, double Ibar_g,
                                        double Ibar_e, double t_m) {
  DiagonalPosterior post;
  post.p_g = gaussian_likelihood(I_m, Ibar_g, t_m);
  post.p_e = gaussian_likelihood(I_m, Ibar_e, t_m);
  post.norm = prior.rho_gg * post.p_g + prior.rho_ee * post.p_e;
  if (!(post.norm > 0.0) || !std::isfinite(post.norm)) {
    throw NumericalError("measurement outcome impossible under prior");
  }
  post.rho_gg = prior.rho_gg * post.p_g / post.norm;
  post.rho_ee = prior.rho_ee * post.p_e / post.norm;
  return post;
}

cplx bayes_offdiagonal_raw(const QubitState& prior, double p_g, double p_e, double norm,
                           double t_m, const SystemParams& p) {
  return prior.rho_ge * std::polar(1.0, -p.omega_q_tilde * t_m) * std::sqrt(p_g * p_e) / norm;
}

BayesCorrections bayes_corrections(std::int64_t window, const CavityTrack& cavity,
                                   std::span<const double> photocurrent, const SystemParams& p) {
  const auto n = static_cast<std::size_t>(p.steps_per_window());
  const std::size_t first = static_cast<std::size_t>(window) * n;
  const std::size_t last = first + n;
  BayesCorrections c;
  c.De = std::min(1.0, cavity.overlaps[last] / cavity.overlaps[first]);
  double phi1 = 0.0;
  double phi2 = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    const DerivedRates& r = cavity.rates[k];
    phi1 += r.B;
    phi2 -= r.signed_ab_root * (photocurrent[k] - cavity.offsets[k]);
  }
  c.Phi_1 = phi1 * p.dt;
  c.Phi_2 = phi2 * p.dt;
  return c;
}

BayesEstimate bayes_estimate(const MeasurementRecord& record, const CavityTrack& cavity,
                             const SystemParams& p, const QubitState& rho0, bool keep_intervals) {
  const std::int64_t windows = p.window_count();
  if (static_cast<std::int64_t>(record.window_means.size()) != windows ||
      record.steps_per_window != p.steps_per_window()) {
    throw ConfigError("measurement record does not match the parameter grid");
  }
  BayesEstimate out;
  out.states.reserve(static_cast<std::size_t>(windows) + 1);
  out.states.push_back(rho0);
  if (keep_intervals) out.intervals.reserve(static_cast<std::size_t>(windows));

  QubitState rho = rho0;
  for (std::int64_t j = 0; j < windows; ++j) {
    const double I_m = record.window_means[static_cast<std::size_t>(j)];
    const ReferenceOutputs ref = reference_outputs(cavity, p, j);
    const DiagonalPosterior diag = bayes_diagonal_update(rho, I_m, ref.g, ref.e, p.t_m);
    const cplx raw = bayes_offdiagonal_raw(rho, diag.p_g, diag.p_e, diag.norm, p.t_m, p);
    const BayesCorrections corr = bayes_corrections(j, cavity, record.samples, p);

    QubitState next{diag.rho_gg, diag.rho_ee,
                    raw * corr.De * std::polar(1.0, -(corr.Phi_1 + corr.Phi_2))};
    if (keep_intervals) out.intervals.push_back({j, rho, I_m, ref.g, ref.e, corr, next});
    rho = next;
    out.states.push_back(rho);
  }
  return out;
}

BayesEstimate bayes_estimate(const MeasurementRecord& record, const SystemParams& p,
                             const QubitState& rho0) {
  validate_params(p);
  return bayes_estimate(record, CavityTrack::integrate(p), p, rho0);
}

QubitState filter_step(const QubitState& rho, const DerivedRates& rates, const SystemParams& p,
                       double Ibar_measured) {
  return conditional_step(rho, rates, p, Ibar_measured);
}

std::vector<QubitState> filter_estimate(const MeasurementRecord& record,
                                        const CavityTrack& cavity, const SystemParams& p,
                                        const QubitState& rho0) {
  const std::size_t n_steps = record.samples.size() - 1;
  if (cavity.size() != record.samples.size()) {
    throw ConfigError("measurement record does not match the cavity track");
  }
  std::vector<QubitState> out(n_steps + 1);
  out[0] = rho0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    out[k + 1] =
        filter_step(out[k], cavity.rates[k], p, record.samples[k] - cavity.offsets[k]);
  }
  return out;
}

}  // namespace qbayes
