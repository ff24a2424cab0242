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
#include <span>
#include <vector>

#include "qbayes/cavity.hpp"
#include "qbayes/params.hpp"
#include "qbayes/qubit_state.hpp"
#include "qbayes/trajectory.hpp"

namespace qbayes {

struct DiagonalPosterior {
  double rho_gg = 0.0;
  double rho_ee = 0.0;
  double norm = 0.0;
  double p_g = 0.0;
  double p_e = 0.0;
};

/// Classical Bayes rule on the populations with Gaussian likelihoods of
/// variance 1 / t_m centered at Ibar_g and Ibar_e.
DiagonalPosterior bayes_diagonal_update(const QubitState& prior, double I_m, double Ibar_g,
                                        double Ibar_e, double t_m);

/// rho_ge(0) e^{-i omega_q_tilde t_m} sqrt(P_g P_e) / N.
cplx bayes_offdiagonal_raw(const QubitState& prior, double p_g, double p_e, double norm,
                           double t_m, const SystemParams& p);

struct BayesCorrections {
  double De = 1.0;     ///< incremental purity-degradation factor for this window
  double Phi_1 = 0.0;  ///< integral of B over the window
  double Phi_2 = 0.0;  ///< -integral of sqrt(Gamma_ab) (I - offset) over the window
};

/// Window-j corrections to the coherence. De is the ratio of coherent-state
/// overlaps at the window end and start, capped at 1, so the product over
/// windows telescopes to |<alpha_e(t)|alpha_g(t)>|.
BayesCorrections bayes_corrections(std::int64_t window, const CavityTrack& cavity,
                                   std::span<const double> photocurrent, const SystemParams& p);

struct BayesInterval {
  std::int64_t window = 0;
  QubitState prior;
  double I_m = 0.0;
  double Ibar_g = 0.0;
  double Ibar_e = 0.0;
  BayesCorrections corrections;
  QubitState posterior;
};

struct BayesEstimate {
  /// Estimate at t = 0 and at each window end.
  std::vector<QubitState> states;
  /// Per-window bookkeeping; filled only when requested.
  std::vector<BayesInterval> intervals;
};

BayesEstimate bayes_estimate(const MeasurementRecord& record, const CavityTrack& cavity,
                             const SystemParams& p, const QubitState& rho0,
                             bool keep_intervals = false);
BayesEstimate bayes_estimate(const MeasurementRecord& record, const SystemParams& p,
                             const QubitState& rho0);

/// One step of the filter equation fed with the offset-free measured current.
QubitState filter_step(const QubitState& rho, const DerivedRates& rates, const SystemParams& p,
                       double Ibar_measured);

/// Filter estimate on the full integration grid.
std::vector<QubitState> filter_estimate(const MeasurementRecord& record,
                                        const CavityTrack& cavity, const SystemParams& p,
                                        const QubitState& rho0);

}  // namespace qbayes
