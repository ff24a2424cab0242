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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qbayes/params.hpp"
#include "qbayes/qubit_state.hpp"

namespace qbayes {

struct ErrorConfig {
  double eps1 = 0.01;   ///< steady-state precision
  double eps2 = 0.1;    ///< error upper bound
  double alpha_x = 0.25;
  double alpha_y = 0.25;
  double alpha_z = 0.5;
  std::int64_t n_traj = 5000;
  double horizon = 10.0;

  friend bool operator==(const ErrorConfig&, const ErrorConfig&) = default;
};

const ErrorConfig& validate_error_config(const ErrorConfig& cfg);

/// Grid indices at which each Bloch component is out of its stable band.
struct UnstableSets {
  std::array<std::vector<std::size_t>, 3> indices;
};

/// S_i = {t : |truth_i - ref_i| > eps1} u {t : |est_i - ref_i| > eps1}, i = x, y, z.
UnstableSets unstable_set(std::span<const Bloch> truth, std::span<const Bloch> est,
                          std::span<const Bloch> reference, double eps1);

struct ComponentErrors {
  double ex = 0.0;
  double ey = 0.0;
  double ez = 0.0;
  /// True where the component's unstable set was empty (error defined as 0).
  std::array<bool, 3> stable{false, false, false};
};

/// Mean squared deviation of each component over its own unstable set.
ComponentErrors component_errors(std::span<const Bloch> truth, std::span<const Bloch> est,
                                 const UnstableSets& sets);

double overall_error(double ex, double ey, double ez, const ErrorConfig& cfg);

struct TrajectoryError {
  double ex = 0.0;
  double ey = 0.0;
  double ez = 0.0;
  double e = 0.0;
  std::array<double, 3> set_measure{0.0, 0.0, 0.0};
};

struct ErrorReport {
  double ex = 0.0;
  double ey = 0.0;
  double ez = 0.0;
  double e = 0.0;
  double stderr_e = 0.0;
  /// Ensemble-mean measure ||S_i|| in microseconds.
  std::array<double, 3> set_measure{0.0, 0.0, 0.0};
  std::array<std::int64_t, 3> stable_count{0, 0, 0};
  std::int64_t n_traj = 0;
  bool blow_up = false;
  std::string note;
  std::vector<TrajectoryError> per_trajectory;
};

struct RunOptions {
  std::uint64_t seed = 20180806;
  unsigned threads = 0;
  QubitState rho0 = QubitState::plus_x();
};

/// Paired (SME trajectory, Bayesian estimate) runs for one parameter point.
/// Trajectory j uses noise stream (seed, j) so different points share noise.
ErrorReport evaluate_point(const SystemParams& p, const ErrorConfig& cfg, const RunOptions& opts);

struct SweepResult {
  std::string param;
  std::vector<double> grid;
  std::vector<ErrorReport> reports;
};

SweepResult parameter_sweep(const SystemParams& base, std::string_view param,
                            std::span<const double> grid, const ErrorConfig& cfg,
                            const RunOptions& opts);

struct CriticalPoint {
  enum class Status { kCrossing, kNoCrossing, kAboveAtStart };
  Status status = Status::kNoCrossing;
  double value = 0.0;
  /// More than one sign change of E - eps2 along the grid.
  bool noisy = false;
};

/// First upward crossing of E through eps2, linearly interpolated between the
/// bracketing grid points. Blown-up points count as above the bound.
CriticalPoint critical_point(const SweepResult& sweep, double eps2);

/// Evaluates 5 extra points inside the bracket of the first crossing, merges
/// them into `sweep`, and re-locates the crossing.
CriticalPoint refine_critical_point(const SystemParams& base, SweepResult& sweep,
                                    const ErrorConfig& cfg, const RunOptions& opts, double eps2);

std::string to_string(const CriticalPoint& cp);

/// start..stop inclusive, n points, linear or logarithmic spacing.
std::vector<double> make_grid(double start, double stop, std::int64_t n, bool log_spacing);

/// 20 linear points from the baseline value to 4x the reference critical value
/// for the parameter (kappa: [5, 80]; eta capped at 1).
std::vector<double> default_grid(std::string_view param, const SystemParams& base);

}  // namespace qbayes
