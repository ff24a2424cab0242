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

#include "qbayes/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>

#include "qbayes/cavity.hpp"
#include "qbayes/errors.hpp"
#include "qbayes/estimators.hpp"
#include "qbayes/parallel.hpp"
#include "qbayes/trajectory.hpp"

namespace qbayes {
namespace {

double component(const Bloch& b, std::size_t i) { return i == 0 ? b.x : (i == 1 ? b.y : b.z); }

std::vector<Bloch> to_bloch(std::span<const QubitState> states) {
  std::vector<Bloch> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(bloch_of(s));
  return out;
}

// Upper ends of the default sweep ranges are four times these values.
const std::map<std::string_view, double>& reference_critical_values() {
  static const std::map<std::string_view, double> values = {
      {"chi", 19.57},   {"delta_r", 0.5949},  {"epsilon_d", 70.11},
      {"eta", 0.4817},  {"gamma_1", 0.005841}, {"gamma_phi", 0.2036},
  };
  return values;
}

}  // namespace

const ErrorConfig& validate_error_config(const ErrorConfig& cfg) {
  if (!(cfg.eps1 > 0.0)) throw ConfigError("eps1 not positive");
  if (!(cfg.eps2 > 0.0)) throw ConfigError("eps2 not positive");
  if (cfg.alpha_x < 0.0 || cfg.alpha_y < 0.0 || cfg.alpha_z < 0.0) {
    throw ConfigError("negative error weight");
  }
  if (std::abs(cfg.alpha_x + cfg.alpha_y + cfg.alpha_z - 1.0) > 1e-12) {
    throw ConfigError("error weights do not sum to 1");
  }
  if (cfg.n_traj < 1) throw ConfigError("n_traj must be at least 1");
  if (!(cfg.horizon > 0.0)) throw ConfigError("horizon not positive");
  return cfg;
}

UnstableSets unstable_set(std::span<const Bloch> truth, std::span<const Bloch> est,
                          std::span<const Bloch> reference, double eps1) {
  if (truth.size() != est.size() || truth.size() != reference.size()) {
    throw ConfigError("unstable_set: series lengths differ");
  }
  UnstableSets sets;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    for (std::size_t i = 0; i < 3; ++i) {
      const double ref = component(reference[t], i);
      if (std::abs(component(truth[t], i) - ref) > eps1 ||
          std::abs(component(est[t], i) - ref) > eps1) {
        sets.indices[i].push_back(t);
      }
    }
  }
  return sets;
}

ComponentErrors component_errors(std::span<const Bloch> truth, std::span<const Bloch> est,
                                 const UnstableSets& sets) {
  ComponentErrors out;
  std::array<double, 3> err{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& idx = sets.indices[i];
    if (idx.empty()) {
      out.stable[i] = true;
      continue;
    }
    double sum = 0.0;
    for (std::size_t t : idx) {
      const double d = component(truth[t], i) - component(est[t], i);
      sum += d * d;
    }
    err[i] = sum / static_cast<double>(idx.size());
  }
  out.ex = err[0];
  out.ey = err[1];
  out.ez = err[2];
  return out;
}

double overall_error(double ex, double ey, double ez, const ErrorConfig& cfg) {
  return cfg.alpha_x * ex + cfg.alpha_y * ey + cfg.alpha_z * ez;
}

ErrorReport evaluate_point(const SystemParams& base, const ErrorConfig& cfg,
                           const RunOptions& opts) {
  validate_error_config(cfg);
  SystemParams p = base;
  p.t_total = cfg.horizon;
  validate_params(p);

  auto track = std::make_shared<const CavityTrack>(CavityTrack::integrate(p));
  const std::vector<Bloch> ref_full = lindblad_reference(p, opts.rho0, *track);
  const auto n = static_cast<std::size_t>(p.steps_per_window());
  const auto windows = static_cast<std::size_t>(p.window_count());
  std::vector<Bloch> reference(windows);
  for (std::size_t j = 0; j < windows; ++j) reference[j] = ref_full[(j + 1) * n];

  const auto n_traj = static_cast<std::size_t>(cfg.n_traj);
  std::vector<TrajectoryError> per_traj(n_traj);
  std::vector<std::array<bool, 3>> stable(n_traj);
  std::vector<char> blown(n_traj, 0);

  parallel_for(n_traj, opts.threads, [&](std::size_t j) {
    try {
      const TrajectoryResult traj = simulate_trajectory(p, opts.rho0, NoiseStream(opts.seed, j), track);
      const BayesEstimate est = bayes_estimate(traj.record, *track, p, opts.rho0);
      std::vector<Bloch> truth(windows);
      for (std::size_t w = 0; w < windows; ++w) truth[w] = bloch_of(traj.states[(w + 1) * n]);
      const std::vector<Bloch> est_bloch =
          to_bloch(std::span<const QubitState>(est.states).subspan(1));
      const UnstableSets sets = unstable_set(truth, est_bloch, reference, cfg.eps1);
      const ComponentErrors ce = component_errors(truth, est_bloch, sets);
      TrajectoryError& te = per_traj[j];
      te.ex = ce.ex;
      te.ey = ce.ey;
      te.ez = ce.ez;
      te.e = overall_error(ce.ex, ce.ey, ce.ez, cfg);
      for (std::size_t i = 0; i < 3; ++i) {
        te.set_measure[i] = static_cast<double>(sets.indices[i].size()) * p.t_m;
      }
      stable[j] = ce.stable;
    } catch (const NumericalError&) {
      blown[j] = 1;
    }
  });

  ErrorReport report;
  report.n_traj = cfg.n_traj;
  const auto n_blown = std::count(blown.begin(), blown.end(), 1);
  if (n_blown > 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.blow_up = true;
    report.ex = report.ey = report.ez = report.e = report.stderr_e = nan;
    report.note = "state blow-up in " + std::to_string(n_blown) + " trajectories";
    return report;
  }

  double sum_e2 = 0.0;
  for (std::size_t j = 0; j < n_traj; ++j) {
    const TrajectoryError& te = per_traj[j];
    report.ex += te.ex;
    report.ey += te.ey;
    report.ez += te.ez;
    report.e += te.e;
    sum_e2 += te.e * te.e;
    for (std::size_t i = 0; i < 3; ++i) {
      report.set_measure[i] += te.set_measure[i];
      report.stable_count[i] += stable[j][i] ? 1 : 0;
    }
  }
  const auto count = static_cast<double>(n_traj);
  report.ex /= count;
  report.ey /= count;
  report.ez /= count;
  report.e /= count;
  for (double& m : report.set_measure) m /= count;
  if (n_traj > 1) {
    const double var = std::max(0.0, (sum_e2 - count * report.e * report.e) / (count - 1.0));
    report.stderr_e = std::sqrt(var / count);
  }
  report.per_trajectory = std::move(per_traj);
  return report;
}

SweepResult parameter_sweep(const SystemParams& base, std::string_view param,
                            std::span<const double> grid, const ErrorConfig& cfg,
                            const RunOptions& opts) {
  if (!is_sweep_param(param)) throw ConfigError("unknown sweep parameter: " + std::string(param));
  if (grid.empty()) throw ConfigError("empty sweep grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("sweep grid not strictly increasing");
  }
  SweepResult out;
  out.param = std::string(param);
  out.grid.assign(grid.begin(), grid.end());
  for (double v : grid) {
    SystemParams p = base;
    set_sweep_param(p, param, v);
    out.reports.push_back(evaluate_point(p, cfg, opts));
  }
  return out;
}

namespace {

struct Bracket {
  CriticalPoint point;
  std::size_t lower = 0;
};

Bracket locate_crossing(const SweepResult& sweep, double eps2) {
  const std::size_t n = sweep.grid.size();
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = sweep.reports[i].e;
    e[i] = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  }
  int changes = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if ((e[i] >= eps2) != (e[i + 1] >= eps2)) ++changes;
  }
  Bracket b;
  b.point.noisy = changes > 1;
  if (n == 0) return b;
  if (e[0] >= eps2) {
    b.point.status = CriticalPoint::Status::kAboveAtStart;
    b.point.value = sweep.grid[0];
    return b;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (e[i] < eps2 && e[i + 1] >= eps2) {
      b.point.status = CriticalPoint::Status::kCrossing;
      b.lower = i;
      const double a0 = sweep.grid[i];
      const double a1 = sweep.grid[i + 1];
      b.point.value = std::isinf(e[i + 1]) ? a1 : a0 + (eps2 - e[i]) * (a1 - a0) / (e[i + 1] - e[i]);
      return b;
    }
  }
  return b;
}

}  // namespace

CriticalPoint critical_point(const SweepResult& sweep, double eps2) {
  return locate_crossing(sweep, eps2).point;
}

CriticalPoint refine_critical_point(const SystemParams& base, SweepResult& sweep,
                                    const ErrorConfig& cfg, const RunOptions& opts, double eps2) {
  const Bracket b = locate_crossing(sweep, eps2);
  if (b.point.status != CriticalPoint::Status::kCrossing) return b.point;
  const double a0 = sweep.grid[b.lower];
  const double a1 = sweep.grid[b.lower + 1];
  std::vector<double> sub;
  for (int m = 1; m <= 5; ++m) sub.push_back(a0 + (a1 - a0) * m / 6.0);
  const SweepResult extra = parameter_sweep(base, sweep.param, sub, cfg, opts);
  const auto pos = static_cast<std::ptrdiff_t>(b.lower + 1);
  sweep.grid.insert(sweep.grid.begin() + pos, extra.grid.begin(), extra.grid.end());
  sweep.reports.insert(sweep.reports.begin() + pos, extra.reports.begin(), extra.reports.end());
  return critical_point(sweep, eps2);
}

std::string to_string(const CriticalPoint& cp) {
  switch (cp.status) {
    case CriticalPoint::Status::kCrossing:
      return cp.noisy ? "crossing (noisy crossing: increase n_traj)" : "crossing";
    case CriticalPoint::Status::kAboveAtStart:
      return "above bound at grid start";
    case CriticalPoint::Status::kNoCrossing:
      break;
  }
  return "no crossing";
}

std::vector<double> make_grid(double start, double stop, std::int64_t n, bool log_spacing) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  if (n == 1) return {start};
  if (!(stop > start)) throw ConfigError("grid stop must exceed start");
  if (log_spacing && !(start > 0.0)) throw ConfigError("log grid needs a positive start");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    grid[static_cast<std::size_t>(i)] =
        log_spacing ? start * std::pow(stop / start, f) : start + (stop - start) * f;
  }
  grid.back() = stop;
  return grid;
}

std::vector<double> default_grid(std::string_view param, const SystemParams& base) {
  constexpr std::int64_t kPoints = 20;
  if (param == "kappa") return make_grid(5.0, 80.0, kPoints, false);
  const auto& refs = reference_critical_values();
  const auto it = refs.find(param);
  if (it == refs.end()) throw ConfigError("unknown sweep parameter: " + std::string(param));
  double stop = 4.0 * it->second;
  if (param == "eta") stop = std::min(stop, 1.0);
  return make_grid(get_sweep_param(base, param), stop, kPoints, false);
}

}  // namespace qbayes
