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

#include "qbayes/commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>

#include "qbayes/cavity.hpp"
#include "qbayes/csv.hpp"
#include "qbayes/errors.hpp"
#include "qbayes/estimators.hpp"
#include "qbayes/parallel.hpp"
#include "qbayes/trajectory.hpp"

namespace qbayes {
namespace {

namespace fs = std::filesystem;

std::string numbered(std::string_view stem, std::size_t i, int width = 6) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, i);
  return std::string(stem) + buf + ".csv";
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + cfg.out_dir);
  return dir;
}

// Sidecar log; the only output that carries wall-clock time.
void append_log(const fs::path& dir, std::string_view command, std::string_view message) {
  std::ofstream log(dir / "run.log", std::ios::app);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  log << stamp << ' ' << command << ": " << message << '\n';
}

void write_status(const fs::path& dir, std::string_view command,
                  const std::vector<std::string>& failures) {
  std::ofstream status(dir / (std::string(command) + "_status.txt"), std::ios::trunc);
  if (failures.empty()) {
    status << "ok\n";
  } else {
    for (const auto& f : failures) status << f << '\n';
  }
  if (!status) throw IoError("cannot write status file");
}

QubitState initial_state(const RunConfig& cfg) { return state_of_bloch(cfg.initial); }

std::vector<std::string> fields(std::initializer_list<double> values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(format_double(v));
  return out;
}

}  // namespace

CommandOutput cmd_simulate(const RunConfig& cfg) {
  validate_config(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  const SystemParams& p = cfg.system;
  const std::string config_text = resolved_config_text(cfg);
  auto track = std::make_shared<const CavityTrack>(CavityTrack::integrate(p));
  const QubitState rho0 = initial_state(cfg);
  const auto n_traj = static_cast<std::size_t>(cfg.trajectories);

  const std::vector<std::string> columns = {"t",          "I_phi",      "I_m",        "sx_true",
                                            "sy_true",    "sz_true",    "re_alpha_g", "im_alpha_g",
                                            "re_alpha_e", "im_alpha_e"};
  CommandOutput result;
  std::vector<std::string> failure(n_traj);
  for (std::size_t i = 0; i < n_traj; ++i) result.files.push_back(numbered("simulate_traj_", i));

  parallel_for(n_traj, cfg.threads, [&](std::size_t i) {
    TrajectoryResult traj;
    try {
      traj = simulate_trajectory(p, rho0, NoiseStream(cfg.seed, i), track);
    } catch (const NumericalError& e) {
      failure[i] = "trajectory " + std::to_string(i) + ": " + e.what();
      return;
    }
    CsvWriter csv((dir / result.files[i]).string(), "qbayes.simulate", config_text, cfg.seed,
                  std::vector<std::string>{"trajectory: " + std::to_string(i)}, columns);
    const auto n = static_cast<std::size_t>(traj.record.steps_per_window);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const Bloch b = bloch_of(traj.states[k]);
      const CavityBranchState& s = track->states[k];
      std::vector<std::string> row = fields({traj.times[k], traj.record.samples[k], 0.0, b.x, b.y,
                                             b.z, s.alpha_g.real(), s.alpha_g.imag(),
                                             s.alpha_e.real(), s.alpha_e.imag()});
      row[2] = (k > 0 && k % n == 0) ? format_double(traj.record.window_means[k / n - 1]) : "";
      csv.row(row);
    }
    csv.close();
  });

  std::vector<std::string> failures;
  for (auto& f : failure) {
    if (!f.empty()) failures.push_back(f);
  }
  write_status(dir, "simulate", failures);
  append_log(dir, "simulate", std::to_string(n_traj) + " trajectories");
  result.blow_up = !failures.empty();
  return result;
}

CommandOutput cmd_estimate(const RunConfig& cfg) {
  validate_config(cfg);
  const fs::path dir = prepare_out_dir(cfg);
  const SystemParams& p = cfg.system;
  const std::string config_text = resolved_config_text(cfg);
  auto track = std::make_shared<const CavityTrack>(CavityTrack::integrate(p));
  const QubitState rho0 = initial_state(cfg);
  const auto n_traj = static_cast<std::size_t>(cfg.trajectories);
  const auto n = static_cast<std::size_t>(p.steps_per_window());
  const auto rows = static_cast<std::size_t>(p.window_count()) + 1;

  std::vector<std::string> columns = {"t",        "sx_true",  "sy_true",  "sz_true",
                                      "sx_bayes", "sy_bayes", "sz_bayes"};
  if (cfg.filter) {
    for (const char* c : {"sx_filter", "sy_filter", "sz_filter"}) columns.emplace_back(c);
  }
  const std::vector<std::string> extra = {
      std::string("filter_columns: ") + (cfg.filter ? "present" : "absent")};

  CommandOutput result;
  for (std::size_t i = 0; i < n_traj; ++i) result.files.push_back(numbered("estimate_traj_", i));
  // Per-trajectory window-end series kept for the ordered ensemble mean.
  std::vector<std::vector<double>> series(n_traj);
  std::vector<std::string> failure(n_traj);

  parallel_for(n_traj, cfg.threads, [&](std::size_t i) {
    std::vector<double>& values = series[i];
    try {
      const TrajectoryResult traj = simulate_trajectory(p, rho0, NoiseStream(cfg.seed, i), track);
      const BayesEstimate bayes = bayes_estimate(traj.record, *track, p, rho0);
      std::vector<QubitState> filt;
      if (cfg.filter) filt = filter_estimate(traj.record, *track, p, rho0);
      for (std::size_t j = 0; j < rows; ++j) {
        const Bloch t = bloch_of(traj.states[j * n]);
        const Bloch b = bloch_of(bayes.states[j]);
        values.insert(values.end(), {traj.times[j * n], t.x, t.y, t.z, b.x, b.y, b.z});
        if (cfg.filter) {
          const Bloch f = bloch_of(filt[j * n]);
          values.insert(values.end(), {f.x, f.y, f.z});
        }
      }
    } catch (const NumericalError& e) {
      failure[i] = "trajectory " + std::to_string(i) + ": " + e.what();
      values.clear();
      return;
    }
    CsvWriter csv((dir / result.files[i]).string(), "qbayes.estimate", config_text, cfg.seed,
                  std::vector<std::string>{extra[0], "trajectory: " + std::to_string(i)},
                  columns);
    std::vector<std::string> row(columns.size());
    for (std::size_t j = 0; j < rows; ++j) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        row[c] = format_double(values[j * columns.size() + c]);
      }
      csv.row(row);
    }
    csv.close();
  });

  std::vector<std::string> failures;
  std::vector<double> mean(rows * columns.size(), 0.0);
  std::size_t used = 0;
  for (std::size_t i = 0; i < n_traj; ++i) {
    if (!failure[i].empty()) {
      failures.push_back(failure[i]);
      continue;
    }
    for (std::size_t v = 0; v < mean.size(); ++v) mean[v] += series[i][v];
    ++used;
  }
  const std::string mean_file = "estimate_mean.csv";
  CsvWriter csv((dir / mean_file).string(), "qbayes.estimate_mean", config_text, cfg.seed,
                std::vector<std::string>{extra[0], "trajectories_averaged: " + std::to_string(used)},
                columns);
  std::vector<std::string> row(columns.size());
  for (std::size_t j = 0; j < rows && used > 0; ++j) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      row[c] = format_double(mean[j * columns.size() + c] / static_cast<double>(used));
    }
    csv.row(row);
  }
  csv.close();
  result.files.push_back(mean_file);

  write_status(dir, "estimate", failures);
  append_log(dir, "estimate", std::to_string(n_traj) + " trajectories");
  result.blow_up = !failures.empty();
  return result;
}

namespace {

struct SweepSetup {
  std::vector<double> grid;
  RunOptions opts;
};

SweepSetup prepare_sweep(const RunConfig& cfg) {
  if (cfg.sweep_param.empty()) throw ConfigError("sweep needs a parameter (--param)");
  SweepSetup s;
  s.grid = cfg.grid ? make_grid(cfg.grid->start, cfg.grid->stop, cfg.grid->n, cfg.grid->log_spacing)
                    : default_grid(cfg.sweep_param, cfg.system);
  s.opts.seed = cfg.seed;
  s.opts.threads = cfg.threads;
  s.opts.rho0 = initial_state(cfg);
  return s;
}

std::vector<double> bounds_for(const RunConfig& cfg) {
  std::vector<double> bounds = {0.1, 0.05};
  if (cfg.error.eps2 != 0.1 && cfg.error.eps2 != 0.05) bounds.push_back(cfg.error.eps2);
  return bounds;
}

CommandOutput write_sweep(const RunConfig& cfg, std::string_view command, const SweepResult& sweep,
                          const std::vector<std::pair<double, CriticalPoint>>& crit) {
  const fs::path dir = prepare_out_dir(cfg);
  const std::string config_text = resolved_config_text(cfg);
  CommandOutput result;

  const std::string report_name = std::string(command) + "_" + sweep.param + ".csv";
  const std::vector<std::string> columns = {"row_type", "param_value", "Ex",  "Ey",
                                            "Ez",       "E",           "stderr_E", "n_traj",
                                            "eps2",     "status"};
  CsvWriter report((dir / report_name).string(), "qbayes.sweep", config_text, cfg.seed,
                   std::vector<std::string>{"param: " + sweep.param}, columns);
  std::vector<std::string> failures;
  for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
    const ErrorReport& r = sweep.reports[i];
    std::vector<std::string> row = {"point",
                                    format_double(sweep.grid[i]),
                                    format_double(r.ex),
                                    format_double(r.ey),
                                    format_double(r.ez),
                                    format_double(r.e),
                                    format_double(r.stderr_e),
                                    std::to_string(r.n_traj),
                                    "",
                                    r.blow_up ? r.note : "ok"};
    report.row(row);
    if (r.blow_up) failures.push_back(sweep.param + "=" + format_double(sweep.grid[i]) + ": " + r.note);
  }
  for (const auto& [eps2, cp] : crit) {
    const bool has_value = cp.status == CriticalPoint::Status::kCrossing;
    report.row(std::vector<std::string>{"critical", has_value ? format_double(cp.value) : "none",
                                        "", "", "", "", "", "", format_double(eps2),
                                        to_string(cp)});
  }
  report.close();
  result.files.push_back(report_name);

  for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
    const std::string name =
        numbered(std::string(command) + "_" + sweep.param + "_point_", i, 3);
    CsvWriter csv((dir / name).string(), "qbayes.sweep_point", config_text, cfg.seed,
                  std::vector<std::string>{"param: " + sweep.param,
                                           "param_value: " + format_double(sweep.grid[i])},
                  std::vector<std::string>{"trajectory", "Ex", "Ey", "Ez", "E", "S_x", "S_y",
                                           "S_z"});
    const auto& per = sweep.reports[i].per_trajectory;
    for (std::size_t j = 0; j < per.size(); ++j) {
      const TrajectoryError& te = per[j];
      std::vector<std::string> row = fields({te.ex, te.ey, te.ez, te.e, te.set_measure[0],
                                             te.set_measure[1], te.set_measure[2]});
      row.insert(row.begin(), std::to_string(j));
      csv.row(row);
    }
    csv.close();
    result.files.push_back(name);
  }
  write_status(dir, command, failures);
  append_log(dir, command, sweep.param + " over " + std::to_string(sweep.grid.size()) + " points");
  result.blow_up = !failures.empty();
  return result;
}

}  // namespace

CommandOutput cmd_sweep(const RunConfig& cfg) {
  validate_config(cfg);
  const SweepSetup setup = prepare_sweep(cfg);
  const SweepResult sweep =
      parameter_sweep(cfg.system, cfg.sweep_param, setup.grid, cfg.error, setup.opts);
  std::vector<std::pair<double, CriticalPoint>> crit;
  for (double eps2 : bounds_for(cfg)) crit.emplace_back(eps2, critical_point(sweep, eps2));
  return write_sweep(cfg, "sweep", sweep, crit);
}

CommandOutput cmd_critical(const RunConfig& cfg) {
  validate_config(cfg);
  const SweepSetup setup = prepare_sweep(cfg);
  SweepResult sweep =
      parameter_sweep(cfg.system, cfg.sweep_param, setup.grid, cfg.error, setup.opts);
  std::vector<std::pair<double, CriticalPoint>> crit;
  for (double eps2 : bounds_for(cfg)) {
    crit.emplace_back(eps2, refine_critical_point(cfg.system, sweep, cfg.error, setup.opts, eps2));
  }
  // Refinement for one bound can add points that move another bound's crossing.
  for (auto& [eps2, cp] : crit) cp = critical_point(sweep, eps2);
  return write_sweep(cfg, "critical", sweep, crit);
}

}  // namespace qbayes
