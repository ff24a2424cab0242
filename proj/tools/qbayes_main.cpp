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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qbayes/commands.hpp"
#include "qbayes/config.hpp"
#include "qbayes/errors.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::optional<std::string> param;
  std::optional<std::string> grid;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trajectories;
  std::optional<unsigned> threads;
  bool no_filter = false;
};

void add_common(CLI::App* sub, CliOptions& o) {
  sub->add_option("--config", o.config_path, "Configuration file (key = value)");
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--seed", o.seed, "Master seed (overrides run.seed)");
  sub->add_option("--trajectories", o.trajectories,
                  "Trajectories per run (simulate/estimate) or per grid point (sweep/critical)");
  sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

qbayes::RunConfig resolve(const CliOptions& o, bool sweep_like) {
  qbayes::RunConfig cfg =
      o.config_path.empty() ? qbayes::RunConfig{} : qbayes::load_config(o.config_path);
  if (o.out) cfg.out_dir = *o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  if (o.trajectories) {
    if (sweep_like) {
      cfg.error.n_traj = *o.trajectories;
    } else {
      cfg.trajectories = *o.trajectories;
    }
  }
  if (o.param) cfg.sweep_param = *o.param;
  if (o.grid) cfg.grid = qbayes::parse_grid(*o.grid);
  if (o.no_filter) cfg.filter = false;
  return cfg;
}

void report(const qbayes::CommandOutput& out, const qbayes::RunConfig& cfg) {
  for (const auto& f : out.files) std::cout << cfg.out_dir << '/' << f << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous weak measurement of a dispersively read-out qubit: trajectory "
               "simulation, Bayesian and filter estimation, error sweeps"};
  app.require_subcommand(1);

  CliOptions opts;
  auto* simulate = app.add_subcommand("simulate", "Write stochastic trajectories and photocurrents");
  auto* estimate = app.add_subcommand("estimate", "Write truth vs Bayesian / filter estimates");
  auto* sweep = app.add_subcommand("sweep", "Estimation error across a parameter grid");
  auto* critical = app.add_subcommand("critical", "Sweep plus refinement around the critical point");
  for (auto* sub : {simulate, estimate, sweep, critical}) add_common(sub, opts);
  estimate->add_flag("--no-filter", opts.no_filter, "Skip the filter-equation estimator");
  for (auto* sub : {sweep, critical}) {
    sub->add_option("--param", opts.param,
                    "chi | delta_r | epsilon_d | eta | gamma_1 | gamma_phi | kappa");
    sub->add_option("--grid", opts.grid, "start:stop:n[:log]");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? qbayes::kExitOk : qbayes::kExitConfig;
  }

  try {
    const bool sweep_like = sweep->parsed() || critical->parsed();
    const qbayes::RunConfig cfg = resolve(opts, sweep_like);
    qbayes::CommandOutput out;
    if (simulate->parsed()) out = qbayes::cmd_simulate(cfg);
    if (estimate->parsed()) out = qbayes::cmd_estimate(cfg);
    if (sweep->parsed()) out = qbayes::cmd_sweep(cfg);
    if (critical->parsed()) out = qbayes::cmd_critical(cfg);
    report(out, cfg);
    if (out.blow_up) {
      std::cerr << "numerical blow-up: see the status file in " << cfg.out_dir << '\n';
      return qbayes::kExitNumerical;
    }
    return qbayes::kExitOk;
  } catch (const qbayes::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return qbayes::kExitConfig;
  } catch (const qbayes::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return qbayes::kExitNumerical;
  } catch (const qbayes::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return qbayes::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
