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

#include <string>
#include <vector>

#include "qbayes/config.hpp"

namespace qbayes {

/// Files written by a command, relative paths in write order.
struct CommandOutput {
  std::vector<std::string> files;
  bool blow_up = false;
};

/// Per-trajectory dumps: t, I_phi, I_m (window ends only), true Bloch vector,
/// cavity branch amplitudes.
CommandOutput cmd_simulate(const RunConfig& cfg);

/// Truth / Bayesian / filter Bloch series at window ends, one file per
/// trajectory plus an ensemble-mean file.
CommandOutput cmd_estimate(const RunConfig& cfg);

/// Error report per grid value plus per-point per-trajectory error files and
/// critical-point summary rows for eps2 = 0.1 and eps2 = 0.05.
CommandOutput cmd_sweep(const RunConfig& cfg);

/// Same as cmd_sweep, with one refinement pass around each crossing.
CommandOutput cmd_critical(const RunConfig& cfg);

}  // namespace qbayes
