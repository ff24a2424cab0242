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
#include <optional>
#include <string>
#include <string_view>

#include "qbayes/error_analysis.hpp"
#include "qbayes/params.hpp"
#include "qbayes/qubit_state.hpp"

namespace qbayes {

/// "start:stop:n[:log]".
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  std::int64_t n = 0;
  bool log_spacing = false;
};

GridSpec parse_grid(std::string_view text);

/// Everything a command needs. Loaded from a flat key = value file whose keys
/// are sectioned (system.chi, error.eps2, run.seed, ...). Unknown keys and
/// malformed values are ConfigErrors.
struct RunConfig {
  SystemParams system = demo_params();
  Bloch initial{1.0, 0.0, 0.0};
  ErrorConfig error;
  std::uint64_t seed = 20180806;
  std::string out_dir = "out";
  unsigned threads = 0;
  std::int64_t trajectories = 1;  ///< simulate / estimate
  bool filter = true;
  std::string sweep_param;
  std::optional<GridSpec> grid;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Validates every block; throws ConfigError.
void validate_config(const RunConfig& cfg);

/// Canonical key = value dump of the resolved configuration (fixed key order,
/// round-trip float formatting). Excludes run.threads and run.out, which do
/// not affect results.
std::string resolved_config_text(const RunConfig& cfg);

}  // namespace qbayes
