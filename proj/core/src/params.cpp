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

#include "qbayes/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbayes/errors.hpp"

namespace qbayes {
namespace {

// Ratio a / b when it is an integer to within relative rounding noise.
std::int64_t integer_ratio_or(double a, double b, std::int64_t fallback) {
  const double r = a / b;
  const double n = std::round(r);
  if (n < 1.0 || std::abs(r - n) > 1e-9 * n) return fallback;
  return static_cast<std::int64_t>(n);
}

}  // namespace

std::int64_t SystemParams::steps_per_window() const { return integer_ratio_or(t_m, dt, 0); }

std::int64_t SystemParams::window_count() const { return integer_ratio_or(t_total, t_m, 0); }

std::int64_t SystemParams::step_count() const { return steps_per_window() * window_count(); }

const SystemParams& validate_params(const SystemParams& p) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(p.omega_q_tilde) || !finite(p.delta_r) || !finite(p.chi) ||
      !finite(p.epsilon_d.real()) || !finite(p.epsilon_d.imag()) || !finite(p.kappa) ||
      !finite(p.gamma_1) || !finite(p.gamma_phi) || !finite(p.eta) || !finite(p.phi_lo) ||
      !finite(p.t_m) || !finite(p.dt) || !finite(p.t_total)) {
    throw ConfigError("parameter not finite");
  }
  if (p.kappa < 0.0) throw ConfigError("kappa negative");
  if (p.gamma_1 < 0.0) throw ConfigError("gamma_1 negative");
  if (p.gamma_phi < 0.0) throw ConfigError("gamma_phi negative");
  if (p.eta < 0.0 || p.eta > 1.0) throw ConfigError("eta out of [0,1]");
  if (!(p.dt > 0.0)) throw ConfigError("dt not positive");
  if (p.dt > p.t_m) throw ConfigError("dt exceeds t_m");
  if (p.t_m > p.t_total) throw ConfigError("t_m exceeds t_total");
  if (p.steps_per_window() == 0) throw ConfigError("t_m not a multiple of dt");
  if (p.window_count() == 0) throw ConfigError("t_total not a multiple of t_m");
  return p;
}

SystemParams demo_params() {
  SystemParams p;
  p.chi = 1.0;
  p.omega_q_tilde = 0.0 + p.chi;
  p.delta_r = 0.0;
  p.epsilon_d = {15.0, 0.0};
  p.kappa = 20.0;
  p.gamma_1 = 0.0;
  p.gamma_phi = 0.0;
  p.eta = 0.1;
  p.phi_lo = std::numbers::pi;
  p.t_m = 0.01;
  p.dt = 0.001;
  p.t_total = 10.0;
  return p;
}

namespace {

double* sweep_slot(SystemParams& p, std::string_view name) {
  if (name == "chi") return &p.chi;
  if (name == "delta_r") return &p.delta_r;
  if (name == "eta") return &p.eta;
  if (name == "gamma_1") return &p.gamma_1;
  if (name == "gamma_phi") return &p.gamma_phi;
  if (name == "kappa") return &p.kappa;
  return nullptr;
}

}  // namespace

bool is_sweep_param(std::string_view name) {
  SystemParams p;
  return name == "epsilon_d" || sweep_slot(p, name) != nullptr;
}

void set_sweep_param(SystemParams& p, std::string_view name, double value) {
  if (name == "epsilon_d") {
    p.epsilon_d = {value, 0.0};
    return;
  }
  double* slot = sweep_slot(p, name);
  if (slot == nullptr) throw ConfigError("unknown sweep parameter: " + std::string(name));
  *slot = value;
}

double get_sweep_param(const SystemParams& p, std::string_view name) {
  if (name == "epsilon_d") return std::abs(p.epsilon_d);
  SystemParams copy = p;
  double* slot = sweep_slot(copy, name);
  if (slot == nullptr) throw ConfigError("unknown sweep parameter: " + std::string(name));
  return *slot;
}

}  // namespace qbayes
