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

#include "qbayes/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "qbayes/csv.hpp"
#include "qbayes/errors.hpp"

namespace qbayes {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  if (text == "pi") return std::numbers::pi;
  if (text == "-pi") return -std::numbers::pi;
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("bad number for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  Int v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("bad integer for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("bad boolean for " + std::string(key) + ": '" + std::string(text) + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

Setter real(double SystemParams::*field) {
  return [field](RunConfig& c, std::string_view k, std::string_view v) {
    c.system.*field = parse_double(k, v);
  };
}

Setter real(double ErrorConfig::*field) {
  return [field](RunConfig& c, std::string_view k, std::string_view v) {
    c.error.*field = parse_double(k, v);
  };
}

Setter real(double Bloch::*field) {
  return [field](RunConfig& c, std::string_view k, std::string_view v) {
    c.initial.*field = parse_double(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"system.omega_q_tilde", real(&SystemParams::omega_q_tilde)},
      {"system.delta_r", real(&SystemParams::delta_r)},
      {"system.chi", real(&SystemParams::chi)},
      {"system.epsilon_d",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.system.epsilon_d.real(parse_double(k, v));
       }},
      {"system.epsilon_d_im",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.system.epsilon_d.imag(parse_double(k, v));
       }},
      {"system.kappa", real(&SystemParams::kappa)},
      {"system.gamma_1", real(&SystemParams::gamma_1)},
      {"system.gamma_phi", real(&SystemParams::gamma_phi)},
      {"system.eta", real(&SystemParams::eta)},
      {"system.phi_lo", real(&SystemParams::phi_lo)},
      {"system.t_m", real(&SystemParams::t_m)},
      {"system.dt", real(&SystemParams::dt)},
      {"system.t_total", real(&SystemParams::t_total)},
      {"initial.sx", real(&Bloch::x)},
      {"initial.sy", real(&Bloch::y)},
      {"initial.sz", real(&Bloch::z)},
      {"error.eps1", real(&ErrorConfig::eps1)},
      {"error.eps2", real(&ErrorConfig::eps2)},
      {"error.alpha_x", real(&ErrorConfig::alpha_x)},
      {"error.alpha_y", real(&ErrorConfig::alpha_y)},
      {"error.alpha_z", real(&ErrorConfig::alpha_z)},
      {"error.horizon", real(&ErrorConfig::horizon)},
      {"error.n_traj",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.error.n_traj = parse_int<std::int64_t>(k, v);
       }},
      {"run.seed",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.seed = parse_int<std::uint64_t>(k, v);
       }},
      {"run.out", [](RunConfig& c, std::string_view, std::string_view v) { c.out_dir = v; }},
      {"run.threads",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.threads = parse_int<unsigned>(k, v);
       }},
      {"run.trajectories",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.trajectories = parse_int<std::int64_t>(k, v);
       }},
      {"run.filter",
       [](RunConfig& c, std::string_view k, std::string_view v) { c.filter = parse_bool(k, v); }},
      {"sweep.param",
       [](RunConfig& c, std::string_view, std::string_view v) { c.sweep_param = v; }},
      {"sweep.grid",
       [](RunConfig& c, std::string_view, std::string_view v) { c.grid = parse_grid(v); }},
  };
  return table;
}

}  // namespace

GridSpec parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(trim(text.substr(start, colon - start)));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 3 || parts.size() > 4) {
    throw ConfigError("grid must be start:stop:n[:log], got '" + std::string(text) + "'");
  }
  GridSpec g;
  g.start = parse_double("grid start", parts[0]);
  g.stop = parse_double("grid stop", parts[1]);
  g.n = parse_int<std::int64_t>("grid n", parts[2]);
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log_spacing = true;
    } else if (parts[3] != "lin") {
      throw ConfigError("grid spacing must be 'log' or 'lin'");
    }
  }
  if (g.n < 1) throw ConfigError("grid n must be at least 1");
  return g;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
    it->second(cfg, key, value);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const RunConfig& cfg) {
  validate_params(cfg.system);
  validate_error_config(cfg.error);
  const Bloch& b = cfg.initial;
  if (b.x * b.x + b.y * b.y + b.z * b.z > 1.0 + 1e-12) {
    throw ConfigError("initial Bloch vector longer than 1");
  }
  if (cfg.trajectories < 1) throw ConfigError("run.trajectories must be at least 1");
  if (!cfg.sweep_param.empty() && !is_sweep_param(cfg.sweep_param)) {
    throw ConfigError("unknown sweep parameter: " + cfg.sweep_param);
  }
}

std::string resolved_config_text(const RunConfig& cfg) {
  std::ostringstream out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  const SystemParams& s = cfg.system;
  put("system.omega_q_tilde", format_double(s.omega_q_tilde));
  put("system.delta_r", format_double(s.delta_r));
  put("system.chi", format_double(s.chi));
  put("system.epsilon_d", format_double(s.epsilon_d.real()));
  put("system.epsilon_d_im", format_double(s.epsilon_d.imag()));
  put("system.kappa", format_double(s.kappa));
  put("system.gamma_1", format_double(s.gamma_1));
  put("system.gamma_phi", format_double(s.gamma_phi));
  put("system.eta", format_double(s.eta));
  put("system.phi_lo", format_double(s.phi_lo));
  put("system.t_m", format_double(s.t_m));
  put("system.dt", format_double(s.dt));
  put("system.t_total", format_double(s.t_total));
  put("initial.sx", format_double(cfg.initial.x));
  put("initial.sy", format_double(cfg.initial.y));
  put("initial.sz", format_double(cfg.initial.z));
  put("error.eps1", format_double(cfg.error.eps1));
  put("error.eps2", format_double(cfg.error.eps2));
  put("error.alpha_x", format_double(cfg.error.alpha_x));
  put("error.alpha_y", format_double(cfg.error.alpha_y));
  put("error.alpha_z", format_double(cfg.error.alpha_z));
  put("error.n_traj", std::to_string(cfg.error.n_traj));
  put("error.horizon", format_double(cfg.error.horizon));
  put("run.seed", std::to_string(cfg.seed));
  put("run.trajectories", std::to_string(cfg.trajectories));
  put("run.filter", cfg.filter ? "true" : "false");
  if (!cfg.sweep_param.empty()) put("sweep.param", cfg.sweep_param);
  if (cfg.grid) {
    put("sweep.grid", format_double(cfg.grid->start) + ":" + format_double(cfg.grid->stop) + ":" +
                          std::to_string(cfg.grid->n) + (cfg.grid->log_spacing ? ":log" : ""));
  }
  return out.str();
}

}  // namespace qbayes
