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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qbayes/errors.hpp"
#include "qbayes/params.hpp"

namespace qbayes {
namespace {

TEST(ValidateParams, AcceptsDemoSet) {
  const SystemParams p = demo_params();
  EXPECT_EQ(p.t_m, 0.01);
  EXPECT_EQ(p.delta_r, 0.0);
  EXPECT_EQ(p.chi, 1.0);
  EXPECT_EQ(p.epsilon_d, std::complex<double>(15.0, 0.0));
  EXPECT_EQ(p.kappa, 20.0);
  EXPECT_EQ(p.gamma_1, 0.0);
  EXPECT_EQ(p.gamma_phi, 0.0);
  EXPECT_DOUBLE_EQ(p.phi_lo, std::numbers::pi);
  EXPECT_NO_THROW(validate_params(p));
  EXPECT_EQ(validate_params(p), p);
}

void expect_rejected(const SystemParams& p, const std::string& message) {
  try {
    validate_params(p);
    FAIL() << "expected ConfigError: " << message;
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()), message);
  }
}

TEST(ValidateParams, RejectsEtaOutOfRange) {
  SystemParams p = demo_params();
  p.eta = 1.2;
  expect_rejected(p, "eta out of [0,1]");
  p.eta = -0.1;
  expect_rejected(p, "eta out of [0,1]");
}

TEST(ValidateParams, RejectsNonDivisibleWindow) {
  SystemParams p = demo_params();
  p.dt = 0.003;
  expect_rejected(p, "t_m not a multiple of dt");
}

TEST(ValidateParams, RejectsOtherInvariants) {
  SystemParams p = demo_params();
  p.kappa = -1.0;
  expect_rejected(p, "kappa negative");
  p = demo_params();
  p.gamma_1 = -1e-3;
  expect_rejected(p, "gamma_1 negative");
  p = demo_params();
  p.gamma_phi = -1e-3;
  expect_rejected(p, "gamma_phi negative");
  p = demo_params();
  p.dt = 0.0;
  expect_rejected(p, "dt not positive");
  p = demo_params();
  p.dt = 0.02;
  expect_rejected(p, "dt exceeds t_m");
  p = demo_params();
  p.t_total = 0.005;
  p.dt = 0.001;
  expect_rejected(p, "t_m exceeds t_total");
  p = demo_params();
  p.t_total = 10.005;
  expect_rejected(p, "t_total not a multiple of t_m");
}

TEST(ValidateParams, GridCounts) {
  const SystemParams p = demo_params();
  EXPECT_EQ(p.steps_per_window(), 10);
  EXPECT_EQ(p.window_count(), 1000);
  EXPECT_EQ(p.step_count(), 10000);
}

// Every bound in the suitable-condition tables, with the unit convention
// 1 MHz -> 1 rad/us and 1 kHz -> 1e-3, is a valid parameter set.
TEST(ValidateParams, AcceptsSuitableConditionTables) {
  struct Entry {
    const char* name;
    double value;
  };
  const Entry entries[] = {
      {"chi", 19.57},      {"delta_r", 0.5949},    {"epsilon_d", 70.11}, {"eta", 0.4817},
      {"gamma_1", 5.841e-3}, {"gamma_phi", 0.2036}, {"chi", 12.1},        {"delta_r", 0.1959},
      {"epsilon_d", 53.4}, {"eta", 0.2372},        {"gamma_1", 1.821e-3}, {"gamma_phi", 0.0467},
  };
  for (const auto& e : entries) {
    SystemParams p = demo_params();
    set_sweep_param(p, e.name, e.value);
    EXPECT_NO_THROW(validate_params(p)) << e.name << " = " << e.value;
    EXPECT_DOUBLE_EQ(get_sweep_param(p, e.name), e.value);
  }
}

TEST(SweepParams, UnknownNameRejected) {
  SystemParams p = demo_params();
  EXPECT_FALSE(is_sweep_param("omega_q_tilde"));
  EXPECT_TRUE(is_sweep_param("kappa"));
  EXPECT_THROW(set_sweep_param(p, "bogus", 1.0), ConfigError);
  EXPECT_THROW(get_sweep_param(p, "bogus"), ConfigError);
}

}  // namespace
}  // namespace qbayes
