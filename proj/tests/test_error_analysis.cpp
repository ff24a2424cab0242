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
#include <limits>
#include <vector>

#include "qbayes/errors.hpp"
#include "qbayes/error_analysis.hpp"
#include "qbayes/parallel.hpp"

namespace qbayes {
namespace {

std::vector<Bloch> constant_series(Bloch b, std::size_t n) { return std::vector<Bloch>(n, b); }

std::vector<Bloch> shifted(std::vector<Bloch> s, double dx, double dy, double dz) {
  for (Bloch& b : s) {
    b.x += dx;
    b.y += dy;
    b.z += dz;
  }
  return s;
}

TEST(UnstableSet, EmptyWhenEverythingAgrees) {
  const auto s = constant_series({0.2, -0.1, 0.4}, 50);
  const UnstableSets sets = unstable_set(s, s, s, 0.01);
  for (const auto& idx : sets.indices) EXPECT_TRUE(idx.empty());
}

TEST(UnstableSet, ThresholdIsStrict) {
  const auto ref = constant_series({0.0, 0.0, 0.0}, 40);
  const double eps1 = 0.01;
  const UnstableSets at = unstable_set(ref, shifted(ref, eps1, eps1, eps1), ref, eps1);
  for (const auto& idx : at.indices) EXPECT_TRUE(idx.empty());
  const double over = 1.01 * eps1;
  const UnstableSets above = unstable_set(ref, shifted(ref, over, over, over), ref, eps1);
  for (const auto& idx : above.indices) EXPECT_EQ(idx.size(), 40u);
}

TEST(UnstableSet, UnionOfTruthAndEstimateExcursions) {
  const auto ref = constant_series({0.0, 0.0, 0.0}, 4);
  auto truth = ref;
  auto est = ref;
  truth[1].z = 0.5;
  est[3].z = -0.5;
  est[2].x = 0.02;
  const UnstableSets sets = unstable_set(truth, est, ref, 0.01);
  EXPECT_EQ(sets.indices[0], (std::vector<std::size_t>{2}));
  EXPECT_TRUE(sets.indices[1].empty());
  EXPECT_EQ(sets.indices[2], (std::vector<std::size_t>{1, 3}));
}

TEST(UnstableSet, RejectsMismatchedLengths) {
  const auto a = constant_series({}, 3);
  const auto b = constant_series({}, 4);
  EXPECT_THROW((void)unstable_set(a, b, a, 0.01), ConfigError);
}

TEST(ComponentErrors, ConstantOffset) {
  const auto truth = constant_series({0.1, 0.2, 0.3}, 25);
  const double delta = 0.125;
  const auto est = shifted(truth, 0.0, 0.0, delta);
  const UnstableSets sets = unstable_set(truth, est, truth, 0.01);
  const ComponentErrors ce = component_errors(truth, est, sets);
  EXPECT_EQ(ce.ez, delta * delta);
  EXPECT_EQ(ce.ex, 0.0);
  EXPECT_EQ(ce.ey, 0.0);
  EXPECT_TRUE(ce.stable[0]);
  EXPECT_TRUE(ce.stable[1]);
  EXPECT_FALSE(ce.stable[2]);
}

TEST(ComponentErrors, PerfectEstimation) {
  const auto truth = constant_series({0.5, 0.0, -0.5}, 10);
  const auto ref = constant_series({0.0, 0.0, 0.0}, 10);
  const UnstableSets sets = unstable_set(truth, truth, ref, 0.01);
  const ComponentErrors ce = component_errors(truth, truth, sets);
  EXPECT_EQ(ce.ex, 0.0);
  EXPECT_EQ(ce.ey, 0.0);
  EXPECT_EQ(ce.ez, 0.0);
  EXPECT_FALSE(ce.stable[0]);
}

TEST(ComponentErrors, TwoPointSet) {
  const auto truth = constant_series({0.0, 0.0, 0.0}, 5);
  auto est = truth;
  est[1].y = 0.3;
  est[4].y = -0.4;
  const UnstableSets sets = unstable_set(truth, est, truth, 0.01);
  ASSERT_EQ(sets.indices[1].size(), 2u);
  const ComponentErrors ce = component_errors(truth, est, sets);
  EXPECT_DOUBLE_EQ(ce.ey, (0.3 * 0.3 + 0.4 * 0.4) / 2.0);
}

TEST(ComponentErrors, QuadraticInDeviation) {
  std::vector<Bloch> truth;
  std::vector<Bloch> est;
  for (int i = 0; i < 30; ++i) {
    truth.push_back({0.01 * i, -0.02 * i, 0.03 * i});
    est.push_back({0.02 * i, 0.01 * i, 0.0});
  }
  const UnstableSets sets = unstable_set(truth, est, constant_series({}, 30), 0.01);
  const ComponentErrors base = component_errors(truth, est, sets);
  const double c = 3.0;
  std::vector<Bloch> scaled = est;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    scaled[i].x = truth[i].x + c * (est[i].x - truth[i].x);
    scaled[i].y = truth[i].y + c * (est[i].y - truth[i].y);
    scaled[i].z = truth[i].z + c * (est[i].z - truth[i].z);
  }
  const ComponentErrors big = component_errors(truth, scaled, sets);
  EXPECT_NEAR(big.ex, c * c * base.ex, 1e-14);
  EXPECT_NEAR(big.ey, c * c * base.ey, 1e-14);
  EXPECT_NEAR(big.ez, c * c * base.ez, 1e-14);
}

TEST(OverallError, DefaultWeights) {
  const ErrorConfig cfg;
  EXPECT_DOUBLE_EQ(overall_error(0.1, 0.1, 0.1, cfg), 0.1);
  EXPECT_DOUBLE_EQ(overall_error(0.0, 0.0, 0.2, cfg), 0.1);
  EXPECT_DOUBLE_EQ(overall_error(0.2, 0.2, 0.0, cfg), 0.1);
}

TEST(OverallError, WeightIdentity) {
  ErrorConfig cfg;
  cfg.alpha_x = 1.0;
  cfg.alpha_y = 0.0;
  cfg.alpha_z = 0.0;
  EXPECT_EQ(overall_error(0.37, 0.11, 0.93, cfg), 0.37);
  cfg.alpha_x = 0.0;
  cfg.alpha_y = 1.0;
  EXPECT_EQ(overall_error(0.37, 0.11, 0.93, cfg), 0.11);
  cfg.alpha_y = 0.0;
  cfg.alpha_z = 1.0;
  EXPECT_EQ(overall_error(0.37, 0.11, 0.93, cfg), 0.93);
}

TEST(ErrorConfig, Validation) {
  ErrorConfig cfg;
  EXPECT_NO_THROW(validate_error_config(cfg));
  cfg.alpha_x = 0.5;
  EXPECT_THROW(validate_error_config(cfg), ConfigError);
  cfg = ErrorConfig{};
  cfg.eps1 = 0.0;
  EXPECT_THROW(validate_error_config(cfg), ConfigError);
  cfg = ErrorConfig{};
  cfg.alpha_z = -0.5;
  cfg.alpha_x = 1.0;
  EXPECT_THROW(validate_error_config(cfg), ConfigError);
  cfg = ErrorConfig{};
  cfg.n_traj = 0;
  EXPECT_THROW(validate_error_config(cfg), ConfigError);
}

SweepResult synthetic_sweep(std::vector<double> grid, std::vector<double> e) {
  SweepResult s;
  s.param = "gamma_1";
  s.grid = std::move(grid);
  for (double v : e) {
    ErrorReport r;
    r.e = v;
    s.reports.push_back(r);
  }
  return s;
}

TEST(CriticalPoint, LinearInterpolation) {
  const CriticalPoint cp = critical_point(synthetic_sweep({0.05, 0.15}, {0.05, 0.15}), 0.1);
  EXPECT_EQ(cp.status, CriticalPoint::Status::kCrossing);
  EXPECT_DOUBLE_EQ(cp.value, 0.1);
  EXPECT_FALSE(cp.noisy);
}

TEST(CriticalPoint, NoCrossingBelowBound) {
  const CriticalPoint cp = critical_point(synthetic_sweep({1, 2, 3}, {0.01, 0.05, 0.09}), 0.1);
  EXPECT_EQ(cp.status, CriticalPoint::Status::kNoCrossing);
  EXPECT_EQ(to_string(cp), "no crossing");
}

TEST(CriticalPoint, SinglePointGrid) {
  const CriticalPoint cp = critical_point(synthetic_sweep({1.0}, {0.02}), 0.1);
  EXPECT_EQ(cp.status, CriticalPoint::Status::kNoCrossing);
}

TEST(CriticalPoint, NoisyCrossingReturnsFirst) {
  const CriticalPoint cp =
      critical_point(synthetic_sweep({0, 1, 2, 3, 4}, {0.0, 0.2, 0.05, 0.3, 0.4}), 0.1);
  EXPECT_EQ(cp.status, CriticalPoint::Status::kCrossing);
  EXPECT_DOUBLE_EQ(cp.value, 0.5);
  EXPECT_TRUE(cp.noisy);
  EXPECT_EQ(to_string(cp), "crossing (noisy crossing: increase n_traj)");
}

TEST(CriticalPoint, AboveAtStart) {
  const CriticalPoint cp = critical_point(synthetic_sweep({0, 1}, {0.2, 0.3}), 0.1);
  EXPECT_EQ(cp.status, CriticalPoint::Status::kAboveAtStart);
}

TEST(CriticalPoint, BlownUpPointCountsAsAbove) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const CriticalPoint cp = critical_point(synthetic_sweep({0, 1, 2}, {0.01, 0.02, nan}), 0.1);
  EXPECT_EQ(cp.status, CriticalPoint::Status::kCrossing);
  EXPECT_EQ(cp.value, 2.0);
}

TEST(Grid, LinearAndLog) {
  EXPECT_EQ(make_grid(0.0, 1.0, 5, false), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  const std::vector<double> g = make_grid(1.0, 100.0, 3, true);
  EXPECT_DOUBLE_EQ(g[1], 10.0);
  EXPECT_EQ(make_grid(3.0, 3.0, 1, false), (std::vector<double>{3.0}));
  EXPECT_THROW((void)make_grid(1.0, 0.5, 3, false), ConfigError);
  EXPECT_THROW((void)make_grid(0.0, 1.0, 3, true), ConfigError);
}

TEST(Grid, DefaultRanges) {
  const SystemParams p = demo_params();
  const auto g1 = default_grid("gamma_1", p);
  ASSERT_EQ(g1.size(), 20u);
  EXPECT_EQ(g1.front(), 0.0);
  EXPECT_DOUBLE_EQ(g1.back(), 4.0 * 0.005841);
  const auto eta = default_grid("eta", p);
  EXPECT_EQ(eta.front(), 0.1);
  EXPECT_EQ(eta.back(), 1.0);
  const auto kappa = default_grid("kappa", p);
  EXPECT_EQ(kappa.front(), 5.0);
  EXPECT_EQ(kappa.back(), 80.0);
  const auto chi = default_grid("chi", p);
  EXPECT_EQ(chi.front(), 1.0);
  EXPECT_DOUBLE_EQ(chi.back(), 4.0 * 19.57);
  EXPECT_THROW((void)default_grid("dt", p), ConfigError);
}

ErrorConfig small_config(std::int64_t n_traj) {
  ErrorConfig cfg;
  cfg.n_traj = n_traj;
  cfg.horizon = 2.0;
  return cfg;
}

TEST(EvaluatePoint, IdenticalForAnyWorkerCount) {
  SystemParams p = demo_params();
  p.gamma_1 = 0.01;
  RunOptions one;
  one.threads = 1;
  RunOptions four;
  four.threads = 4;
  const ErrorReport a = evaluate_point(p, small_config(24), one);
  const ErrorReport b = evaluate_point(p, small_config(24), four);
  EXPECT_EQ(a.e, b.e);
  EXPECT_EQ(a.ex, b.ex);
  EXPECT_EQ(a.stderr_e, b.stderr_e);
  ASSERT_EQ(a.per_trajectory.size(), 24u);
  for (std::size_t j = 0; j < 24; ++j) EXPECT_EQ(a.per_trajectory[j].e, b.per_trajectory[j].e);
}

TEST(EvaluatePoint, ReportIdentities) {
  const SystemParams p = demo_params();
  const ErrorConfig cfg = small_config(16);
  const ErrorReport r = evaluate_point(p, cfg, RunOptions{});
  EXPECT_EQ(r.n_traj, 16);
  EXPECT_FALSE(r.blow_up);
  EXPECT_GE(r.ex, 0.0);
  EXPECT_GE(r.ey, 0.0);
  EXPECT_GE(r.ez, 0.0);
  EXPECT_NEAR(r.e, overall_error(r.ex, r.ey, r.ez, cfg), 1e-15);
  for (const TrajectoryError& t : r.per_trajectory) {
    EXPECT_EQ(t.e, overall_error(t.ex, t.ey, t.ez, cfg));
  }
}

// An equator state localizes under measurement while the ensemble reference
// keeps <sigma_z> = 0, so nearly the whole horizon is unstable in z.
TEST(EvaluatePoint, LocalizationMakesZUnstable) {
  SystemParams p = demo_params();
  p.eta = 1.0;
  ErrorConfig cfg = small_config(20);
  cfg.horizon = 5.0;
  const ErrorReport r = evaluate_point(p, cfg, RunOptions{});
  EXPECT_GT(r.set_measure[2], 0.9 * cfg.horizon);
}

TEST(ParameterSweep, SinglePointHasNoCrossing) {
  const std::vector<double> grid{0.0};
  const SweepResult s =
      parameter_sweep(demo_params(), "gamma_1", grid, small_config(8), RunOptions{});
  ASSERT_EQ(s.reports.size(), 1u);
  EXPECT_EQ(critical_point(s, 1.0).status, CriticalPoint::Status::kNoCrossing);
}

TEST(ParameterSweep, RejectsBadInput) {
  const std::vector<double> grid{0.2, 0.1};
  EXPECT_THROW(
      (void)parameter_sweep(demo_params(), "gamma_1", grid, small_config(2), RunOptions{}),
      ConfigError);
  const std::vector<double> ok{0.1};
  EXPECT_THROW((void)parameter_sweep(demo_params(), "t_m", ok, small_config(2), RunOptions{}),
               ConfigError);
}

TEST(ParameterSweep, CommonNoiseAcrossGridPoints) {
  const std::vector<double> grid{0.0, 0.01};
  const SweepResult s =
      parameter_sweep(demo_params(), "gamma_1", grid, small_config(4), RunOptions{});
  ErrorConfig cfg = small_config(4);
  SystemParams p = demo_params();
  p.gamma_1 = 0.01;
  EXPECT_EQ(s.reports[1].e, evaluate_point(p, cfg, RunOptions{}).e);
}

TEST(RefineCriticalPoint, AddsFiveInteriorPoints) {
  SystemParams base = demo_params();
  ErrorConfig cfg = small_config(8);
  const std::vector<double> grid{0.0, 0.02};
  SweepResult s = parameter_sweep(base, "gamma_1", grid, cfg, RunOptions{});
  const double bound = 0.5 * (s.reports[0].e + s.reports[1].e);
  ASSERT_LT(s.reports[0].e, s.reports[1].e);
  const CriticalPoint cp = refine_critical_point(base, s, cfg, RunOptions{}, bound);
  ASSERT_EQ(s.grid.size(), 7u);
  for (std::size_t i = 1; i < s.grid.size(); ++i) EXPECT_GT(s.grid[i], s.grid[i - 1]);
  EXPECT_EQ(cp.status, CriticalPoint::Status::kCrossing);
  EXPECT_GT(cp.value, 0.0);
  EXPECT_LT(cp.value, 0.02);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(ParallelFor, RethrowsLowestIndexFailure) {
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error("task " + std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_EQ(std::string(e.what()), "task 17");
  }
}

}  // namespace
}  // namespace qbayes
