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


#include <benchmark/benchmark.h>

#include <memory>

#include "qbayes/cavity.hpp"
#include "qbayes/estimators.hpp"
#include "qbayes/noise.hpp"
#include "qbayes/trajectory.hpp"

namespace {

using namespace qbayes;

void BM_SmeStep(benchmark::State& state) {
  const SystemParams p = demo_params();
  const DerivedRates rates = derived_rates(steady_state_amplitudes(p), p);
  QubitState rho = QubitState::plus_x();
  double xi = 0.3;
  for (auto _ : state) {
    rho = sme_step(rho, rates, p, xi);
    xi = -xi;
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_SmeStep);

void BM_BayesWindow(benchmark::State& state) {
  const SystemParams p = demo_params();
  const CavityTrack track = CavityTrack::integrate(p);
  const TrajectoryResult r = simulate_trajectory(p, QubitState::plus_x(), NoiseStream(1, 0));
  const QubitState prior = QubitState::plus_x();
  std::int64_t window = 0;
  for (auto _ : state) {
    const BayesCorrections c = bayes_corrections(window, track, r.record.samples, p);
    const DiagonalPosterior d = bayes_diagonal_update(prior, r.record.window_means[window],
                                                      0.1, -0.1, p.t_m);
    benchmark::DoNotOptimize(bayes_offdiagonal_raw(prior, d.p_g, d.p_e, d.norm, p.t_m, p));
    benchmark::DoNotOptimize(c);
    window = (window + 1) % p.window_count();
  }
}
BENCHMARK(BM_BayesWindow);

void BM_Trajectory(benchmark::State& state) {
  SystemParams p = demo_params();
  p.t_total = static_cast<double>(state.range(0));
  const auto track = std::make_shared<const CavityTrack>(CavityTrack::integrate(p));
  std::uint64_t j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_trajectory(p, QubitState::plus_x(), NoiseStream(1, j++), track));
  }
  state.SetItemsProcessed(state.iterations() * p.step_count());
}
BENCHMARK(BM_Trajectory)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_TrajectoryWithEstimators(benchmark::State& state) {
  const SystemParams p = demo_params();
  const auto track = std::make_shared<const CavityTrack>(CavityTrack::integrate(p));
  const QubitState rho0 = QubitState::plus_x();
  std::uint64_t j = 0;
  for (auto _ : state) {
    const TrajectoryResult r = simulate_trajectory(p, rho0, NoiseStream(1, j++), track);
    benchmark::DoNotOptimize(bayes_estimate(r.record, *track, p, rho0));
    benchmark::DoNotOptimize(filter_estimate(r.record, *track, p, rho0));
  }
}
BENCHMARK(BM_TrajectoryWithEstimators)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
