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

#include "qbayes/qubit_state.hpp"

#include <algorithm>
#include <cmath>

namespace qbayes {

double QubitState::min_eigenvalue() const {
  const double half_trace = 0.5 * (rho_gg + rho_ee);
  const double half_gap = 0.5 * (rho_ee - rho_gg);
  return half_trace - std::sqrt(half_gap * half_gap + std::norm(rho_ge));
}

double QubitState::purity() const {
  return rho_gg * rho_gg + rho_ee * rho_ee + 2.0 * std::norm(rho_ge);
}

Bloch bloch_of(const QubitState& rho) {
  return {2.0 * rho.rho_ge.real(), -2.0 * rho.rho_ge.imag(), rho.rho_ee - rho.rho_gg};
}

QubitState state_of_bloch(const Bloch& b) {
  return {0.5 * (1.0 - b.z), 0.5 * (1.0 + b.z), cplx(0.5 * b.x, -0.5 * b.y)};
}

bool is_physical(const QubitState& rho) {
  return std::abs(rho.trace() - 1.0) <= kTraceTolerance &&
         rho.min_eigenvalue() >= -kPositivityTolerance;
}

QubitState normalize_and_clamp(QubitState rho) {
  rho.rho_gg = std::max(rho.rho_gg, 0.0);
  rho.rho_ee = std::max(rho.rho_ee, 0.0);
  const double tr = rho.rho_gg + rho.rho_ee;
  rho.rho_gg /= tr;
  rho.rho_ee = 1.0 - rho.rho_gg;
  rho.rho_ge /= tr;
  const double bound = rho.rho_gg * rho.rho_ee;
  const double c2 = std::norm(rho.rho_ge);
  if (c2 > bound) rho.rho_ge *= std::sqrt(bound / c2);
  return rho;
}

double bloch_distance(const QubitState& a, const QubitState& b) {
  const Bloch u = bloch_of(a);
  const Bloch v = bloch_of(b);
  return std::hypot(u.x - v.x, u.y - v.y, u.z - v.z);
}

}  // namespace qbayes
