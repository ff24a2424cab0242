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

#include <array>
#include <cstdint>
#include <span>

namespace qbayes {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// A pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Unit-normal draws W_k indexed by (seed, trajectory, step).
///
/// Step k uses the Philox counter (k / 2 as two 32-bit words, then the
/// trajectory index as two words) under key (seed_lo, seed_hi). The four
/// output words give two 53-bit uniforms that a Box-Muller transform turns
/// into the draws for steps 2m and 2m + 1. Any draw can be regenerated
/// without replaying the ones before it.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t index() const { return index_; }

  [[nodiscard]] double normal(std::uint64_t step) const;

  /// out[i] = normal(first_step + i).
  void fill(std::span<double> out, std::uint64_t first_step = 0) const;

 private:
  [[nodiscard]] std::array<double, 2> pair(std::uint64_t block) const;

  std::uint64_t seed_;
  std::uint64_t index_;
};

}  // namespace qbayes
