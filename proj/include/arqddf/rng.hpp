// Copyright 2026 The arqddf Authors
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

// Deterministic per-trial random substreams. Every (seed, trial index) pair
// maps to an independent splitmix64 stream, so estimates are bit-identical
// across reruns, shard splits, and thread counts. Gaussians come from an
// explicit Box-Muller transform rather than std::normal_distribution, whose
// output sequence is implementation-defined.

#include <cmath>
#include <complex>
#include <cstdint>

namespace arqddf::mc {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial_index) {
    std::uint64_t s = seed;
    const std::uint64_t base = splitmix64_next(s);
    state_ = base ^ (0xd1342543de82ef95ull * (trial_index + 1));
    (void)splitmix64_next(state_);  // decorrelate nearby trial indices
  }

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  /// Uniform on (0, 1]; never returns 0, safe under log().
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal, Box-Muller, pair-cached (fixed consumption of two
  /// uniforms per pair).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double angle = 6.283185307179586476925286766559 * uniform();
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

  /// Circularly-symmetric complex Gaussian with unit variance (E|g|^2 = 1).
  std::complex<double> complex_gain() {
    const double re = normal();
    const double im = normal();
    return {re * 0.7071067811865475244, im * 0.7071067811865475244};
  }

 private:
  std::uint64_t state_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace arqddf::mc
