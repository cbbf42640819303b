// Copyright 2026 The revcor Authors
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
#include <random>

namespace revcor {

// Reproducible random stream: std::mt19937_64 (whose output sequence is
// fixed by the standard) feeding a Marsaglia polar Gaussian transform that
// is implemented here rather than taken from <random>, so draws are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double gaussian();
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// SplitMix64 finaliser; used to derive independent session-level streams.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stream-splitting rule: trial i of a session draws from master_seed XOR i.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed,
                                   std::uint64_t trial_index) noexcept {
  return master_seed ^ trial_index;
}

}  // namespace revcor
