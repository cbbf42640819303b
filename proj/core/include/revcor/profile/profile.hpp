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

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "revcor/dsp/curve.hpp"

namespace revcor::profile {

enum class TaskKind { word, phrase };

// Number of 100 ms manipulation windows: 4 for isolated words, 13 for
// carrier phrases.
std::size_t segment_count_for(TaskKind kind) noexcept;
std::string_view to_string(TaskKind kind) noexcept;
TaskKind task_kind_from_string(std::string_view name);

struct SamplingSpec {
  std::size_t num_windows = 4;
  double window_duration_s = 0.1;
  double pitch_sigma_cents = 100.0;
  // Stretch is sampled in log2 units so that the clip bound of two sigma
  // is exactly a doubling or halving of a window's duration.
  double rate_sigma_log2 = 0.5;
  double clip_sigmas = 2.0;
  std::uint64_t seed = 0;

  void validate() const;
  double pitch_limit() const noexcept { return clip_sigmas * pitch_sigma_cents; }
  double rate_limit() const noexcept { return clip_sigmas * rate_sigma_log2; }

  static SamplingSpec for_task(TaskKind kind, std::uint64_t seed = 0);
  // Alternative preset reading the duration sigma as 1% of duration.
  static SamplingSpec duration_percent_preset(TaskKind kind, std::uint64_t seed = 0);
};

// One trial's random manipulation. Breakpoints sit at window centres,
// (k + 0.5) * window_duration_s.
struct TransformProfile {
  std::vector<dsp::Breakpoint> pitch_points;    // cents
  std::vector<dsp::Breakpoint> stretch_points;  // log2 duration factor
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return pitch_points.size(); }
  std::vector<double> pitch_values() const;
  std::vector<double> stretch_values() const;
  dsp::Curve pitch_curve() const { return dsp::Curve(pitch_points); }
  dsp::Curve stretch_curve() const { return dsp::Curve(stretch_points); }

  friend bool operator==(const TransformProfile&, const TransformProfile&) = default;
};

struct Transform {
  double cents = 0.0;
  double log2_factor = 0.0;
};

// Draws num_windows pitch values, then num_windows stretch values, each
// i.i.d. Gaussian and saturated at +/- clip_sigmas * sigma.
TransformProfile sample_profile(const SamplingSpec& spec);

Transform interpolate(const TransformProfile& profile, double t);

}  // namespace revcor::profile
