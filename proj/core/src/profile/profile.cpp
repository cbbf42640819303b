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

#include "revcor/profile/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revcor/error.hpp"
#include "revcor/profile/random.hpp"

namespace revcor::profile {

std::size_t segment_count_for(TaskKind kind) noexcept {
  return kind == TaskKind::word ? 4 : 13;
}

std::string_view to_string(TaskKind kind) noexcept {
  return kind == TaskKind::word ? "word" : "phrase";
}

TaskKind task_kind_from_string(std::string_view name) {
  if (name == "word") return TaskKind::word;
  if (name == "phrase") return TaskKind::phrase;
  throw Error(Errc::invalid_argument, "unknown task kind '" + std::string(name) + "'");
}

void SamplingSpec::validate() const {
  if (num_windows < 1) throw Error(Errc::invalid_argument, "num_windows must be >= 1");
  if (!(window_duration_s > 0.0)) {
    throw Error(Errc::invalid_argument, "window duration must be positive");
  }
  if (!(pitch_sigma_cents > 0.0) || !(rate_sigma_log2 > 0.0)) {
    throw Error(Errc::invalid_argument, "sigmas must be positive");
  }
  if (!(clip_sigmas > 0.0)) throw Error(Errc::invalid_argument, "clip_sigmas must be positive");
}

SamplingSpec SamplingSpec::for_task(TaskKind kind, std::uint64_t seed) {
  SamplingSpec spec;
  spec.num_windows = segment_count_for(kind);
  spec.seed = seed;
  return spec;
}

SamplingSpec SamplingSpec::duration_percent_preset(TaskKind kind, std::uint64_t seed) {
  auto spec = for_task(kind, seed);
  spec.rate_sigma_log2 = std::log2(1.01);
  return spec;
}

std::vector<double> TransformProfile::pitch_values() const {
  std::vector<double> v;
  v.reserve(pitch_points.size());
  for (const auto& p : pitch_points) v.push_back(p.value);
  return v;
}

std::vector<double> TransformProfile::stretch_values() const {
  std::vector<double> v;
  v.reserve(stretch_points.size());
  for (const auto& p : stretch_points) v.push_back(p.value);
  return v;
}

TransformProfile sample_profile(const SamplingSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  // Saturation, not rejection: out-of-bound draws are pinned to the bound.
  const auto draw = [&](double sigma, double limit) {
    return std::clamp(sigma * rng.gaussian(), -limit, limit);
  };

  TransformProfile out;
  out.seed = spec.seed;
  out.pitch_points.reserve(spec.num_windows);
  out.stretch_points.reserve(spec.num_windows);
  for (std::size_t k = 0; k < spec.num_windows; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * spec.window_duration_s;
    out.pitch_points.push_back({t, draw(spec.pitch_sigma_cents, spec.pitch_limit())});
  }
  for (std::size_t k = 0; k < spec.num_windows; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * spec.window_duration_s;
    out.stretch_points.push_back({t, draw(spec.rate_sigma_log2, spec.rate_limit())});
  }
  return out;
}

Transform interpolate(const TransformProfile& profile, double t) {
  return {profile.pitch_curve()(t), profile.stretch_curve()(t)};
}

}  // namespace revcor::profile
