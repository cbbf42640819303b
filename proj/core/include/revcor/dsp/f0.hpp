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
#include <vector>

#include "revcor/dsp/audio.hpp"
#include "revcor/dsp/stft.hpp"

namespace revcor::dsp {

struct F0Range {
  double min_hz = 50.0;
  double max_hz = 600.0;
};

// f0 of 0 marks an unvoiced frame. times are frame centres in seconds.
struct F0Track {
  std::vector<double> times;
  std::vector<double> f0;
  double frame_hop = 0.01;

  std::size_t voiced_count() const noexcept;
};

inline constexpr double kVoicingThreshold = 0.3;

// Normalised autocorrelation pitch tracker with parabolic peak
// refinement. Each analysis frame spans three periods of range.min_hz.
F0Track estimate_f0(const AudioBuffer& audio, double frame_hop_s = 0.01,
                    F0Range range = {});

// Shifts every voiced frame to target_hz; unvoiced frames are left at
// their original pitch.
Rendered flatten_pitch(const AudioBuffer& audio, double target_hz = 120.0,
                       const StftConfig& cfg = {});

}  // namespace revcor::dsp
