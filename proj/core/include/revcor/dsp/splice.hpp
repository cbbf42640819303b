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

#include "revcor/dsp/audio.hpp"

namespace revcor::dsp {

struct Splice {
  AudioBuffer audio;
  std::size_t insertion_index = 0;
};

// Max distance, in ms, searched past the target point for a zero crossing.
inline constexpr double kZeroCrossingSearchMs = 10.0;

// Truncates phrase at the first zero crossing at or after
// marker + gap_ms and appends word there. marker is the sample index where
// the phrase's last word ends. Samples past the end of the phrase count as
// silence.
Splice insert_target(const AudioBuffer& phrase, const AudioBuffer& word,
                     std::size_t marker, double gap_ms = 120.0);

// Index of the first zero crossing at or after `from`: a sample that is
// exactly zero, or one whose sign differs from its predecessor.
std::size_t next_zero_crossing(const AudioBuffer& audio, std::size_t from);

}  // namespace revcor::dsp
