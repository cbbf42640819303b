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
#include <span>
#include <vector>

namespace revcor::dsp {

// Mono waveform. Samples are nominally in [-1, 1]; rendering operations
// hard-clip their output and report how many samples were touched.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 44100;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Output of an operation that renders new audio.
struct Rendered {
  AudioBuffer audio;
  std::size_t clipped_samples = 0;
};

// Pins samples to [-1, 1] and returns the number of samples changed.
std::size_t hard_clip(std::span<double> samples) noexcept;

// Throws unless every sample is finite and the rate is positive.
void check_audio(const AudioBuffer& audio);

}  // namespace revcor::dsp
