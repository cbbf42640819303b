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

#include <complex>
#include <cstddef>
#include <vector>

#include "revcor/dsp/audio.hpp"

namespace revcor::dsp {

enum class WindowKind { hann, sqrt_hann };

// Analysis and synthesis use the same window. validate() rejects
// configurations whose squared-window overlap-add is not constant.
struct StftConfig {
  std::size_t window_size = 2048;
  std::size_t hop = 512;
  WindowKind window = WindowKind::hann;

  void validate() const;
  std::size_t bins() const noexcept { return window_size / 2 + 1; }
  std::vector<double> window_samples() const;
  // Sum of analysis*synthesis windows across overlapping frames.
  double overlap_gain() const;
};

using SpectralFrame = std::vector<std::complex<double>>;

struct Spectrogram {
  std::vector<SpectralFrame> frames;
  int sample_rate = 44100;
};

// Frames start at sample 0 and advance by hop; no padding is applied, so
// the frame count is floor((len - window) / hop) + 1.
Spectrogram stft(const AudioBuffer& audio, const StftConfig& cfg = {});

// Weighted overlap-add resynthesis. Output length is
// (frames - 1) * hop + window_size, or zero for an empty spectrogram.
AudioBuffer istft(const Spectrogram& spec, const StftConfig& cfg = {});

}  // namespace revcor::dsp
