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

#include "revcor/dsp/audio.hpp"

#include <cmath>

#include "revcor/error.hpp"

namespace revcor::dsp {

std::size_t hard_clip(std::span<double> samples) noexcept {
  std::size_t clipped = 0;
  for (double& s : samples) {
    if (s > 1.0) {
      s = 1.0;
      ++clipped;
    } else if (s < -1.0) {
      s = -1.0;
      ++clipped;
    }
  }
  return clipped;
}

void check_audio(const AudioBuffer& audio) {
  if (audio.sample_rate <= 0) {
    throw Error(Errc::invalid_argument, "sample rate must be positive");
  }
  for (double s : audio.samples) {
    if (!std::isfinite(s)) {
      throw Error(Errc::invalid_argument, "audio contains non-finite samples");
    }
  }
}

}  // namespace revcor::dsp
