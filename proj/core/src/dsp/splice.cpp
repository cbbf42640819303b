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

#include "revcor/dsp/splice.hpp"

#include <algorithm>
#include <cmath>

#include "revcor/error.hpp"

namespace revcor::dsp {

std::size_t next_zero_crossing(const AudioBuffer& audio, std::size_t from) {
  const auto at = [&](std::size_t i) {
    return i < audio.size() ? audio.samples[i] : 0.0;
  };
  for (std::size_t i = from;; ++i) {
    const double s = at(i);
    if (s == 0.0) return i;
    if (i > 0) {
      const double prev = at(i - 1);
      if ((prev < 0.0 && s > 0.0) || (prev > 0.0 && s < 0.0)) return i;
    }
  }
}

Splice insert_target(const AudioBuffer& phrase, const AudioBuffer& word,
                     std::size_t marker, double gap_ms) {
  check_audio(phrase);
  check_audio(word);
  if (phrase.sample_rate != word.sample_rate) {
    throw Error(Errc::invalid_argument, "sample-rate mismatch between phrase and word");
  }
  if (gap_ms < 0.0) throw Error(Errc::invalid_argument, "gap must be non-negative");
  if (marker > phrase.size()) {
    throw Error(Errc::out_of_range, "marker lies beyond the end of the phrase");
  }

  const double sr = phrase.sample_rate;
  const auto target = marker + static_cast<std::size_t>(std::lround(gap_ms * sr / 1000.0));
  const auto tolerance = static_cast<std::size_t>(std::lround(kZeroCrossingSearchMs * sr / 1000.0));
  const std::size_t at = next_zero_crossing(phrase, target);
  if (at - target > tolerance) {
    throw Error(Errc::invalid_argument, "no zero-crossing within 10 ms of the target point");
  }

  Splice out;
  out.insertion_index = at;
  out.audio.sample_rate = phrase.sample_rate;
  out.audio.samples.assign(at + word.size(), 0.0);
  const std::size_t keep = std::min(at, phrase.size());
  std::copy_n(phrase.samples.begin(), keep, out.audio.samples.begin());
  std::copy(word.samples.begin(), word.samples.end(), out.audio.samples.begin() + static_cast<long>(at));
  return out;
}

}  // namespace revcor::dsp
