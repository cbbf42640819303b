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

#include <filesystem>
#include <string>

#include "revcor/dsp/wav.hpp"
#include "revcor/experiment/session.hpp"
#include "support/oracles.hpp"

namespace revcor::testing {

// A speech-like harmonic tone with a gentle f0 movement and fade in/out,
// long enough to cover every manipulation window of the task.
inline dsp::AudioBuffer speech_like(double seconds) {
  auto a = glide(130.0, 170.0, seconds, 12, 0.25);
  const std::size_t fade = static_cast<std::size_t>(0.02 * a.sample_rate);
  for (std::size_t i = 0; i < fade && i < a.size(); ++i) {
    const double g = static_cast<double>(i) / static_cast<double>(fade);
    a.samples[i] *= g;
    a.samples[a.size() - 1 - i] *= g;
  }
  return a;
}

inline experiment::StimulusSet make_stimulus(const std::filesystem::path& dir,
                                             profile::TaskKind kind = profile::TaskKind::word) {
  const bool word = kind == profile::TaskKind::word;
  const auto wav = dir / (word ? "word.wav" : "phrase.wav");
  dsp::write_wav(wav, speech_like(word ? 0.45 : 1.4));
  experiment::StimulusSet s;
  s.id = word ? "peel-pill" : "heard-them-say";
  s.base_audio = wav;
  s.kind = kind;
  s.option_labels = {"peel", "pill"};
  s.target_onset_s = word ? 0.0 : 1.1;
  return s;
}

}  // namespace revcor::testing
