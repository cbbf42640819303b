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

#include "revcor/dsp/audio.hpp"
#include "revcor/dsp/curve.hpp"
#include "revcor/dsp/stft.hpp"

namespace revcor::dsp {

inline constexpr double kMaxStretchLog2 = 2.0;
inline constexpr double kMaxShiftCents = 1200.0;

// Time-varying time stretch. stretch(t) is a log2 duration factor on the
// input timeline: the material around t lasts 2^stretch(t) times as long
// in the output.
Rendered time_stretch(const AudioBuffer& audio, const Curve& stretch_log2,
                      const StftConfig& cfg = {});

// Time-varying pitch shift in cents; duration is preserved.
Rendered pitch_shift(const AudioBuffer& audio, const Curve& cents,
                     const StftConfig& cfg = {});

// Both manipulations, duration first and pitch second, with both curves
// defined on the input timeline. Runs a single vocoder pass followed by a
// band-limited variable-rate resampler.
Rendered apply_transform(const AudioBuffer& audio, const Curve& stretch_log2,
                         const Curve& cents, const StftConfig& cfg = {});

}  // namespace revcor::dsp
