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

#include "revcor/dsp/f0.hpp"

#include <algorithm>
#include <cmath>

#include "revcor/dsp/curve.hpp"
#include "revcor/dsp/vocoder.hpp"
#include "revcor/error.hpp"

namespace revcor::dsp {
namespace {

// A later autocorrelation peak only wins over an earlier one when the
// earlier one falls below this fraction of the best peak.
constexpr double kOctaveTolerance = 0.9;

}  // namespace

std::size_t F0Track::voiced_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(f0.begin(), f0.end(), [](double f) { return f > 0.0; }));
}

F0Track estimate_f0(const AudioBuffer& audio, double frame_hop_s, F0Range range) {
  check_audio(audio);
  if (audio.empty()) throw Error(Errc::invalid_argument, "empty audio");
  if (!(range.min_hz > 0.0 && range.max_hz > range.min_hz)) {
    throw Error(Errc::invalid_argument, "invalid f0 range");
  }
  if (!(frame_hop_s > 0.0)) throw Error(Errc::invalid_argument, "frame hop must be positive");

  const double sr = audio.sample_rate;
  const auto max_lag = static_cast<std::size_t>(std::ceil(sr / range.min_hz));
  const auto min_lag =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(sr / range.max_hz)));
  const std::size_t window = 2 * max_lag;
  const std::size_t span = window + max_lag + 1;
  if (audio.size() < span) {
    throw Error(Errc::invalid_argument,
                "input too short: need three periods of the lowest f0");
  }
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(frame_hop_s * sr)));

  F0Track track;
  track.frame_hop = static_cast<double>(hop) / sr;
  std::vector<double> r(max_lag + 2, 0.0);

  for (std::size_t start = 0; start + span <= audio.size(); start += hop) {
    const double* x = audio.samples.data() + start;
    track.times.push_back((static_cast<double>(start) + 0.5 * static_cast<double>(span)) / sr);

    double e0 = 0.0;
    for (std::size_t i = 0; i < window; ++i) e0 += x[i] * x[i];
    if (e0 < 1e-12 * static_cast<double>(window)) {
      track.f0.push_back(0.0);
      continue;
    }

    const std::size_t lag_lo = min_lag - 1;
    double e_lag = 0.0;
    for (std::size_t i = 0; i < window; ++i) e_lag += x[i + lag_lo] * x[i + lag_lo];
    for (std::size_t lag = lag_lo; lag <= max_lag + 1; ++lag) {
      if (lag > lag_lo) {
        e_lag += x[lag - 1 + window] * x[lag - 1 + window] - x[lag - 1] * x[lag - 1];
      }
      double c = 0.0;
      for (std::size_t i = 0; i < window; ++i) c += x[i] * x[i + lag];
      const double denom = std::sqrt(e0 * std::max(e_lag, 0.0));
      r[lag] = denom > 0.0 ? c / denom : 0.0;
    }

    double best = -1.0;
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
      if (r[lag] > r[lag - 1] && r[lag] >= r[lag + 1]) best = std::max(best, r[lag]);
    }
    if (best < kVoicingThreshold) {
      track.f0.push_back(0.0);
      continue;
    }
    std::size_t pick = 0;
    for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
      if (r[lag] > r[lag - 1] && r[lag] >= r[lag + 1] &&
          r[lag] >= kOctaveTolerance * best) {
        pick = lag;
        break;
      }
    }
    const double a = r[pick - 1], b = r[pick], c = r[pick + 1];
    const double curvature = a - 2.0 * b + c;
    const double delta = curvature < 0.0 ? 0.5 * (a - c) / curvature : 0.0;
    const double f0 = sr / (static_cast<double>(pick) + delta);
    track.f0.push_back(f0 >= range.min_hz && f0 <= range.max_hz ? f0 : 0.0);
  }
  return track;
}

Rendered flatten_pitch(const AudioBuffer& audio, double target_hz,
                       const StftConfig& cfg) {
  if (!(target_hz > 0.0)) throw Error(Errc::invalid_argument, "target must be positive");
  const auto track = estimate_f0(audio);
  if (track.voiced_count() == 0) {
    throw Error(Errc::invalid_argument, "cannot flatten unvoiced audio");
  }
  std::vector<Breakpoint> points;
  points.reserve(track.times.size());
  for (std::size_t i = 0; i < track.times.size(); ++i) {
    const double f = track.f0[i];
    points.push_back({track.times[i], f > 0.0 ? 1200.0 * std::log2(target_hz / f) : 0.0});
  }
  return pitch_shift(audio, Curve(std::move(points)), cfg);
}

}  // namespace revcor::dsp
