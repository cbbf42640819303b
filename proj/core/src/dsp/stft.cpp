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

#include "revcor/dsp/stft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "dsp/fft.hpp"
#include "revcor/error.hpp"

namespace revcor::dsp {

std::vector<double> StftConfig::window_samples() const {
  std::vector<double> w(window_size);
  const double n = static_cast<double>(window_size);
  for (std::size_t i = 0; i < window_size; ++i) {
    // Periodic Hann.
    const double hann = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
    w[i] = window == WindowKind::hann ? hann : std::sqrt(hann);
  }
  return w;
}

double StftConfig::overlap_gain() const {
  const auto w = window_samples();
  double sum = 0.0;
  for (std::size_t i = 0; i < window_size; i += hop) sum += w[i] * w[i];
  return sum;
}

void StftConfig::validate() const {
  if (window_size < 4 || !std::has_single_bit(window_size)) {
    throw Error(Errc::invalid_argument, "window size must be a power of two");
  }
  if (hop == 0 || hop > window_size) {
    throw Error(Errc::invalid_argument, "hop must be in (0, window_size]");
  }
  const auto w = window_samples();
  double lo = INFINITY, hi = 0.0;
  for (std::size_t phase = 0; phase < hop; ++phase) {
    double sum = 0.0;
    for (std::size_t i = phase; i < window_size; i += hop) sum += w[i] * w[i];
    lo = std::min(lo, sum);
    hi = std::max(hi, sum);
  }
  if (hi <= 0.0 || (hi - lo) / hi > 1e-6) {
    throw Error(Errc::invalid_argument,
                "window/hop pair does not satisfy constant overlap-add");
  }
}

Spectrogram stft(const AudioBuffer& audio, const StftConfig& cfg) {
  cfg.validate();
  check_audio(audio);
  const std::size_t n = cfg.window_size;
  if (audio.size() < n) throw Error(Errc::invalid_argument, "input too short");

  const auto w = cfg.window_samples();
  const detail::RealFft fft(n);
  const std::size_t count = (audio.size() - n) / cfg.hop + 1;

  Spectrogram spec;
  spec.sample_rate = audio.sample_rate;
  spec.frames.reserve(count);
  std::vector<double> buf(n);
  for (std::size_t f = 0; f < count; ++f) {
    const double* src = audio.samples.data() + f * cfg.hop;
    for (std::size_t i = 0; i < n; ++i) buf[i] = src[i] * w[i];
    SpectralFrame frame(cfg.bins());
    fft.forward(buf, frame);
    spec.frames.push_back(std::move(frame));
  }
  return spec;
}

AudioBuffer istft(const Spectrogram& spec, const StftConfig& cfg) {
  cfg.validate();
  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  if (spec.frames.empty()) return out;

  const std::size_t n = cfg.window_size;
  for (const auto& frame : spec.frames) {
    if (frame.size() != cfg.bins()) {
      throw Error(Errc::invalid_argument,
                  "frame has " + std::to_string(frame.size()) +
                      " bins, config expects " + std::to_string(cfg.bins()));
    }
  }

  const auto w = cfg.window_samples();
  const double scale = 1.0 / (static_cast<double>(n) * cfg.overlap_gain());
  const detail::RealFft fft(n);
  out.samples.assign((spec.frames.size() - 1) * cfg.hop + n, 0.0);
  std::vector<double> buf(n);
  for (std::size_t f = 0; f < spec.frames.size(); ++f) {
    fft.inverse(spec.frames[f], buf);
    double* dst = out.samples.data() + f * cfg.hop;
    for (std::size_t i = 0; i < n; ++i) dst[i] += buf[i] * w[i] * scale;
  }
  return out;
}

}  // namespace revcor::dsp
