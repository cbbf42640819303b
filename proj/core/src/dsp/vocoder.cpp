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

#include "revcor/dsp/vocoder.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "dsp/fft.hpp"
#include "revcor/error.hpp"

namespace revcor::dsp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Zero crossings of the interpolation kernel on each side at full band.
constexpr double kSincZeros = 16.0;

double wrap_phase(double x) { return x - kTwoPi * std::round(x / kTwoPi); }

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// Piecewise-linear integral of a positive local rate over input sample
// positions: forward(x) is where input position x lands on the mapped
// timeline. Rates at the ends are held for extrapolation.
class TimeMap {
 public:
  template <class Rate>
  TimeMap(std::size_t n, int sample_rate, Rate rate) : cum_(n + 1, 0.0) {
    double prev = rate(0.0);
    first_rate_ = prev;
    for (std::size_t i = 1; i <= n; ++i) {
      const double cur = rate(static_cast<double>(i) / sample_rate);
      cum_[i] = cum_[i - 1] + 0.5 * (prev + cur);
      prev = cur;
    }
    last_rate_ = prev;
  }

  double total() const noexcept { return cum_.back(); }

  double forward(double x) const noexcept {
    const double n = static_cast<double>(cum_.size() - 1);
    if (x <= 0.0) return x * first_rate_;
    if (x >= n) return total() + (x - n) * last_rate_;
    const auto i = static_cast<std::size_t>(x);
    return cum_[i] + (x - static_cast<double>(i)) * (cum_[i + 1] - cum_[i]);
  }

  double inverse(double y) const noexcept {
    const double n = static_cast<double>(cum_.size() - 1);
    if (y <= 0.0) return y / first_rate_;
    if (y >= total()) return n + (y - total()) / last_rate_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), y);
    const auto i = static_cast<std::size_t>(it - cum_.begin()) - 1;
    return static_cast<double>(i) + (y - cum_[i]) / (cum_[i + 1] - cum_[i]);
  }

 private:
  std::vector<double> cum_;
  double first_rate_ = 1.0;
  double last_rate_ = 1.0;
};

// Per-bin phase state of the vocoder, with identity phase locking: peak
// bins are advanced by their measured instantaneous frequency and the
// bins in each peak's region keep their analysis phase offset to it.
class PhaseTracker {
 public:
  PhaseTracker(std::size_t window_size, std::size_t bins)
      : window_size_(static_cast<double>(window_size)),
        prev_phase_(bins),
        synth_(bins),
        next_(bins) {}

  std::span<const double> advance(std::span<const double> mag,
                                  std::span<const double> phase,
                                  long analysis_hop, long synthesis_hop) {
    const std::size_t bins = mag.size();
    if (!started_) {
      std::copy(phase.begin(), phase.end(), synth_.begin());
      std::copy(phase.begin(), phase.end(), prev_phase_.begin());
      started_ = true;
      return synth_;
    }

    peaks_.clear();
    for (std::size_t k = 0; k < bins; ++k) {
      const double left = k > 0 ? mag[k - 1] : -1.0;
      const double right = k + 1 < bins ? mag[k + 1] : -1.0;
      if (mag[k] > left && mag[k] >= right) peaks_.push_back(k);
    }

    auto propagate = [&](std::size_t k) {
      const double omega = kTwoPi * static_cast<double>(k) / window_size_;
      double inst = omega;
      if (analysis_hop != 0) {
        const double ha = static_cast<double>(analysis_hop);
        inst += wrap_phase(phase[k] - prev_phase_[k] - omega * ha) / ha;
      }
      return wrap_phase(synth_[k] + inst * static_cast<double>(synthesis_hop));
    };

    if (peaks_.empty()) {
      for (std::size_t k = 0; k < bins; ++k) next_[k] = propagate(k);
    } else {
      for (std::size_t i = 0; i < peaks_.size(); ++i) {
        const std::size_t p = peaks_[i];
        const std::size_t lo = i == 0 ? 0 : (peaks_[i - 1] + p) / 2 + 1;
        const std::size_t hi =
            i + 1 == peaks_.size() ? bins - 1 : (p + peaks_[i + 1]) / 2;
        next_[p] = propagate(p);
        for (std::size_t k = lo; k <= hi; ++k) {
          if (k != p) next_[k] = next_[p] + phase[k] - phase[p];
        }
      }
    }
    std::swap(synth_, next_);
    std::copy(phase.begin(), phase.end(), prev_phase_.begin());
    return synth_;
  }

 private:
  double window_size_;
  bool started_ = false;
  std::vector<double> prev_phase_;
  std::vector<double> synth_;
  std::vector<double> next_;
  std::vector<std::size_t> peaks_;
};

// Variable-rate phase vocoder. Synthesis frames sit at a fixed hop on the
// mapped timeline; each one is analysed at the input position that maps
// onto its centre. Input is treated as zero outside its bounds.
std::vector<double> vocode(std::span<const double> in, const TimeMap& map,
                           const StftConfig& cfg, std::size_t out_len) {
  const std::size_t n = cfg.window_size;
  const std::size_t bins = cfg.bins();
  const long half = static_cast<long>(n / 2);
  const long hop = static_cast<long>(cfg.hop);
  const long len = static_cast<long>(in.size());
  const auto w = cfg.window_samples();
  const double scale = 1.0 / (static_cast<double>(n) * cfg.overlap_gain());
  const detail::RealFft fft(n);

  const long first = -ceil_div(half, hop);
  const long last = ceil_div(static_cast<long>(out_len) + half, hop);
  const long offset = half - first * hop;
  std::vector<double> acc(static_cast<std::size_t>((last - first) * hop) + n + 1, 0.0);

  std::vector<double> frame(n), mag(bins), phase(bins);
  std::vector<std::complex<double>> spec(bins);
  PhaseTracker tracker(n, bins);
  long prev_start = 0;

  for (long m = first; m <= last; ++m) {
    const double centre = map.inverse(static_cast<double>(m * hop));
    const long start = std::lround(centre) - half;
    for (std::size_t i = 0; i < n; ++i) {
      const long idx = start + static_cast<long>(i);
      frame[i] = idx >= 0 && idx < len ? in[static_cast<std::size_t>(idx)] * w[i] : 0.0;
    }
    fft.forward(frame, spec);
    for (std::size_t k = 0; k < bins; ++k) {
      mag[k] = std::abs(spec[k]);
      phase[k] = std::arg(spec[k]);
    }
    const auto synth = tracker.advance(mag, phase, start - prev_start, hop);
    prev_start = start;
    for (std::size_t k = 0; k < bins; ++k) spec[k] = std::polar(mag[k], synth[k]);
    fft.inverse(spec, frame);

    double* dst = acc.data() + (m * hop - half + offset);
    for (std::size_t i = 0; i < n; ++i) dst[i] += frame[i] * w[i] * scale;
  }
  return {acc.begin() + offset, acc.begin() + offset + static_cast<long>(out_len)};
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Blackman-windowed sinc read of src at a fractional position, with the
// cutoff lowered to `cutoff` (fraction of Nyquist) when decimating.
double interpolate_at(std::span<const double> src, double pos, double cutoff) {
  const double half_width = kSincZeros / cutoff;
  const long lo = static_cast<long>(std::ceil(pos - half_width));
  const long hi = static_cast<long>(std::floor(pos + half_width));
  const long len = static_cast<long>(src.size());
  double acc = 0.0;
  for (long i = std::max(lo, 0L); i <= std::min(hi, len - 1); ++i) {
    const double u = static_cast<double>(i) - pos;
    const double r = u / half_width;
    const double win = 0.42 + 0.5 * std::cos(std::numbers::pi * r) +
                       0.08 * std::cos(2.0 * std::numbers::pi * r);
    acc += src[static_cast<std::size_t>(i)] * cutoff * sinc(cutoff * u) * win;
  }
  return acc;
}

void check_stretch(const Curve& stretch) {
  if (stretch.max_abs() > kMaxStretchLog2) {
    throw Error(Errc::out_of_range, "stretch out of supported range");
  }
}

void check_shift(const Curve& cents) {
  if (cents.max_abs() > kMaxShiftCents) {
    throw Error(Errc::out_of_range, "shift out of supported range");
  }
}

}  // namespace

Rendered apply_transform(const AudioBuffer& audio, const Curve& stretch_log2,
                         const Curve& cents, const StftConfig& cfg) {
  cfg.validate();
  check_audio(audio);
  check_stretch(stretch_log2);
  check_shift(cents);
  if (audio.empty()) throw Error(Errc::invalid_argument, "input too short");

  const int sr = audio.sample_rate;
  const TimeMap vocoder_map(audio.size(), sr, [&](double t) {
    return std::exp2(stretch_log2(t) + cents(t) / 1200.0);
  });
  const auto intermediate_len =
      static_cast<std::size_t>(std::lround(vocoder_map.total()));
  auto intermediate = vocode(audio.samples, vocoder_map, cfg, intermediate_len);

  Rendered out;
  out.audio.sample_rate = sr;
  if (cents.is_zero()) {
    out.audio.samples = std::move(intermediate);
  } else {
    // Read the vocoded signal back at 2^(cents/1200) samples per output
    // sample, which restores the stretch-only durations and scales pitch.
    const TimeMap output_map(audio.size(), sr,
                             [&](double t) { return std::exp2(stretch_log2(t)); });
    const auto out_len = static_cast<std::size_t>(std::lround(output_map.total()));
    out.audio.samples.resize(out_len);
    for (std::size_t j = 0; j < out_len; ++j) {
      const double x = output_map.inverse(static_cast<double>(j));
      const double pos = vocoder_map.forward(x);
      const double ratio = std::exp2(cents(x / sr) / 1200.0);
      out.audio.samples[j] =
          interpolate_at(intermediate, pos, std::min(1.0, 1.0 / ratio));
    }
  }
  out.clipped_samples = hard_clip(out.audio.samples);
  return out;
}

Rendered time_stretch(const AudioBuffer& audio, const Curve& stretch_log2,
                      const StftConfig& cfg) {
  check_stretch(stretch_log2);
  return apply_transform(audio, stretch_log2, Curve{}, cfg);
}

Rendered pitch_shift(const AudioBuffer& audio, const Curve& cents,
                     const StftConfig& cfg) {
  check_shift(cents);
  return apply_transform(audio, Curve{}, cents, cfg);
}

}  // namespace revcor::dsp
