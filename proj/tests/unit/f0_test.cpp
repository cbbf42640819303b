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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "revcor/error.hpp"
#include "support/oracles.hpp"

namespace revcor::dsp {
namespace {

std::vector<double> voiced(const F0Track& track) {
  std::vector<double> out;
  for (double f : track.f0) {
    if (f > 0.0) out.push_back(f);
  }
  return out;
}

TEST(EstimateF0, PureTone) {
  const auto track = estimate_f0(testing::sine(220.0, 0.5));
  const auto v = voiced(track);
  ASSERT_GT(v.size(), track.f0.size() * 9 / 10);
  for (double f : v) EXPECT_NEAR(f, 220.0, 1.0);
}

TEST(EstimateF0, TrackInvariants) {
  const auto track = estimate_f0(testing::glide(80.0, 400.0, 1.0, 5));
  ASSERT_EQ(track.times.size(), track.f0.size());
  for (std::size_t i = 1; i < track.times.size(); ++i) {
    EXPECT_GT(track.times[i], track.times[i - 1]);
  }
  for (double f : track.f0) EXPECT_TRUE(f == 0.0 || (f >= 50.0 && f <= 600.0)) << f;
  EXPECT_DOUBLE_EQ(track.frame_hop, 0.01);
}

TEST(EstimateF0, SilenceIsUnvoiced) {
  AudioBuffer a;
  a.samples.assign(22050, 0.0);
  const auto track = estimate_f0(a);
  EXPECT_FALSE(track.f0.empty());
  EXPECT_EQ(track.voiced_count(), 0u);
}

TEST(EstimateF0, NoiseIsMostlyUnvoiced) {
  const auto track = estimate_f0(testing::white_noise(0.5, 9));
  EXPECT_LT(track.voiced_count(), track.f0.size() / 10);
}

TEST(EstimateF0, SawtoothIgnoresHarmonics) {
  const auto v = voiced(estimate_f0(testing::sawtooth(150.0, 0.5)));
  ASSERT_FALSE(v.empty());
  for (double f : v) EXPECT_NEAR(f, 150.0, 2.0);
}

TEST(EstimateF0, FollowsGlide) {
  const auto track = estimate_f0(testing::glide(100.0, 180.0, 1.0, 6));
  for (std::size_t i = 0; i < track.f0.size(); ++i) {
    if (track.f0[i] == 0.0) continue;
    const double expected = 100.0 + 80.0 * track.times[i];
    EXPECT_NEAR(track.f0[i], expected, 2.0) << "t=" << track.times[i];
  }
}

TEST(EstimateF0, Errors) {
  EXPECT_THROW(estimate_f0(AudioBuffer{}), Error);
  // Three periods of 50 Hz do not fit.
  EXPECT_THROW(estimate_f0(testing::sine(200.0, 0.03)), Error);
}

double share_within(const F0Track& track, double target_hz, double cents) {
  const auto v = voiced(track);
  if (v.empty()) return 0.0;
  const auto ok = std::count_if(v.begin(), v.end(), [&](double f) {
    return std::abs(testing::cents_between(f, target_hz)) <= cents;
  });
  return static_cast<double>(ok) / static_cast<double>(v.size());
}

TEST(FlattenPitch, SineMovesToTarget) {
  const auto out = flatten_pitch(testing::sine(150.0, 1.0), 120.0);
  const std::size_t lo = out.audio.size() / 4, hi = out.audio.size() * 3 / 4;
  const double f = testing::dominant_frequency(
      std::span<const double>(out.audio.samples.data() + lo, hi - lo), out.audio.sample_rate,
      100.0, 140.0);
  EXPECT_NEAR(testing::cents_between(f, 120.0), 0.0, 25.0);
  EXPECT_NEAR(out.audio.duration_s(), 1.0, 512.0 / 44100.0);
}

TEST(FlattenPitch, TargetIsFixedPoint) {
  const auto out = flatten_pitch(testing::sawtooth(120.0, 0.6), 120.0);
  EXPECT_GE(share_within(estimate_f0(out.audio), 120.0, 25.0), 0.9);
}

TEST(FlattenPitch, GlideBecomesFlat) {
  const auto out = flatten_pitch(testing::glide(100.0, 180.0, 1.0, 6), 120.0);
  const auto track = estimate_f0(out.audio);
  EXPECT_GE(share_within(track, 120.0, 25.0), 0.9);
  std::vector<double> cents;
  for (double f : voiced(track)) cents.push_back(testing::cents_between(f, 120.0));
  EXPECT_LT(testing::sd_of(cents), 10.0);
}

TEST(FlattenPitch, UnvoicedInputIsRejected) {
  AudioBuffer a;
  a.samples.assign(22050, 0.0);
  try {
    flatten_pitch(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "cannot flatten unvoiced audio");
  }
}

}  // namespace
}  // namespace revcor::dsp
