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

#include <gtest/gtest.h>

#include <cmath>

#include "revcor/error.hpp"
#include "support/oracles.hpp"

namespace revcor::dsp {
namespace {

using testing::kRate;

AudioBuffer word() { return testing::sine(330.0, 0.2, 0.3); }

TEST(InsertTarget, SilentTailGivesExactGap) {
  auto phrase = testing::sine(200.0, 0.5, 0.3);
  const std::size_t marker = static_cast<std::size_t>(0.3 * kRate);
  std::fill(phrase.samples.begin() + static_cast<long>(marker), phrase.samples.end(), 0.0);
  const auto w = word();
  const auto s = insert_target(phrase, w, marker, 120.0);
  EXPECT_EQ(s.insertion_index, marker + static_cast<std::size_t>(std::lround(0.12 * kRate)));
  EXPECT_EQ(s.audio.size(), s.insertion_index + w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    ASSERT_EQ(s.audio.samples[s.insertion_index + i], w.samples[i]);
  }
  for (std::size_t i = 0; i < s.insertion_index; ++i) {
    ASSERT_EQ(s.audio.samples[i], phrase.samples[i]);
  }
}

TEST(InsertTarget, ZeroGapUsesFirstCrossingAtMarker) {
  const auto phrase = testing::sine(1000.0, 0.5, 0.5);
  const std::size_t marker = 10000;
  const auto s = insert_target(phrase, word(), marker, 0.0);
  EXPECT_EQ(s.insertion_index, next_zero_crossing(phrase, marker));
  EXPECT_GE(s.insertion_index, marker);
}

TEST(InsertTarget, SineTailWithinHalfPeriod) {
  const auto phrase = testing::sine(1000.0, 0.6, 0.5);
  const std::size_t marker = static_cast<std::size_t>(0.25 * kRate);
  const auto s = insert_target(phrase, word(), marker, 120.0);
  const double target = static_cast<double>(marker) + 0.12 * kRate;
  EXPECT_GE(static_cast<double>(s.insertion_index), target - 1.0);
  EXPECT_LE(static_cast<double>(s.insertion_index) - target, 0.0005 * kRate);
  // Scan oracle: nothing between the target and the chosen index is a
  // crossing.
  const std::size_t start = static_cast<std::size_t>(std::lround(target));
  for (std::size_t i = start; i < s.insertion_index; ++i) {
    const bool crossing = phrase.samples[i] == 0.0 ||
                          (i > 0 && std::signbit(phrase.samples[i]) != std::signbit(phrase.samples[i - 1]));
    EXPECT_FALSE(crossing) << i;
  }
}

TEST(InsertTarget, TargetPastEndIsSilence) {
  const auto phrase = testing::sine(200.0, 0.1, 0.3);
  const std::size_t marker = phrase.size() - 100;
  const auto s = insert_target(phrase, word(), marker, 120.0);
  EXPECT_EQ(s.insertion_index, marker + static_cast<std::size_t>(std::lround(0.12 * kRate)));
  for (std::size_t i = phrase.size(); i < s.insertion_index; ++i) {
    ASSERT_EQ(s.audio.samples[i], 0.0);
  }
}

TEST(InsertTarget, Errors) {
  const auto phrase = testing::sine(200.0, 0.5, 0.3);
  auto w = word();
  w.sample_rate = 48000;
  EXPECT_THROW(insert_target(phrase, w, 100, 120.0), Error);
  EXPECT_THROW(insert_target(phrase, word(), phrase.size() + 1, 120.0), Error);

  AudioBuffer dc;
  dc.samples.assign(kRate, 0.25);
  try {
    insert_target(dc, word(), 1000, 120.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "no zero-crossing within 10 ms of the target point");
  }
}

TEST(NextZeroCrossing, ExactZeroAndSignChange) {
  AudioBuffer a;
  a.samples = {0.3, 0.2, 0.0, 0.1, 0.2, -0.1};
  EXPECT_EQ(next_zero_crossing(a, 0), 2u);
  EXPECT_EQ(next_zero_crossing(a, 3), 5u);
}

}  // namespace
}  // namespace revcor::dsp
