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

#include "revcor/profile/profile.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "revcor/error.hpp"
#include "revcor/profile/random.hpp"
#include "support/oracles.hpp"

namespace revcor::profile {
namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Kolmogorov-Smirnov distance to N(0, sigma) saturated at +/-limit, whose
// CDF has atoms of mass Phi(-limit/sigma) at both bounds.
double ks_saturated(std::vector<double> x, double sigma, double limit) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  const auto ref_left = [&](double v) { return v <= -limit ? 0.0 : normal_cdf(v / sigma); };
  const auto ref_right = [&](double v) { return v >= limit ? 1.0 : normal_cdf(v / sigma); };
  double d = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - ref_left(x[i])));
    d = std::max(d, std::abs(static_cast<double>(j) / n - ref_right(x[i])));
    i = j;
  }
  return d;
}

SamplingSpec wide(std::size_t n, std::uint64_t seed) {
  SamplingSpec spec;
  spec.num_windows = n;
  spec.window_duration_s = 1e-3;
  spec.seed = seed;
  return spec;
}

TEST(SegmentCount, WordsAndPhrases) {
  EXPECT_EQ(segment_count_for(TaskKind::word), 4u);
  EXPECT_EQ(segment_count_for(TaskKind::phrase), 13u);
  EXPECT_EQ(task_kind_from_string("phrase"), TaskKind::phrase);
  EXPECT_EQ(to_string(TaskKind::word), "word");
  EXPECT_THROW(task_kind_from_string("sentence"), Error);
}

TEST(SamplingSpec, PresetsAndValidation) {
  const auto word = SamplingSpec::for_task(TaskKind::word, 9);
  EXPECT_EQ(word.num_windows, 4u);
  EXPECT_EQ(word.seed, 9u);
  EXPECT_DOUBLE_EQ(word.pitch_limit(), 200.0);
  EXPECT_DOUBLE_EQ(word.rate_limit(), 1.0);
  EXPECT_EQ(SamplingSpec::for_task(TaskKind::phrase).num_windows, 13u);
  const auto pct = SamplingSpec::duration_percent_preset(TaskKind::word);
  EXPECT_DOUBLE_EQ(std::exp2(pct.rate_sigma_log2), 1.01);

  for (auto mutate : {+[](SamplingSpec& s) { s.num_windows = 0; },
                      +[](SamplingSpec& s) { s.pitch_sigma_cents = 0.0; },
                      +[](SamplingSpec& s) { s.rate_sigma_log2 = -1.0; },
                      +[](SamplingSpec& s) { s.clip_sigmas = 0.0; },
                      +[](SamplingSpec& s) { s.window_duration_s = 0.0; }}) {
    SamplingSpec s;
    mutate(s);
    EXPECT_THROW(s.validate(), Error);
    EXPECT_THROW(sample_profile(s), Error);
  }
}

TEST(SampleProfile, BreakpointLayout) {
  for (auto kind : {TaskKind::word, TaskKind::phrase}) {
    const auto p = sample_profile(SamplingSpec::for_task(kind, 3));
    const auto n = segment_count_for(kind);
    ASSERT_EQ(p.pitch_points.size(), n);
    ASSERT_EQ(p.stretch_points.size(), n);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_DOUBLE_EQ(p.pitch_points[k].time_s, (static_cast<double>(k) + 0.5) * 0.1);
      EXPECT_DOUBLE_EQ(p.stretch_points[k].time_s, p.pitch_points[k].time_s);
    }
    EXPECT_EQ(p.seed, 3u);
  }
}

TEST(SampleProfile, Deterministic) {
  const auto spec = SamplingSpec::for_task(TaskKind::phrase, 1234);
  EXPECT_EQ(sample_profile(spec), sample_profile(spec));
  auto other = spec;
  other.seed = 1235;
  EXPECT_NE(sample_profile(spec), sample_profile(other));
}

TEST(SampleProfile, TinySigmaIsNearZero) {
  auto spec = SamplingSpec::for_task(TaskKind::word, 5);
  spec.pitch_sigma_cents = 1e-9;
  spec.rate_sigma_log2 = 1e-9;
  const auto p = sample_profile(spec);
  for (double v : p.pitch_values()) EXPECT_NEAR(v, 0.0, 1e-6);
  for (double v : p.stretch_values()) EXPECT_NEAR(v, 0.0, 1e-6);
}

TEST(SampleProfile, PitchLawAtDefaults) {
  const auto p = sample_profile(wide(100000, 2024));
  const auto v = p.pitch_values();
  double max_abs = 0.0;
  for (double x : v) max_abs = std::max(max_abs, std::abs(x));
  EXPECT_EQ(max_abs, 200.0);
  EXPECT_NEAR(testing::mean_of(v), 0.0, 1.0);
  const double sd = testing::sd_of(v);
  EXPECT_GE(sd, 85.0);
  EXPECT_LE(sd, 100.0);
}

TEST(SampleProfile, KolmogorovSmirnovAgainstSaturatedGaussian) {
  const auto p = sample_profile(wide(100000, 77));
  EXPECT_LE(ks_saturated(p.pitch_values(), 100.0, 200.0), 0.01);
  EXPECT_LE(ks_saturated(p.stretch_values(), 0.5, 1.0), 0.01);
}

TEST(SampleProfile, SaturationOverAMillionDraws) {
  const auto p = sample_profile(wide(500000, 99));
  std::size_t at_pitch_bound = 0, at_rate_bound = 0;
  for (double x : p.pitch_values()) {
    ASSERT_LE(std::abs(x), 200.0);
    at_pitch_bound += std::abs(x) == 200.0 ? 1 : 0;
  }
  for (double x : p.stretch_values()) {
    ASSERT_LE(std::abs(x), 1.0);
    at_rate_bound += std::abs(x) == 1.0 ? 1 : 0;
  }
  // Mass at each bound is 2 * Phi(-2) = 4.55%.
  EXPECT_NEAR(static_cast<double>(at_pitch_bound) / 500000, 0.0455, 0.002);
  EXPECT_NEAR(static_cast<double>(at_rate_bound) / 500000, 0.0455, 0.002);
}

TEST(SampleProfile, TrialProfilesDistinctAcrossSession) {
  std::set<std::vector<double>> seen;
  for (std::uint64_t i = 0; i < 250; ++i) {
    seen.insert(sample_profile(SamplingSpec::for_task(TaskKind::word, revcor::trial_seed(77, i)))
                    .pitch_values());
  }
  EXPECT_EQ(seen.size(), 250u);
}

TransformProfile two_point() {
  TransformProfile p;
  p.pitch_points = {{0.05, 0.0}, {0.15, 100.0}};
  p.stretch_points = {{0.05, -1.0}, {0.15, 0.5}};
  return p;
}

TEST(Interpolate, MidpointBreakpointAndBeyond) {
  const auto p = two_point();
  EXPECT_NEAR(interpolate(p, 0.10).cents, 50.0, 1e-12);
  EXPECT_NEAR(interpolate(p, 0.10).log2_factor, -0.25, 1e-12);
  EXPECT_DOUBLE_EQ(interpolate(p, 0.15).cents, 100.0);
  EXPECT_DOUBLE_EQ(interpolate(p, 0.05).log2_factor, -1.0);
  EXPECT_DOUBLE_EQ(interpolate(p, 0.0).cents, 0.0);
  EXPECT_DOUBLE_EQ(interpolate(p, 3.0).cents, 100.0);
  EXPECT_DOUBLE_EQ(interpolate(p, 3.0).log2_factor, 0.5);
}

// Reference piecewise-linear evaluation written independently of Curve.
double reference_bpf(const std::vector<dsp::Breakpoint>& pts, double t) {
  if (t <= pts.front().time_s) return pts.front().value;
  if (t >= pts.back().time_s) return pts.back().value;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const auto& a = pts[k];
    const auto& b = pts[k + 1];
    if (t >= a.time_s && t <= b.time_s) {
      const double w = (t - a.time_s) / (b.time_s - a.time_s);
      return (1.0 - w) * a.value + w * b.value;
    }
  }
  return 0.0;
}

TEST(Interpolate, MatchesReferenceOnSampledProfiles) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = sample_profile(SamplingSpec::for_task(TaskKind::phrase, seed));
    for (double t = 0.0; t < 1.6; t += 0.0137) {
      const auto v = interpolate(p, t);
      EXPECT_NEAR(v.cents, reference_bpf(p.pitch_points, t), 1e-9);
      EXPECT_NEAR(v.log2_factor, reference_bpf(p.stretch_points, t), 1e-12);
    }
  }
}

}  // namespace
}  // namespace revcor::profile
