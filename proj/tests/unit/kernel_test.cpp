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

#include "revcor/analysis/kernel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "revcor/error.hpp"
#include "support/recovery.hpp"

namespace revcor::analysis {
namespace {

using experiment::ResponseRecord;
using profile::TaskKind;

const Labels kLabels = {"peel", "pill"};

ProfileTable two_trials() {
  return {{0, {{10.0, -20.0}, {0.5, -0.25}}}, {1, {{-30.0, 40.0}, {-1.0, 0.75}}}};
}

TEST(PerOptionMeans, TwoTrials) {
  const std::vector<ResponseRecord> r = {{0, "peel", 0, ""}, {1, "pill", 0, ""}};
  const auto m = per_option_means(two_trials(), r, kLabels);
  EXPECT_EQ(m.pitch_a, (std::vector<double>{10.0, -20.0}));
  EXPECT_EQ(m.pitch_b, (std::vector<double>{-30.0, 40.0}));
  EXPECT_EQ(m.rate_a, (std::vector<double>{0.5, -0.25}));
  EXPECT_EQ(m.rate_b, (std::vector<double>{-1.0, 0.75}));
  EXPECT_EQ(m.n_a, 1u);
  EXPECT_EQ(m.n_b, 1u);
}

TEST(PerOptionMeans, DegenerateResponseSetNamesOption) {
  const std::vector<ResponseRecord> r = {{0, "peel", 0, ""}, {1, "peel", 0, ""}};
  try {
    per_option_means(two_trials(), r, kLabels);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate);
    const std::string what = e.what();
    EXPECT_NE(what.find("degenerate response set"), std::string::npos);
    EXPECT_NE(what.find("pill"), std::string::npos);
  }
}

TEST(PerOptionMeans, UnknownTrialOrLabel) {
  EXPECT_THROW(per_option_means(two_trials(), std::vector<ResponseRecord>{{5, "peel", 0, ""}}, kLabels),
               Error);
  EXPECT_THROW(per_option_means(two_trials(), std::vector<ResponseRecord>{{0, "pal", 0, ""}}, kLabels),
               Error);
}

TEST(PerOptionMeans, RandomResponsesStayNearZero) {
  experiment::SessionOptions opt;
  opt.n_trials = 10000;
  opt.master_seed = 8;
  const auto session = experiment::plan_session(testing::profile_only_stimulus(TaskKind::word), opt);
  std::mt19937_64 gen(3);
  std::vector<ResponseRecord> r;
  for (std::size_t i = 0; i < opt.n_trials; ++i) {
    r.push_back({i, (gen() >> 63) ? "A" : "B", 0, ""});
  }
  const auto m = per_option_means(profile_table(session), r, {"A", "B"});
  const double sp = sim::saturated_gaussian_sd(100.0, 2.0), sr = sim::saturated_gaussian_sd(0.5, 2.0);
  const auto se = [](double sd, std::size_t n) { return sd / std::sqrt(static_cast<double>(n)); };
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_LT(std::abs(m.pitch_a[k]), 3 * se(sp, m.n_a));
    EXPECT_LT(std::abs(m.pitch_b[k]), 3 * se(sp, m.n_b));
    EXPECT_LT(std::abs(m.rate_a[k]), 3 * se(sr, m.n_a));
    EXPECT_LT(std::abs(m.rate_b[k]), 3 * se(sr, m.n_b));
  }
}

TEST(NormalizeKernelPair, SharedRms) {
  const std::vector<double> a = {3.0, 0.0}, b = {0.0, -4.0};
  const auto n = normalize_kernel_pair(a, b);
  EXPECT_NEAR(n.a[0], 1.2, 1e-15);
  EXPECT_EQ(n.a[1], 0.0);
  EXPECT_EQ(n.b[0], 0.0);
  EXPECT_NEAR(n.b[1], -1.6, 1e-15);
}

TEST(NormalizeKernelPair, ScaleInvariantAndUnitRms) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> n01;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> a(13), b(13);
    for (auto& x : a) x = n01(gen) * 50.0;
    for (auto& x : b) x = n01(gen) * 50.0;
    const auto n = normalize_kernel_pair(a, b);
    double ss = 0.0;
    for (double x : n.a) ss += x * x;
    for (double x : n.b) ss += x * x;
    EXPECT_NEAR(std::sqrt(ss / 26.0), 1.0, 1e-12);

    std::vector<double> a7 = a, b7 = b;
    for (auto& x : a7) x *= 7.0;
    for (auto& x : b7) x *= 7.0;
    const auto n7 = normalize_kernel_pair(a7, b7);
    for (std::size_t k = 0; k < 13; ++k) {
      EXPECT_NEAR(n7.a[k], n.a[k], 1e-12);
      EXPECT_NEAR(n7.b[k], n.b[k], 1e-12);
    }
  }
}

TEST(NormalizeKernelPair, Errors) {
  const std::vector<double> z = {0.0, 0.0};
  try {
    normalize_kernel_pair(z, z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "zero kernel");
  }
  EXPECT_THROW(normalize_kernel_pair(z, std::vector<double>{1.0}), Error);
}

TEST(ComputeKernels, ParticipantScaleInvariance) {
  experiment::SessionOptions opt;
  opt.n_trials = 300;
  opt.master_seed = 2;
  const auto session = experiment::plan_session(testing::profile_only_stimulus(TaskKind::phrase), opt);
  std::mt19937_64 gen(4);
  std::vector<ResponseRecord> r;
  for (std::size_t i = 0; i < opt.n_trials; ++i) r.push_back({i, (gen() & 1) ? "A" : "B", 0, ""});
  const auto table = profile_table(session);
  const auto k = compute_kernels("p", table, r, {"A", "B"});
  for (double c : {0.01, 3.0, 250.0}) {
    auto scaled = table;
    for (auto& [idx, v] : scaled) {
      for (double& x : v.pitch) x *= c;
      for (double& x : v.stretch) x *= c;
    }
    const auto ks = compute_kernels("p", scaled, r, {"A", "B"});
    for (std::size_t i = 0; i < 13; ++i) {
      EXPECT_NEAR(ks.pitch.a[i], k.pitch.a[i], 1e-12);
      EXPECT_NEAR(ks.pitch.b[i], k.pitch.b[i], 1e-12);
      EXPECT_NEAR(ks.rate.a[i], k.rate.a[i], 1e-12);
      EXPECT_NEAR(ks.rate.b[i], k.rate.b[i], 1e-12);
    }
  }
  EXPECT_EQ(k.n_trials, 300u);
  const auto list = k.kernels({"A", "B"});
  ASSERT_EQ(list.size(), 4u);
  EXPECT_EQ(list[0].domain, Domain::pitch);
  EXPECT_EQ(list[1].option, "B");
  EXPECT_EQ(list[3].values, k.rate.b);
}

ParticipantKernels constant_kernels(const std::string& id, std::vector<double> a, std::vector<double> b) {
  ParticipantKernels k;
  k.participant_id = id;
  k.pitch = {a, b};
  k.rate = {a, b};
  return k;
}

TEST(GroupStats, IdenticalParticipantsDegenerate) {
  std::vector<ParticipantKernels> group;
  for (int i = 0; i < 5; ++i) group.push_back(constant_kernels("p", {1.0, -1.0}, {1.0, -1.0}));
  const auto g = group_stats(group, Domain::pitch);
  ASSERT_EQ(g.segments.size(), 2u);
  for (const auto& s : g.segments) {
    EXPECT_EQ(s.t, 0.0);
    EXPECT_EQ(s.p, 1.0);
    EXPECT_FALSE(s.significant);
    EXPECT_TRUE(s.degenerate_variance);
    EXPECT_EQ(s.ci95_a, 0.0);
    EXPECT_EQ(s.df, 4.0);
  }
  EXPECT_DOUBLE_EQ(g.segments[1].time_s, 0.1);
}

TEST(GroupStats, FivePairSegmentMatchesPairedT) {
  const std::vector<double> a = {3.1, 2.8, 3.5, 3.0, 2.6}, b = {2.4, 2.0, 3.1, 2.9, 2.2};
  std::vector<ParticipantKernels> group;
  for (std::size_t i = 0; i < 5; ++i) group.push_back(constant_kernels("p", {a[i]}, {b[i]}));
  const auto s = group_stats(group, Domain::rate).segments.at(0);
  EXPECT_NEAR(s.t, 3.867950227321826, 1e-9);
  EXPECT_NEAR(s.p, 0.018024875677587746, 1e-9);
  EXPECT_TRUE(s.significant);
  EXPECT_NEAR(s.mean_a, 3.0, 1e-12);
  EXPECT_NEAR(s.mean_b, 2.52, 1e-12);
}

TEST(GroupStats, BonferroniIsOptIn) {
  // p = 0.018 survives alpha 0.05 but not 0.05 / 4.
  const std::vector<double> a = {3.1, 2.8, 3.5, 3.0, 2.6}, b = {2.4, 2.0, 3.1, 2.9, 2.2};
  std::vector<ParticipantKernels> group;
  for (std::size_t i = 0; i < 5; ++i) {
    group.push_back(constant_kernels("p", {a[i], a[i], a[i], a[i]}, {b[i], b[i], b[i], b[i]}));
  }
  GroupOptions opt;
  EXPECT_TRUE(group_stats(group, Domain::pitch, opt).segments[0].significant);
  opt.correction = Correction::bonferroni;
  EXPECT_FALSE(group_stats(group, Domain::pitch, opt).segments[0].significant);
}

TEST(GroupStats, Errors) {
  std::vector<ParticipantKernels> one = {constant_kernels("p", {1.0}, {2.0})};
  EXPECT_THROW(group_stats(one, Domain::pitch), Error);
  one.push_back(constant_kernels("q", {1.0, 2.0}, {2.0, 1.0}));
  EXPECT_THROW(group_stats(one, Domain::pitch), Error);
}

TEST(GroupStats, SimulatedSegmentZeroTemplate) {
  const auto spec = profile::SamplingSpec::for_task(TaskKind::word);
  const auto o = testing::standardised_observer({1, 0, 0, 0}, {0, 0, 0, 0}, spec);
  std::size_t false_flags = 0, null_segments = 0;
  for (std::uint64_t run = 0; run < 20; ++run) {
    const auto group = testing::simulate_group(o, TaskKind::word, 25, 250, 500 + run * 100);
    const auto pitch = group_stats(group, Domain::pitch);
    const auto rate = group_stats(group, Domain::rate);
    EXPECT_TRUE(pitch.segments[0].significant);
    EXPECT_GT(pitch.segments[0].mean_a, pitch.segments[0].mean_b);
    for (std::size_t k = 1; k < 4; ++k) false_flags += pitch.segments[k].significant ? 1 : 0;
    for (std::size_t k = 0; k < 4; ++k) false_flags += rate.segments[k].significant ? 1 : 0;
    null_segments += 7;
  }
  EXPECT_LE(static_cast<double>(false_flags) / static_cast<double>(null_segments), 0.10);
}

TEST(Bias, Proportions) {
  std::vector<ResponseRecord> r;
  for (std::size_t i = 0; i < 250; ++i) r.push_back({i, i < 130 ? "peel" : "pill", 0, ""});
  const auto b = bias(r, kLabels);
  EXPECT_EQ(b.counts[0], 130u);
  EXPECT_EQ(b.counts[1], 120u);
  EXPECT_EQ(b.proportions[0], 0.52);
  EXPECT_EQ(b.proportions[0] + b.proportions[1], 1.0);
  EXPECT_EQ(b.n_trials, 250u);

  std::vector<ResponseRecord> all_a(10, {0, "peel", 0, ""});
  const auto ba = bias(all_a, kLabels);
  EXPECT_EQ(ba.proportions[0], 1.0);
  EXPECT_EQ(ba.proportions[1], 0.0);

  EXPECT_THROW(bias(std::vector<ResponseRecord>{}, kLabels), Error);
  EXPECT_THROW(bias(std::vector<ResponseRecord>{{0, "x", 0, ""}}, kLabels), Error);
}

}  // namespace
}  // namespace revcor::analysis
