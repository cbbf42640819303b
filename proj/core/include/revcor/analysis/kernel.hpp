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

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revcor/experiment/session.hpp"

namespace revcor::analysis {

enum class Domain { pitch, rate };
std::string_view to_string(Domain domain) noexcept;

using Labels = std::array<std::string, 2>;

// Per-trial profile values of one session, keyed by trial index.
struct ProfileValues {
  std::vector<double> pitch;    // cents
  std::vector<double> stretch;  // log2 duration factor
};
using ProfileTable = std::map<std::size_t, ProfileValues>;

ProfileTable profile_table(const experiment::Session& session);

struct OptionMeans {
  std::vector<double> pitch_a, pitch_b;
  std::vector<double> rate_a, rate_b;
  std::size_t n_a = 0, n_b = 0;
};

// Average profile of the trials answered with each option. Throws
// "degenerate response set" when an option was never chosen.
OptionMeans per_option_means(const ProfileTable& profiles,
                             std::span<const experiment::ResponseRecord> responses,
                             const Labels& labels);

struct KernelPair {
  std::vector<double> a;
  std::vector<double> b;
};

// Divides both vectors by the RMS of their concatenation, so the
// concatenated result has RMS 1.
KernelPair normalize_kernel_pair(std::span<const double> mean_a, std::span<const double> mean_b);

struct Kernel {
  Domain domain = Domain::pitch;
  std::string option;
  std::string participant_id;
  std::vector<double> values;
};

struct ParticipantKernels {
  std::string participant_id;
  KernelPair pitch;
  KernelPair rate;
  std::size_t n_trials = 0;

  std::vector<Kernel> kernels(const Labels& labels) const;
};

ParticipantKernels compute_kernels(std::string participant_id, const ProfileTable& profiles,
                                   std::span<const experiment::ResponseRecord> responses,
                                   const Labels& labels);

enum class Correction { none, bonferroni };

struct GroupOptions {
  double alpha = 0.05;
  Correction correction = Correction::none;
  // Kernel time axis: segment k is plotted at k * segment_duration_s.
  double segment_duration_s = 0.1;
};

struct SegmentStats {
  double time_s = 0.0;
  double mean_a = 0.0, mean_b = 0.0;
  double ci95_a = 0.0, ci95_b = 0.0;  // half-widths
  double t = 0.0, df = 0.0, p = 1.0;
  bool significant = false;
  bool degenerate_variance = false;
};

struct GroupStats {
  Domain domain = Domain::pitch;
  std::size_t n_participants = 0;
  std::vector<SegmentStats> segments;
};

// Cross-participant means with 95% CIs and a paired t-test of A against B
// at every segment.
GroupStats group_stats(std::span<const ParticipantKernels> participants, Domain domain,
                       const GroupOptions& options = {});

struct BiasReport {
  Labels labels;
  std::array<std::size_t, 2> counts{};
  std::array<double, 2> proportions{};
  std::size_t n_trials = 0;
};

BiasReport bias(std::span<const experiment::ResponseRecord> responses, const Labels& labels);

// mean_a - mean_b per segment, pitch segments followed by rate segments.
std::vector<double> kernel_difference(const GroupStats& pitch, const GroupStats& rate);

}  // namespace revcor::analysis
