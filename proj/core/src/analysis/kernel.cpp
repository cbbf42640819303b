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

#include <fmt/format.h>

#include <cmath>

#include "revcor/analysis/stats.hpp"
#include "revcor/error.hpp"

namespace revcor::analysis {

std::string_view to_string(Domain domain) noexcept {
  return domain == Domain::pitch ? "pitch" : "rate";
}

ProfileTable profile_table(const experiment::Session& session) {
  ProfileTable table;
  for (const auto& t : session.trials) {
    table.emplace(t.trial_index, ProfileValues{t.profile.pitch_values(), t.profile.stretch_values()});
  }
  return table;
}

OptionMeans per_option_means(const ProfileTable& profiles,
                             std::span<const experiment::ResponseRecord> responses,
                             const Labels& labels) {
  if (profiles.empty()) throw Error(Errc::invalid_argument, "empty profile table");
  const std::size_t dim = profiles.begin()->second.pitch.size();

  OptionMeans m;
  m.pitch_a.assign(dim, 0.0);
  m.pitch_b.assign(dim, 0.0);
  m.rate_a.assign(dim, 0.0);
  m.rate_b.assign(dim, 0.0);
  for (const auto& r : responses) {
    const auto it = profiles.find(r.trial_index);
    if (it == profiles.end()) {
      throw Error(Errc::not_found, fmt::format("no profile for trial {}", r.trial_index));
    }
    const auto& p = it->second;
    if (p.pitch.size() != dim || p.stretch.size() != dim) {
      throw Error(Errc::invalid_argument, "profiles differ in dimension");
    }
    const bool is_a = r.choice == labels[0];
    if (!is_a && r.choice != labels[1]) {
      throw Error(Errc::invalid_argument, "response '" + r.choice + "' is not an option label");
    }
    auto& pitch = is_a ? m.pitch_a : m.pitch_b;
    auto& rate = is_a ? m.rate_a : m.rate_b;
    for (std::size_t k = 0; k < dim; ++k) {
      pitch[k] += p.pitch[k];
      rate[k] += p.stretch[k];
    }
    ++(is_a ? m.n_a : m.n_b);
  }
  for (int option = 0; option < 2; ++option) {
    const std::size_t n = option == 0 ? m.n_a : m.n_b;
    if (n == 0) {
      throw Error(Errc::degenerate,
                  fmt::format("degenerate response set: option '{}' was never chosen", labels[option]));
    }
    for (auto* v : option == 0 ? std::array{&m.pitch_a, &m.rate_a} : std::array{&m.pitch_b, &m.rate_b}) {
      for (double& x : *v) x /= static_cast<double>(n);
    }
  }
  return m;
}

KernelPair normalize_kernel_pair(std::span<const double> mean_a, std::span<const double> mean_b) {
  if (mean_a.size() != mean_b.size() || mean_a.empty()) {
    throw Error(Errc::invalid_argument, "kernel pair must be non-empty and equal length");
  }
  double ss = 0.0;
  for (double v : mean_a) ss += v * v;
  for (double v : mean_b) ss += v * v;
  if (ss == 0.0) throw Error(Errc::degenerate, "zero kernel");
  const double rms = std::sqrt(ss / static_cast<double>(2 * mean_a.size()));
  KernelPair out{{mean_a.begin(), mean_a.end()}, {mean_b.begin(), mean_b.end()}};
  for (double& v : out.a) v /= rms;
  for (double& v : out.b) v /= rms;
  return out;
}

std::vector<Kernel> ParticipantKernels::kernels(const Labels& labels) const {
  return {
      {Domain::pitch, labels[0], participant_id, pitch.a},
      {Domain::pitch, labels[1], participant_id, pitch.b},
      {Domain::rate, labels[0], participant_id, rate.a},
      {Domain::rate, labels[1], participant_id, rate.b},
  };
}

ParticipantKernels compute_kernels(std::string participant_id, const ProfileTable& profiles,
                                   std::span<const experiment::ResponseRecord> responses,
                                   const Labels& labels) {
  const auto means = per_option_means(profiles, responses, labels);
  ParticipantKernels out;
  out.participant_id = std::move(participant_id);
  out.pitch = normalize_kernel_pair(means.pitch_a, means.pitch_b);
  out.rate = normalize_kernel_pair(means.rate_a, means.rate_b);
  out.n_trials = responses.size();
  return out;
}

GroupStats group_stats(std::span<const ParticipantKernels> participants, Domain domain,
                       const GroupOptions& options) {
  if (participants.size() < 2) {
    throw Error(Errc::invalid_argument, "group statistics need at least two participants");
  }
  const auto pair_of = [domain](const ParticipantKernels& p) -> const KernelPair& {
    return domain == Domain::pitch ? p.pitch : p.rate;
  };
  const std::size_t dim = pair_of(participants.front()).a.size();
  for (const auto& p : participants) {
    if (pair_of(p).a.size() != dim || pair_of(p).b.size() != dim) {
      throw Error(Errc::invalid_argument, "participants' kernels differ in dimension");
    }
  }
  const double alpha = options.correction == Correction::bonferroni
                           ? options.alpha / static_cast<double>(dim)
                           : options.alpha;

  GroupStats out;
  out.domain = domain;
  out.n_participants = participants.size();
  std::vector<double> a(participants.size()), b(participants.size());
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < participants.size(); ++i) {
      a[i] = pair_of(participants[i]).a[k];
      b[i] = pair_of(participants[i]).b[k];
    }
    const auto ci_a = mean_ci95(a);
    const auto ci_b = mean_ci95(b);
    const auto test = paired_t(a, b);
    SegmentStats s;
    s.time_s = std::round(static_cast<double>(k) * options.segment_duration_s * 1e9) / 1e9;
    s.mean_a = ci_a.mean;
    s.mean_b = ci_b.mean;
    s.ci95_a = ci_a.half_width;
    s.ci95_b = ci_b.half_width;
    s.t = test.t;
    s.df = test.df;
    s.p = test.p;
    s.significant = test.p < alpha;
    s.degenerate_variance = test.degenerate_variance;
    out.segments.push_back(s);
  }
  return out;
}

BiasReport bias(std::span<const experiment::ResponseRecord> responses, const Labels& labels) {
  if (responses.empty()) throw Error(Errc::invalid_argument, "bias needs at least one response");
  BiasReport out;
  out.labels = labels;
  for (const auto& r : responses) {
    if (r.choice == labels[0]) {
      ++out.counts[0];
    } else if (r.choice == labels[1]) {
      ++out.counts[1];
    } else {
      throw Error(Errc::invalid_argument, "response '" + r.choice + "' is not an option label");
    }
  }
  out.n_trials = responses.size();
  out.proportions[0] = static_cast<double>(out.counts[0]) / static_cast<double>(out.n_trials);
  out.proportions[1] = static_cast<double>(out.counts[1]) / static_cast<double>(out.n_trials);
  return out;
}

std::vector<double> kernel_difference(const GroupStats& pitch, const GroupStats& rate) {
  std::vector<double> out;
  for (const auto* g : {&pitch, &rate}) {
    for (const auto& s : g->segments) out.push_back(s.mean_a - s.mean_b);
  }
  return out;
}

}  // namespace revcor::analysis
