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

#include "revcor/analysis/pipeline.hpp"

#include <fmt/format.h>

#include <map>
#include <set>

#include "revcor/error.hpp"

namespace revcor::analysis {
namespace {

Labels infer_labels(std::span<const ResponseRow> responses) {
  std::set<std::string> distinct;
  for (const auto& r : responses) distinct.insert(r.record.choice);
  if (distinct.size() != 2) {
    throw Error(Errc::invalid_argument,
                fmt::format("expected exactly two distinct choices, found {}", distinct.size()));
  }
  return {*distinct.begin(), *distinct.rbegin()};
}

}  // namespace

AnalysisResult analyze(const ProfileStore& profiles, std::span<const ResponseRow> responses,
                       const AnalysisOptions& options) {
  if (responses.empty()) throw Error(Errc::invalid_argument, "no responses to analyze");

  AnalysisResult out;
  out.labels = options.labels ? *options.labels : infer_labels(responses);

  // A group may span several sessions, so its trials are renumbered into
  // one table in response order.
  struct Group {
    ProfileTable table;
    std::vector<experiment::ResponseRecord> records;
  };
  std::map<std::string, Group> groups;
  std::vector<experiment::ResponseRecord> all;
  all.reserve(responses.size());
  for (const auto& row : responses) {
    const auto session = profiles.find(row.session_id);
    if (session == profiles.end()) {
      throw Error(Errc::not_found, "no profiles for session '" + row.session_id + "'");
    }
    const auto profile = session->second.find(row.record.trial_index);
    if (profile == session->second.end()) {
      throw Error(Errc::not_found, fmt::format("no profile for session '{}' trial {}",
                                               row.session_id, row.record.trial_index));
    }
    auto& g = groups[options.group_by == GroupBy::participant ? row.participant_id
                                                              : row.session_id];
    auto record = row.record;
    record.trial_index = g.records.size();
    g.table.emplace(record.trial_index, profile->second);
    g.records.push_back(record);
    all.push_back(row.record);
  }

  for (const auto& [id, g] : groups) {
    out.kernels.push_back(compute_kernels(id, g.table, g.records, out.labels));
    out.per_group_bias.emplace_back(id, bias(g.records, out.labels));
  }
  out.overall = bias(all, out.labels);
  out.pitch = group_stats(out.kernels, Domain::pitch, options.group);
  out.rate = group_stats(out.kernels, Domain::rate, options.group);
  return out;
}

}  // namespace revcor::analysis
