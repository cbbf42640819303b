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

#include "revcor/analysis/table_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <optional>

#include "common/text.hpp"
#include "revcor/error.hpp"
#include "revcor/profile/profile_io.hpp"

namespace revcor::analysis {
namespace {

using Columns = std::vector<std::string>;

std::size_t column(const Columns& header, std::string_view name, const std::filesystem::path& path) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw Error(Errc::invalid_argument,
                fmt::format("{}: missing column '{}'", path.string(), name));
  }
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<std::size_t> prefixed_columns(const Columns& header, std::string_view prefix) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0;; ++k) {
    const auto it = std::find(header.begin(), header.end(), fmt::format("{}{}", prefix, k));
    if (it == header.end()) break;
    out.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  return out;
}

void insert(ProfileStore& store, const std::string& session_id, std::size_t trial,
            ProfileValues values) {
  auto& table = store[session_id];
  if (!table.emplace(trial, std::move(values)).second) {
    throw Error(Errc::invalid_argument,
                fmt::format("duplicate profile for session '{}' trial {}", session_id, trial));
  }
}

}  // namespace

void read_profiles_csv(const std::filesystem::path& path, ProfileStore& store) {
  const auto rows = detail::read_csv_file(path);
  if (rows.empty()) throw Error(Errc::invalid_argument, path.string() + ": empty file");
  const auto& header = rows.front();
  const auto c_session = column(header, "session_id", path);
  const auto c_trial = column(header, "trial_index", path);
  const auto c_pitch = prefixed_columns(header, "pitch_");
  const auto c_stretch = prefixed_columns(header, "stretch_");
  if (c_pitch.empty() || c_pitch.size() != c_stretch.size()) {
    throw Error(Errc::invalid_argument,
                path.string() + ": expected matching pitch_k and stretch_k columns");
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw Error(Errc::invalid_argument,
                  fmt::format("{}: row {} has {} fields, expected {}", path.string(), r + 1,
                              row.size(), header.size()));
    }
    ProfileValues v;
    for (auto c : c_pitch) v.pitch.push_back(detail::parse_double(row[c], "pitch value"));
    for (auto c : c_stretch) v.stretch.push_back(detail::parse_double(row[c], "stretch value"));
    insert(store, row[c_session], detail::parse_index(row[c_trial], "trial_index"), std::move(v));
  }
}

void read_profiles_json(const std::filesystem::path& path, ProfileStore& store,
                        const std::string& session_id) {
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) read_profiles_json(f, store, session_id);
    return;
  }
  std::string sid;
  const auto trial = profile::profile_from_json(detail::read_text_file(path), &sid);
  if (sid.empty()) sid = session_id;
  insert(store, sid, trial.trial_index,
         {trial.profile.pitch_values(), trial.profile.stretch_values()});
}

std::vector<ResponseRow> read_responses_csv(const std::filesystem::path& path) {
  const auto rows = detail::read_csv_file(path);
  if (rows.empty()) throw Error(Errc::invalid_argument, path.string() + ": empty file");
  const auto& header = rows.front();
  const auto c_session = column(header, "session_id", path);
  const auto c_participant = column(header, "participant_id", path);
  const auto c_trial = column(header, "trial_index", path);
  const auto c_choice = column(header, "choice", path);
  const auto find = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto c_stimulus = find("stimulus_id");
  const auto c_order = find("option_order");
  const auto c_rt = find("rt_ms");
  const auto c_time = find("timestamp");

  std::vector<ResponseRow> out;
  out.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw Error(Errc::invalid_argument,
                  fmt::format("{}: row {} has {} fields, expected {}", path.string(), r + 1,
                              row.size(), header.size()));
    }
    ResponseRow x;
    x.session_id = row[c_session];
    x.participant_id = row[c_participant];
    if (c_stimulus) x.stimulus_id = row[*c_stimulus];
    if (c_order) x.option_order = row[*c_order];
    x.record.trial_index = detail::parse_index(row[c_trial], "trial_index");
    x.record.choice = row[c_choice];
    if (c_rt && !row[*c_rt].empty()) x.record.rt_ms = detail::parse_double(row[*c_rt], "rt_ms");
    if (c_time) x.record.timestamp = row[*c_time];
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace revcor::analysis
