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

#include "revcor/profile/profile_io.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "revcor/error.hpp"

namespace revcor::profile {
namespace {

using nlohmann::json;

json points_to_json(const std::vector<dsp::Breakpoint>& points) {
  json arr = json::array();
  for (const auto& p : points) arr.push_back({p.time_s, p.value});
  return arr;
}

std::vector<dsp::Breakpoint> points_from_json(const json& arr) {
  std::vector<dsp::Breakpoint> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2) {
      throw Error(Errc::invalid_argument, "profile point must be [time_s, value]");
    }
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

}  // namespace

std::string format_number(double value) { return fmt::format("{}", value); }

std::string profile_to_json(const TrialProfile& trial, std::string_view session_id) {
  json doc;
  doc["trial_index"] = trial.trial_index;
  doc["seed"] = trial.profile.seed;
  doc["pitch_points"] = points_to_json(trial.profile.pitch_points);
  doc["stretch_points"] = points_to_json(trial.profile.stretch_points);
  if (!session_id.empty()) doc["session_id"] = session_id;
  return doc.dump(2) + "\n";
}

TrialProfile profile_from_json(std::string_view text, std::string* session_id) {
  try {
    const json doc = json::parse(text);
    TrialProfile out;
    out.trial_index = doc.at("trial_index").get<std::size_t>();
    out.profile.seed = doc.at("seed").get<std::uint64_t>();
    out.profile.pitch_points = points_from_json(doc.at("pitch_points"));
    out.profile.stretch_points = points_from_json(doc.at("stretch_points"));
    if (out.profile.pitch_points.size() != out.profile.stretch_points.size()) {
      throw Error(Errc::invalid_argument, "pitch and stretch point counts differ");
    }
    if (session_id != nullptr) *session_id = doc.value("session_id", std::string{});
    return out;
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("bad profile JSON: ") + e.what());
  }
}

std::string profiles_to_csv(std::string_view session_id,
                            std::span<const TrialProfile> trials) {
  const std::size_t n = trials.empty() ? 0 : trials.front().profile.size();
  std::string out = "session_id,trial_index,seed";
  for (std::size_t k = 0; k < n; ++k) out += fmt::format(",pitch_{}", k);
  for (std::size_t k = 0; k < n; ++k) out += fmt::format(",stretch_{}", k);
  out += '\n';
  for (const auto& t : trials) {
    if (t.profile.size() != n || t.profile.stretch_points.size() != n) {
      throw Error(Errc::invalid_argument, "profiles in one table must share a dimension");
    }
    out += fmt::format("{},{},{}", session_id, t.trial_index, t.profile.seed);
    for (const auto& p : t.profile.pitch_points) out += "," + format_number(p.value);
    for (const auto& p : t.profile.stretch_points) out += "," + format_number(p.value);
    out += '\n';
  }
  return out;
}

}  // namespace revcor::profile
