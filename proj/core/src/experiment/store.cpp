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

#include "revcor/experiment/store.hpp"

#include <fmt/format.h>

#include <chrono>
#include <ctime>

#include "revcor/error.hpp"

namespace revcor::experiment {
namespace fs = std::filesystem;

std::string utc_timestamp_now() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t secs = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}.{:03d}Z", tm.tm_year + 1900,
                     tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, ms);
}

SessionStore::SessionStore(const fs::path& root, Clock clock) : clock_(std::move(clock)) {
  std::vector<fs::path> dirs;
  if (fs::exists(root / kManifestFile)) dirs.push_back(root);
  if (fs::is_directory(root)) {
    for (const auto& e : fs::directory_iterator(root)) {
      if (e.is_directory() && fs::exists(e.path() / kManifestFile)) dirs.push_back(e.path());
    }
  }
  for (const auto& dir : dirs) {
    auto entry = std::make_unique<Entry>();
    entry->dir = dir;
    entry->session = load_session(dir);
    entry->log = std::make_unique<ResponseLog>(dir / kResponseLogFile);
    const auto id = entry->session.session_id;
    if (!entries_.emplace(id, std::move(entry)).second) {
      throw Error(Errc::invalid_argument, "duplicate session id " + id);
    }
  }
  if (entries_.empty()) throw Error(Errc::not_found, "no sessions under " + root.string());
}

std::vector<std::string> SessionStore::session_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, e] : entries_) ids.push_back(id);
  return ids;
}

SessionStore::Entry& SessionStore::entry(const std::string& session_id) const {
  const auto it = entries_.find(session_id);
  if (it == entries_.end()) throw Error(Errc::not_found, "unknown session " + session_id);
  return *it->second;
}

std::optional<TrialView> SessionStore::current_trial(const std::string& session_id) const {
  auto& e = entry(session_id);
  std::lock_guard lock(e.mutex);
  const auto& s = e.session;
  if (s.status() == SessionStatus::complete) return std::nullopt;
  TrialView v;
  v.trial_index = s.next_trial();
  v.audio_url = fmt::format("/api/audio/{}/{}.wav", s.session_id, v.trial_index);
  v.options = s.presented_options();
  v.answered = s.answered();
  v.total = s.n_trials;
  return v;
}

StatusView SessionStore::status(const std::string& session_id) const {
  auto& e = entry(session_id);
  std::lock_guard lock(e.mutex);
  return {e.session.status(), e.session.answered(), e.session.n_trials};
}

Session SessionStore::snapshot(const std::string& session_id) const {
  auto& e = entry(session_id);
  std::lock_guard lock(e.mutex);
  return e.session;
}

fs::path SessionStore::audio_path(const std::string& session_id, std::size_t trial_index) const {
  auto& e = entry(session_id);
  std::lock_guard lock(e.mutex);
  if (trial_index >= e.session.trials.size()) {
    throw Error(Errc::not_found, fmt::format("no trial {} in session {}", trial_index, session_id));
  }
  const auto& rel = e.session.trials[trial_index].stimulus_path;
  if (rel.empty()) throw Error(Errc::not_found, "trial audio was not rendered");
  return e.dir / rel;
}

ResponseRecord SessionStore::record_response(const std::string& session_id, std::size_t trial_index,
                                             const std::string& choice, double rt_ms) {
  auto& e = entry(session_id);
  std::lock_guard lock(e.mutex);
  ResponseRecord r{trial_index, choice, rt_ms, clock_()};
  validate_response(e.session, r);
  e.log->append(r);
  e.session.responses.push_back(r);
  return r;
}

}  // namespace revcor::experiment
