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
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "revcor/experiment/response_log.hpp"
#include "revcor/experiment/session.hpp"

namespace revcor::experiment {

struct TrialView {
  std::size_t trial_index = 0;
  std::string audio_url;
  std::array<std::string, 2> options;  // screen order
  std::size_t answered = 0;
  std::size_t total = 0;
};

struct StatusView {
  SessionStatus status = SessionStatus::created;
  std::size_t answered = 0;
  std::size_t total = 0;
};

std::string utc_timestamp_now();

// All sessions found under a directory (the directory itself, or its
// immediate subdirectories, holding a manifest). Safe for concurrent use;
// writes to one session are serialised.
class SessionStore {
 public:
  using Clock = std::function<std::string()>;

  explicit SessionStore(const std::filesystem::path& root, Clock clock = utc_timestamp_now);

  std::vector<std::string> session_ids() const;

  // nullopt once every trial is answered. Unknown ids throw not_found.
  std::optional<TrialView> current_trial(const std::string& session_id) const;
  StatusView status(const std::string& session_id) const;
  Session snapshot(const std::string& session_id) const;
  std::filesystem::path audio_path(const std::string& session_id,
                                   std::size_t trial_index) const;

  // Validates, appends to the durable log, then updates memory.
  ResponseRecord record_response(const std::string& session_id, std::size_t trial_index,
                                 const std::string& choice, double rt_ms);

 private:
  struct Entry {
    std::filesystem::path dir;
    Session session;
    std::unique_ptr<ResponseLog> log;
    mutable std::mutex mutex;
  };
  Entry& entry(const std::string& session_id) const;

  std::map<std::string, std::unique_ptr<Entry>> entries_;
  Clock clock_;
};

}  // namespace revcor::experiment
