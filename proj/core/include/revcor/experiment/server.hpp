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

#include <filesystem>
#include <memory>
#include <string>

#include "revcor/experiment/store.hpp"

namespace revcor::experiment {

// JSON-over-HTTP trial service:
//   GET  /api/sessions/{id}/trial     next trial, or {"done": true}
//   GET  /api/audio/{id}/{trial}.wav  stimulus bytes
//   POST /api/sessions/{id}/response  {trial_index, choice, rt_ms}
//   GET  /api/sessions/{id}/status    {status, answered, total}
// Answers for anything but the current trial get 409; unknown sessions 404.
class TrialServer {
 public:
  explicit TrialServer(SessionStore& store);
  ~TrialServer();
  TrialServer(const TrialServer&) = delete;
  TrialServer& operator=(const TrialServer&) = delete;

  // Serve files under `root` at "/" (e.g. a browser client build).
  void mount_static(const std::filesystem::path& root);

  // Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace revcor::experiment
