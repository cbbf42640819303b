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
#include <map>
#include <string>
#include <vector>

#include "revcor/analysis/kernel.hpp"

namespace revcor::analysis {

// Profile tables of several sessions, keyed by session id.
using ProfileStore = std::map<std::string, ProfileTable>;

// Adds the rows of a profiles CSV (session_id, trial_index, seed,
// pitch_*, stretch_*) to `store`.
void read_profiles_csv(const std::filesystem::path& path, ProfileStore& store);

// Adds one per-trial profile JSON document, or every *.json file in a
// directory. Documents without a session_id are filed under `session_id`.
void read_profiles_json(const std::filesystem::path& path, ProfileStore& store,
                        const std::string& session_id = {});

struct ResponseRow {
  std::string session_id;
  std::string participant_id;
  std::string stimulus_id;
  std::string option_order;
  experiment::ResponseRecord record;
};

std::vector<ResponseRow> read_responses_csv(const std::filesystem::path& path);

}  // namespace revcor::analysis
