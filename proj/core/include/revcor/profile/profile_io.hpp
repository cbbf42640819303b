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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "revcor/profile/profile.hpp"

namespace revcor::profile {

struct TrialProfile {
  std::size_t trial_index = 0;
  TransformProfile profile;

  friend bool operator==(const TrialProfile&, const TrialProfile&) = default;
};

// {trial_index, seed, pitch_points: [[t, cents]...], stretch_points: [[t, log2]...]}
// plus an optional session_id. Numbers round-trip exactly.
std::string profile_to_json(const TrialProfile& trial, std::string_view session_id = {});
TrialProfile profile_from_json(std::string_view text, std::string* session_id = nullptr);

// One row per trial: session_id, trial_index, seed, pitch_0..pitch_{n-1},
// stretch_0..stretch_{n-1}.
std::string profiles_to_csv(std::string_view session_id,
                            std::span<const TrialProfile> trials);

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

}  // namespace revcor::profile
