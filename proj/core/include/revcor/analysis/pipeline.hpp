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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revcor/analysis/kernel.hpp"
#include "revcor/analysis/table_io.hpp"

namespace revcor::analysis {

enum class GroupBy { participant, session };

struct AnalysisOptions {
  // Canonical option order; when absent the two distinct choices, sorted.
  std::optional<Labels> labels;
  GroupBy group_by = GroupBy::participant;
  GroupOptions group;
};

struct AnalysisResult {
  Labels labels;
  std::vector<ParticipantKernels> kernels;
  GroupStats pitch;
  GroupStats rate;
  BiasReport overall;
  std::vector<std::pair<std::string, BiasReport>> per_group_bias;
};

AnalysisResult analyze(const ProfileStore& profiles, std::span<const ResponseRow> responses,
                       const AnalysisOptions& options = {});

}  // namespace revcor::analysis
