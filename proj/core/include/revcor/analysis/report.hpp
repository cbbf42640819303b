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
#include <span>
#include <string>

#include "revcor/analysis/pipeline.hpp"

namespace revcor::analysis {

// segment_time_s,domain,mean_A,mean_B,ci_A,ci_B,t,df,p,significant
std::string stats_to_csv(const GroupStats& pitch, const GroupStats& rate);
// participant_id,domain,option,segment,value
std::string kernels_to_csv(std::span<const ParticipantKernels> kernels, const Labels& labels);
// group,label_A,label_B,count_A,count_B,proportion_A,proportion_B,n_trials
std::string bias_to_csv(const AnalysisResult& result);

// Two panels, pitch left and speech rate right: one line per option with a
// shaded 95% CI band and a star above each significant segment.
std::string render_kernel_svg(const GroupStats& pitch, const GroupStats& rate,
                              const Labels& labels);

// Writes stats.csv, kernels.csv, bias.csv and kernels.svg into out_dir.
void export_results(const AnalysisResult& result, const std::filesystem::path& out_dir);

}  // namespace revcor::analysis
