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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revcor/dsp/audio.hpp"
#include "revcor/dsp/stft.hpp"
#include "revcor/dsp/wav.hpp"
#include "revcor/profile/profile.hpp"

namespace revcor::experiment {

// Screen order of the two response buttons; fixed for a whole session.
enum class OptionOrder { ab, ba };

std::string_view to_string(OptionOrder order) noexcept;
OptionOrder option_order_from_string(std::string_view text);

struct StimulusSet {
  std::string id;
  std::filesystem::path base_audio;
  profile::TaskKind kind = profile::TaskKind::word;
  // Canonical labels: index 0 is option A, index 1 is option B.
  std::array<std::string, 2> option_labels;
  double target_onset_s = 0.0;

  void validate(double base_duration_s) const;
};

// {id, base_audio, kind, option_labels: [a, b], target_onset_s}. A relative
// base_audio path is resolved against `relative_to`.
StimulusSet stimulus_from_json(std::string_view text,
                               const std::filesystem::path& relative_to = {});

struct TrialPlan {
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  profile::TransformProfile profile;
  std::string stimulus_path;  // relative to the session directory; empty if not rendered
  std::size_t clipped_samples = 0;
};

struct ResponseRecord {
  std::size_t trial_index = 0;
  std::string choice;  // canonical label, independent of screen position
  double rt_ms = 0.0;
  std::string timestamp;  // UTC, ISO 8601

  friend bool operator==(const ResponseRecord&, const ResponseRecord&) = default;
};

enum class SessionStatus { created, running, complete };
std::string_view to_string(SessionStatus status) noexcept;

struct SessionOptions {
  std::size_t n_trials = 250;
  std::uint64_t master_seed = 0;
  std::string participant_id = "anonymous";
  std::string session_id;  // derived from stimulus, participant and seed when empty
  std::optional<profile::SamplingSpec> sampling;  // defaults to the task preset
  dsp::StftConfig stft;
  dsp::WavFormat wav_format = dsp::WavFormat::pcm16;
};

struct Session {
  std::string session_id;
  std::string participant_id;
  StimulusSet stimulus;
  OptionOrder option_order = OptionOrder::ab;
  std::uint64_t master_seed = 0;
  std::size_t n_trials = 0;
  profile::SamplingSpec sampling;
  dsp::StftConfig stft;
  dsp::WavFormat wav_format = dsp::WavFormat::pcm16;
  std::vector<TrialPlan> trials;
  std::vector<ResponseRecord> responses;

  SessionStatus status() const noexcept;
  std::size_t answered() const noexcept { return responses.size(); }
  // Trials are presented in index order, so the next trial is the count
  // of answered ones.
  std::size_t next_trial() const noexcept { return responses.size(); }
  // Labels as shown left-to-right.
  std::array<std::string, 2> presented_options() const;
};

// Draws option order and per-trial profiles without rendering audio.
Session plan_session(const StimulusSet& stimulus, const SessionOptions& options);

// Renders one trial's stimulus: duration profile first, then pitch.
dsp::Rendered render_trial(const dsp::AudioBuffer& base,
                           const profile::TransformProfile& profile,
                           const dsp::StftConfig& cfg = {});

// plan_session, then renders every trial in parallel and writes the
// session directory out_root/<session_id>. The manifest is written last,
// so a session directory without one is an aborted build.
Session build_session(const StimulusSet& stimulus, const SessionOptions& options,
                      const std::filesystem::path& out_root);

// Throws unless `record` is the next expected answer for `session`.
void validate_response(const Session& session, const ResponseRecord& record);
void apply_response(Session& session, ResponseRecord record);

// Session manifest: everything except responses. Profiles are stored as
// seeds and regenerated on load.
std::string manifest_to_json(const Session& session);
Session session_from_manifest(std::string_view text);

// Manifest plus the response log found in `dir`.
Session load_session(const std::filesystem::path& dir);

// CSV, header session_id,participant_id,stimulus_id,option_order,
// trial_index,choice,rt_ms,timestamp; rows sorted by trial_index.
std::string export_responses(const Session& session);

inline constexpr std::string_view kManifestFile = "manifest.json";
inline constexpr std::string_view kResponseLogFile = "responses.jsonl";
inline constexpr std::string_view kProfilesCsvFile = "profiles.csv";

}  // namespace revcor::experiment
