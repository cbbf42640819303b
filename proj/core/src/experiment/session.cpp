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

#include "revcor/experiment/session.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <atomic>
#include <exception>
#include <json.hpp>
#include <thread>

#include "common/text.hpp"
#include "revcor/dsp/vocoder.hpp"
#include "revcor/error.hpp"
#include "revcor/experiment/response_log.hpp"
#include "revcor/profile/profile_io.hpp"
#include "revcor/profile/random.hpp"

namespace revcor::experiment {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_safe_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
  }) && id != "." && id != "..";
}

std::string_view to_string(dsp::WindowKind kind) {
  return kind == dsp::WindowKind::hann ? "hann" : "sqrt_hann";
}

dsp::WindowKind window_from_string(std::string_view s) {
  if (s == "hann") return dsp::WindowKind::hann;
  if (s == "sqrt_hann") return dsp::WindowKind::sqrt_hann;
  throw Error(Errc::invalid_argument, "unknown window '" + std::string(s) + "'");
}

std::string_view to_string(dsp::WavFormat f) {
  return f == dsp::WavFormat::pcm16 ? "pcm16" : "float32";
}

dsp::WavFormat wav_format_from_string(std::string_view s) {
  if (s == "pcm16") return dsp::WavFormat::pcm16;
  if (s == "float32") return dsp::WavFormat::float32;
  throw Error(Errc::invalid_argument, "unknown WAV format '" + std::string(s) + "'");
}

std::string trial_stem(std::size_t index) { return fmt::format("trial_{:04d}", index); }

// Runs fn(i) for i in [0, count) on a small worker pool; the first
// exception is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, Fn fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), count));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::string_view to_string(OptionOrder order) noexcept {
  return order == OptionOrder::ab ? "AB" : "BA";
}

OptionOrder option_order_from_string(std::string_view text) {
  if (text == "AB") return OptionOrder::ab;
  if (text == "BA") return OptionOrder::ba;
  throw Error(Errc::invalid_argument, "option order must be AB or BA");
}

std::string_view to_string(SessionStatus status) noexcept {
  switch (status) {
    case SessionStatus::created: return "created";
    case SessionStatus::running: return "running";
    case SessionStatus::complete: return "complete";
  }
  return "created";
}

void StimulusSet::validate(double base_duration_s) const {
  if (!is_safe_id(id)) {
    throw Error(Errc::invalid_argument, "stimulus id must be non-empty [A-Za-z0-9._-]");
  }
  if (option_labels[0].empty() || option_labels[1].empty()) {
    throw Error(Errc::invalid_argument, "option labels must be non-empty");
  }
  if (option_labels[0] == option_labels[1]) {
    throw Error(Errc::invalid_argument, "option labels must be distinct");
  }
  if (!(target_onset_s >= 0.0) || (base_duration_s > 0.0 && target_onset_s >= base_duration_s)) {
    throw Error(Errc::out_of_range, "target onset must lie inside the base recording");
  }
}

StimulusSet stimulus_from_json(std::string_view text, const fs::path& relative_to) {
  try {
    const json doc = json::parse(text);
    StimulusSet s;
    s.id = doc.at("id").get<std::string>();
    s.base_audio = doc.at("base_audio").get<std::string>();
    if (s.base_audio.is_relative() && !relative_to.empty()) s.base_audio = relative_to / s.base_audio;
    s.kind = profile::task_kind_from_string(doc.value("kind", std::string("word")));
    const auto labels = doc.at("option_labels").get<std::vector<std::string>>();
    if (labels.size() != 2) throw Error(Errc::invalid_argument, "need exactly two option labels");
    s.option_labels = {labels[0], labels[1]};
    s.target_onset_s = doc.value("target_onset_s", 0.0);
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("bad stimulus JSON: ") + e.what());
  }
}

SessionStatus Session::status() const noexcept {
  if (responses.empty()) return SessionStatus::created;
  return responses.size() >= n_trials ? SessionStatus::complete : SessionStatus::running;
}

std::array<std::string, 2> Session::presented_options() const {
  const auto& l = stimulus.option_labels;
  return option_order == OptionOrder::ab ? l : std::array<std::string, 2>{l[1], l[0]};
}

Session plan_session(const StimulusSet& stimulus, const SessionOptions& options) {
  stimulus.validate(0.0);
  if (options.n_trials < 1) throw Error(Errc::invalid_argument, "n_trials must be >= 1");
  options.stft.validate();

  Session s;
  s.participant_id = options.participant_id;
  s.session_id = options.session_id.empty()
                     ? fmt::format("{}-{}-{}", stimulus.id, options.participant_id, options.master_seed)
                     : options.session_id;
  if (!is_safe_id(s.session_id) || !is_safe_id(s.participant_id)) {
    throw Error(Errc::invalid_argument, "session and participant ids must be [A-Za-z0-9._-]");
  }
  s.stimulus = stimulus;
  s.master_seed = options.master_seed;
  s.n_trials = options.n_trials;
  s.sampling = options.sampling.value_or(profile::SamplingSpec::for_task(stimulus.kind));
  s.sampling.validate();
  s.stft = options.stft;
  s.wav_format = options.wav_format;

  // Session-level stream is decorrelated from trial 0, whose seed equals
  // the master seed under the XOR splitting rule.
  Rng session_rng(splitmix64(options.master_seed));
  s.option_order = session_rng.coin() ? OptionOrder::ba : OptionOrder::ab;

  s.trials.reserve(options.n_trials);
  for (std::size_t i = 0; i < options.n_trials; ++i) {
    auto spec = s.sampling;
    spec.seed = trial_seed(options.master_seed, i);
    s.trials.push_back({i, spec.seed, profile::sample_profile(spec), {}, 0});
  }
  return s;
}

dsp::Rendered render_trial(const dsp::AudioBuffer& base,
                           const profile::TransformProfile& profile,
                           const dsp::StftConfig& cfg) {
  return dsp::apply_transform(base, profile.stretch_curve(), profile.pitch_curve(), cfg);
}

Session build_session(const StimulusSet& stimulus, const SessionOptions& options,
                      const fs::path& out_root) {
  dsp::AudioBuffer base;
  try {
    base = dsp::read_wav(stimulus.base_audio);
  } catch (const Error& e) {
    throw Error(Errc::io_error, "unreadable base audio: " + std::string(e.what()));
  }
  stimulus.validate(base.duration_s());
  Session s = plan_session(stimulus, options);

  const fs::path dir = out_root / s.session_id;
  fs::create_directories(dir / "audio");
  fs::create_directories(dir / "profiles");
  fs::remove(dir / kManifestFile);

  parallel_for(s.trials.size(), [&](std::size_t i) {
    auto& trial = s.trials[i];
    try {
      auto rendered = render_trial(base, trial.profile, s.stft);
      trial.stimulus_path = "audio/" + trial_stem(i) + ".wav";
      trial.clipped_samples = rendered.clipped_samples;
      dsp::write_wav(dir / trial.stimulus_path, rendered.audio, s.wav_format);
      detail::write_file_atomic(
          dir / "profiles" / (trial_stem(i) + ".json"),
          profile::profile_to_json({i, trial.profile}, s.session_id));
    } catch (const std::exception& e) {
      throw Error(Errc::io_error, fmt::format("render failed at trial {}: {}", i, e.what()));
    }
  });

  std::vector<profile::TrialProfile> table;
  table.reserve(s.trials.size());
  for (const auto& t : s.trials) table.push_back({t.trial_index, t.profile});
  detail::write_file_atomic(dir / kProfilesCsvFile, profile::profiles_to_csv(s.session_id, table));
  detail::write_file_atomic(dir / kManifestFile, manifest_to_json(s));
  return s;
}

void validate_response(const Session& session, const ResponseRecord& record) {
  if (record.trial_index >= session.n_trials) {
    throw Error(Errc::out_of_range, fmt::format("trial index {} out of range [0, {})",
                                                record.trial_index, session.n_trials));
  }
  if (record.trial_index < session.next_trial()) {
    throw Error(Errc::already_answered, fmt::format("trial {} already answered", record.trial_index));
  }
  if (record.trial_index > session.next_trial()) {
    throw Error(Errc::out_of_order, fmt::format("trial {} is not current (expected {})",
                                                record.trial_index, session.next_trial()));
  }
  const auto& labels = session.stimulus.option_labels;
  if (record.choice != labels[0] && record.choice != labels[1]) {
    throw Error(Errc::invalid_argument, "choice '" + record.choice + "' is not an option label");
  }
  if (!(record.rt_ms >= 0.0) || !std::isfinite(record.rt_ms)) {
    throw Error(Errc::invalid_argument, "rt_ms must be a non-negative number");
  }
}

void apply_response(Session& session, ResponseRecord record) {
  validate_response(session, record);
  session.responses.push_back(std::move(record));
}

std::string manifest_to_json(const Session& s) {
  json doc;
  doc["format"] = "revcor-session/1";
  doc["session_id"] = s.session_id;
  doc["participant_id"] = s.participant_id;
  doc["master_seed"] = s.master_seed;
  doc["n_trials"] = s.n_trials;
  doc["option_order"] = to_string(s.option_order);
  doc["presentation"] = "index-order";
  doc["shuffle_seed"] = nullptr;
  doc["stimulus"] = {
      {"id", s.stimulus.id},
      {"base_audio", s.stimulus.base_audio.string()},
      {"kind", profile::to_string(s.stimulus.kind)},
      {"option_labels", {s.stimulus.option_labels[0], s.stimulus.option_labels[1]}},
      {"target_onset_s", s.stimulus.target_onset_s},
  };
  doc["sampling"] = {
      {"num_windows", s.sampling.num_windows},
      {"window_duration_s", s.sampling.window_duration_s},
      {"pitch_sigma_cents", s.sampling.pitch_sigma_cents},
      {"rate_sigma_log2", s.sampling.rate_sigma_log2},
      {"clip_sigmas", s.sampling.clip_sigmas},
  };
  doc["stft"] = {
      {"window_size", s.stft.window_size},
      {"hop", s.stft.hop},
      {"window", to_string(s.stft.window)},
  };
  doc["wav_format"] = to_string(s.wav_format);
  json trials = json::array();
  for (const auto& t : s.trials) {
    trials.push_back({{"trial_index", t.trial_index},
                      {"seed", t.seed},
                      {"stimulus_path", t.stimulus_path},
                      {"clipped_samples", t.clipped_samples}});
  }
  doc["trials"] = std::move(trials);
  return doc.dump(2) + "\n";
}

Session session_from_manifest(std::string_view text) {
  try {
    const json doc = json::parse(text);
    Session s;
    s.session_id = doc.at("session_id").get<std::string>();
    s.participant_id = doc.at("participant_id").get<std::string>();
    s.master_seed = doc.at("master_seed").get<std::uint64_t>();
    s.n_trials = doc.at("n_trials").get<std::size_t>();
    s.option_order = option_order_from_string(doc.at("option_order").get<std::string>());
    const auto& st = doc.at("stimulus");
    s.stimulus.id = st.at("id").get<std::string>();
    s.stimulus.base_audio = st.at("base_audio").get<std::string>();
    s.stimulus.kind = profile::task_kind_from_string(st.at("kind").get<std::string>());
    const auto labels = st.at("option_labels").get<std::vector<std::string>>();
    if (labels.size() != 2) throw Error(Errc::invalid_argument, "need two option labels");
    s.stimulus.option_labels = {labels[0], labels[1]};
    s.stimulus.target_onset_s = st.at("target_onset_s").get<double>();
    const auto& sp = doc.at("sampling");
    s.sampling.num_windows = sp.at("num_windows").get<std::size_t>();
    s.sampling.window_duration_s = sp.at("window_duration_s").get<double>();
    s.sampling.pitch_sigma_cents = sp.at("pitch_sigma_cents").get<double>();
    s.sampling.rate_sigma_log2 = sp.at("rate_sigma_log2").get<double>();
    s.sampling.clip_sigmas = sp.at("clip_sigmas").get<double>();
    const auto& cfg = doc.at("stft");
    s.stft.window_size = cfg.at("window_size").get<std::size_t>();
    s.stft.hop = cfg.at("hop").get<std::size_t>();
    s.stft.window = window_from_string(cfg.at("window").get<std::string>());
    s.wav_format = wav_format_from_string(doc.value("wav_format", std::string("pcm16")));
    for (const auto& t : doc.at("trials")) {
      TrialPlan plan;
      plan.trial_index = t.at("trial_index").get<std::size_t>();
      plan.seed = t.at("seed").get<std::uint64_t>();
      plan.stimulus_path = t.value("stimulus_path", std::string{});
      plan.clipped_samples = t.value("clipped_samples", std::size_t{0});
      auto spec = s.sampling;
      spec.seed = plan.seed;
      plan.profile = profile::sample_profile(spec);
      if (plan.trial_index != s.trials.size()) {
        throw Error(Errc::invalid_argument, "manifest trials must be listed in index order");
      }
      s.trials.push_back(std::move(plan));
    }
    if (s.trials.size() != s.n_trials) {
      throw Error(Errc::invalid_argument, "manifest trial count does not match n_trials");
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("bad session manifest: ") + e.what());
  }
}

Session load_session(const fs::path& dir) {
  const auto manifest = dir / kManifestFile;
  if (!fs::exists(manifest)) throw Error(Errc::not_found, "no session manifest in " + dir.string());
  Session s = session_from_manifest(detail::read_text_file(manifest));
  const auto log = dir / kResponseLogFile;
  if (fs::exists(log)) {
    for (auto& r : ResponseLog::read(log)) apply_response(s, std::move(r));
  }
  return s;
}

std::string export_responses(const Session& s) {
  std::string out = "session_id,participant_id,stimulus_id,option_order,trial_index,choice,rt_ms,timestamp\n";
  std::vector<const ResponseRecord*> rows;
  for (const auto& r : s.responses) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(),
            [](const auto* a, const auto* b) { return a->trial_index < b->trial_index; });
  for (const auto* r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", detail::csv_escape(s.session_id),
                       detail::csv_escape(s.participant_id), detail::csv_escape(s.stimulus.id),
                       to_string(s.option_order), r->trial_index, detail::csv_escape(r->choice),
                       profile::format_number(r->rt_ms), detail::csv_escape(r->timestamp));
  }
  return out;
}

}  // namespace revcor::experiment
