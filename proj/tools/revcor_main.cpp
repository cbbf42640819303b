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

// revcor: build, serve, simulate and analyse reverse-correlation sessions.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "revcor/analysis/pipeline.hpp"
#include "revcor/analysis/report.hpp"
#include "revcor/analysis/table_io.hpp"
#include "revcor/dsp/f0.hpp"
#include "revcor/dsp/splice.hpp"
#include "revcor/dsp/wav.hpp"
#include "revcor/error.hpp"
#include "revcor/experiment/server.hpp"
#include "revcor/experiment/session.hpp"
#include "revcor/experiment/store.hpp"
#include "revcor/profile/profile_io.hpp"
#include "revcor/sim/observer.hpp"

namespace fs = std::filesystem;
using namespace revcor;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out.flush()) throw Error(Errc::io_error, "cannot write " + path.string());
}

// CSV body without its header line.
std::string_view body(std::string_view csv) {
  const auto nl = csv.find('\n');
  return nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
}

dsp::WavFormat parse_format(const std::string& name) {
  if (name == "pcm16") return dsp::WavFormat::pcm16;
  if (name == "float32") return dsp::WavFormat::float32;
  throw Error(Errc::invalid_argument, "unknown wav format '" + name + "'");
}

struct BuildArgs {
  fs::path stimulus;
  std::uint64_t seed = 0;
  std::size_t n_trials = 250;
  fs::path out_dir;
  std::string participant = "anonymous";
  std::string session_id;
  std::string preset = "default";
  std::string format = "pcm16";
};

int run_build(const BuildArgs& a) {
  const auto stimulus =
      experiment::stimulus_from_json(slurp(a.stimulus), a.stimulus.parent_path());
  experiment::SessionOptions opt;
  opt.n_trials = a.n_trials;
  opt.master_seed = a.seed;
  opt.participant_id = a.participant;
  opt.session_id = a.session_id;
  opt.wav_format = parse_format(a.format);
  if (a.preset == "duration-1pct") {
    opt.sampling = profile::SamplingSpec::duration_percent_preset(stimulus.kind);
  } else if (a.preset != "default") {
    throw Error(Errc::invalid_argument, "unknown preset '" + a.preset + "'");
  }
  const auto session = experiment::build_session(stimulus, opt, a.out_dir);
  std::size_t clipped = 0;
  for (const auto& t : session.trials) clipped += t.clipped_samples;
  fmt::print("session {}: {} trials in {}\n", session.session_id, session.n_trials,
             (a.out_dir / session.session_id).string());
  if (clipped > 0) fmt::print("clipped samples across trials: {}\n", clipped);
  return 0;
}

struct ServeArgs {
  fs::path dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  fs::path web_root;
};

int run_serve(const ServeArgs& a) {
  // Handle termination on a dedicated thread so the server can be stopped
  // outside signal context.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  experiment::SessionStore store(a.dir);
  experiment::TrialServer server(store);
  if (!a.web_root.empty()) server.mount_static(a.web_root);
  const int port = server.bind(a.host, a.port);
  fmt::print("listening on port {}\n", port);
  std::fflush(stdout);

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  if (waiter.joinable()) {
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  return 0;
}

int run_export(const fs::path& dir, const fs::path& out) {
  const auto session = experiment::load_session(dir);
  const auto csv = experiment::export_responses(session);
  if (out.empty() || out == "-") {
    std::cout << csv;
  } else {
    write_text(out, csv);
  }
  return 0;
}

struct SimulateArgs {
  fs::path observer;
  std::uint64_t seed = 0;
  fs::path session_dir;
  std::size_t participants = 0;
  std::size_t trials = 250;
  std::string kind = "word";
  std::string labels = "A,B";
  fs::path out_dir;
};

std::vector<std::string> split_labels(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(Errc::invalid_argument, "labels must be given as A,B");
  }
  return {text.substr(0, comma), text.substr(comma + 1)};
}

int run_simulate(const SimulateArgs& a) {
  const auto observer = sim::observer_from_json(slurp(a.observer));

  if (!a.session_dir.empty()) {
    experiment::SessionStore store(a.session_dir, [] { return std::string{}; });
    for (const auto& id : store.session_ids()) {
      const auto session = store.snapshot(id);
      Rng rng(splitmix64(a.seed));
      const auto answers = sim::simulate_session(observer, session, rng);
      for (std::size_t i = session.answered(); i < answers.size(); ++i) {
        store.record_response(id, answers[i].trial_index, answers[i].choice, answers[i].rt_ms);
      }
      fmt::print("session {}: answered {} trials\n", id, answers.size() - session.answered());
    }
    return 0;
  }

  if (a.participants == 0 || a.out_dir.empty()) {
    throw Error(Errc::invalid_argument,
                "simulate needs --session-dir, or --participants with --out-dir");
  }
  const auto labels = split_labels(a.labels);
  experiment::StimulusSet stimulus;
  stimulus.id = "sim";
  stimulus.kind = profile::task_kind_from_string(a.kind);
  stimulus.option_labels = {labels[0], labels[1]};

  std::string profiles_csv, responses_csv;
  for (std::size_t p = 0; p < a.participants; ++p) {
    experiment::SessionOptions opt;
    opt.n_trials = a.trials;
    opt.master_seed = a.seed + p * 1'000'003;
    opt.participant_id = fmt::format("p{:02}", p + 1);
    auto session = experiment::plan_session(stimulus, opt);
    Rng rng(splitmix64(opt.master_seed ^ 0x5eedULL));
    session.responses = sim::simulate_session(observer, session, rng);

    std::vector<profile::TrialProfile> table;
    for (const auto& t : session.trials) table.push_back({t.trial_index, t.profile});
    const auto pcsv = profile::profiles_to_csv(session.session_id, table);
    const auto rcsv = experiment::export_responses(session);
    if (p == 0) {
      profiles_csv = pcsv;
      responses_csv = rcsv;
    } else {
      profiles_csv += body(pcsv);
      responses_csv += body(rcsv);
    }
  }
  write_text(a.out_dir / "profiles.csv", profiles_csv);
  write_text(a.out_dir / "responses.csv", responses_csv);
  fmt::print("{} participants x {} trials written to {}\n", a.participants, a.trials,
             a.out_dir.string());
  return 0;
}

struct AnalyzeArgs {
  std::vector<fs::path> profiles;
  std::vector<fs::path> responses;
  std::string labels;
  std::string group_by = "participant";
  double window_s = 0.1;
  double alpha = 0.05;
  bool bonferroni = false;
  fs::path out;
};

int run_analyze(const AnalyzeArgs& a) {
  analysis::ProfileStore store;
  for (const auto& p : a.profiles) {
    if (fs::is_directory(p) || p.extension() == ".json") {
      analysis::read_profiles_json(p, store);
    } else {
      analysis::read_profiles_csv(p, store);
    }
  }
  std::vector<analysis::ResponseRow> rows;
  for (const auto& r : a.responses) {
    auto part = analysis::read_responses_csv(r);
    rows.insert(rows.end(), part.begin(), part.end());
  }

  analysis::AnalysisOptions opt;
  if (!a.labels.empty()) {
    const auto l = split_labels(a.labels);
    opt.labels = analysis::Labels{l[0], l[1]};
  }
  if (a.group_by == "session") {
    opt.group_by = analysis::GroupBy::session;
  } else if (a.group_by != "participant") {
    throw Error(Errc::invalid_argument, "group-by must be participant or session");
  }
  opt.group.alpha = a.alpha;
  opt.group.segment_duration_s = a.window_s;
  opt.group.correction =
      a.bonferroni ? analysis::Correction::bonferroni : analysis::Correction::none;

  const auto result = analysis::analyze(store, rows, opt);
  analysis::export_results(result, a.out);

  std::size_t significant = 0;
  for (const auto* g : {&result.pitch, &result.rate}) {
    for (const auto& s : g->segments) significant += s.significant ? 1 : 0;
  }
  fmt::print("{} groups, {} responses; {} significant segments; results in {}\n",
             result.kernels.size(), rows.size(), significant, a.out.string());
  return 0;
}

int run_flatten(const fs::path& in, const fs::path& out, double target_hz) {
  const auto rendered = dsp::flatten_pitch(dsp::read_wav(in), target_hz);
  dsp::write_wav(out, rendered.audio);
  if (rendered.clipped_samples > 0) {
    fmt::print("clipped samples: {}\n", rendered.clipped_samples);
  }
  return 0;
}

int run_splice(const fs::path& phrase, const fs::path& word, double marker_s, double gap_ms,
               const fs::path& out) {
  const auto p = dsp::read_wav(phrase);
  const auto w = dsp::read_wav(word);
  if (marker_s < 0.0) throw Error(Errc::invalid_argument, "marker must be >= 0");
  const auto marker = static_cast<std::size_t>(std::lround(marker_s * p.sample_rate));
  const auto spliced = dsp::insert_target(p, w, marker, gap_ms);
  dsp::write_wav(out, spliced.audio);
  fmt::print("word inserted at sample {} ({:.4f} s)\n", spliced.insertion_index,
             static_cast<double>(spliced.insertion_index) / p.sample_rate);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse-correlation stimulus generation, experiment serving and analysis"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* cmd_build = app.add_subcommand("build", "Render a session's stimuli");
  cmd_build->add_option("--stimulus", build.stimulus, "Stimulus set JSON")->required();
  cmd_build->add_option("--seed", build.seed, "Master seed")->required();
  cmd_build->add_option("--n-trials", build.n_trials, "Number of trials")->capture_default_str();
  cmd_build->add_option("--out-dir", build.out_dir, "Directory to create the session in")
      ->required();
  cmd_build->add_option("--participant", build.participant)->capture_default_str();
  cmd_build->add_option("--session-id", build.session_id, "Defaults to <stimulus>-<participant>-<seed>");
  cmd_build->add_option("--preset", build.preset, "Sampling preset: default | duration-1pct")
      ->capture_default_str();
  cmd_build->add_option("--format", build.format, "WAV sample format: pcm16 | float32")
      ->capture_default_str();

  ServeArgs serve;
  auto* cmd_serve = app.add_subcommand("serve", "Serve sessions over HTTP");
  cmd_serve->add_option("--dir", serve.dir, "Session directory or a directory of sessions")
      ->required();
  cmd_serve->add_option("--port", serve.port, "0 picks a free port")->capture_default_str();
  cmd_serve->add_option("--host", serve.host)->capture_default_str();
  cmd_serve->add_option("--web-root", serve.web_root, "Static files to serve at /");

  fs::path export_dir, export_out;
  auto* cmd_export = app.add_subcommand("export", "Write a session's responses as CSV");
  cmd_export->add_option("--dir", export_dir, "Session directory")->required();
  cmd_export->add_option("--out", export_out, "Output CSV; stdout when omitted");

  SimulateArgs simulate;
  auto* cmd_sim = app.add_subcommand("simulate", "Answer trials with a template observer");
  cmd_sim->add_option("--observer", simulate.observer, "Observer JSON")->required();
  cmd_sim->add_option("--seed", simulate.seed, "Observer noise seed")->capture_default_str();
  cmd_sim->add_option("--session-dir", simulate.session_dir,
                      "Answer the remaining trials of built sessions");
  cmd_sim->add_option("--participants", simulate.participants,
                      "Simulate this many participants without audio");
  cmd_sim->add_option("--trials", simulate.trials, "Trials per simulated participant")
      ->capture_default_str();
  cmd_sim->add_option("--kind", simulate.kind, "word | phrase")->capture_default_str();
  cmd_sim->add_option("--labels", simulate.labels, "Option labels A,B")->capture_default_str();
  cmd_sim->add_option("--out-dir", simulate.out_dir, "Where profiles.csv and responses.csv go");

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Compute kernels and group statistics");
  cmd_analyze->add_option("--profiles", analyze.profiles, "Profile CSV, JSON file or directory")
      ->required();
  cmd_analyze->add_option("--responses", analyze.responses, "Response CSV")->required();
  cmd_analyze->add_option("--labels", analyze.labels, "Option order A,B (default: sorted)");
  cmd_analyze->add_option("--group-by", analyze.group_by, "participant | session")
      ->capture_default_str();
  cmd_analyze->add_option("--window-s", analyze.window_s, "Segment spacing on the time axis")
      ->capture_default_str();
  cmd_analyze->add_option("--alpha", analyze.alpha)->capture_default_str();
  cmd_analyze->add_flag("--bonferroni", analyze.bonferroni, "Correct alpha for segment count");
  cmd_analyze->add_option("--out", analyze.out, "Output directory")->required();

  fs::path flat_in, flat_out;
  double flat_hz = 120.0;
  auto* cmd_flatten = app.add_subcommand("flatten", "Flatten a recording's pitch");
  cmd_flatten->add_option("--in", flat_in)->required();
  cmd_flatten->add_option("--out", flat_out)->required();
  cmd_flatten->add_option("--target-hz", flat_hz)->capture_default_str();

  fs::path sp_phrase, sp_word, sp_out;
  double sp_marker = 0.0, sp_gap = 120.0;
  auto* cmd_splice = app.add_subcommand("splice", "Insert a word after a carrier phrase");
  cmd_splice->add_option("--phrase", sp_phrase)->required();
  cmd_splice->add_option("--word", sp_word)->required();
  cmd_splice->add_option("--marker-s", sp_marker, "End of the phrase's last word")->required();
  cmd_splice->add_option("--gap-ms", sp_gap)->capture_default_str();
  cmd_splice->add_option("--out", sp_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_build) return run_build(build);
    if (*cmd_serve) return run_serve(serve);
    if (*cmd_export) return run_export(export_dir, export_out);
    if (*cmd_sim) return run_simulate(simulate);
    if (*cmd_analyze) return run_analyze(analyze);
    if (*cmd_flatten) return run_flatten(flat_in, flat_out, flat_hz);
    if (*cmd_splice) return run_splice(sp_phrase, sp_word, sp_marker, sp_gap, sp_out);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
