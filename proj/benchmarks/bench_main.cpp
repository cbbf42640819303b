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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "revcor/analysis/pipeline.hpp"
#include "revcor/dsp/stft.hpp"
#include "revcor/dsp/vocoder.hpp"
#include "revcor/experiment/session.hpp"
#include "revcor/profile/random.hpp"
#include "revcor/sim/observer.hpp"

namespace {

using namespace revcor;

dsp::AudioBuffer tone(double seconds) {
  dsp::AudioBuffer a;
  a.samples.resize(static_cast<std::size_t>(seconds * a.sample_rate));
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double t = static_cast<double>(i) / a.sample_rate;
    for (int h = 1; h <= 8; ++h) {
      a.samples[i] += 0.3 / h * std::sin(2.0 * std::numbers::pi * 150.0 * h * t);
    }
  }
  return a;
}

void BM_StftRoundTrip(benchmark::State& state) {
  const auto x = tone(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(dsp::istft(dsp::stft(x)));
}
BENCHMARK(BM_StftRoundTrip)->Unit(benchmark::kMillisecond);

// One trial render of a word-length stimulus, as done 250 times per build.
void BM_RenderWordTrial(benchmark::State& state) {
  const auto x = tone(0.45);
  const auto p = profile::sample_profile(
      profile::SamplingSpec::for_task(profile::TaskKind::word, state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(experiment::render_trial(x, p));
}
BENCHMARK(BM_RenderWordTrial)->Arg(1)->Unit(benchmark::kMillisecond);

// 25 simulated participants x 250 phrase trials, from tables to group stats.
void BM_AnalyzePhraseGroup(benchmark::State& state) {
  experiment::StimulusSet stim;
  stim.id = "bench";
  stim.kind = profile::TaskKind::phrase;
  stim.option_labels = {"A", "B"};
  sim::LinearTemplateObserver o;
  o.pitch_template.assign(13, 0.01);
  o.rate_template.assign(13, 1.0);
  o.noise_sd = 1.0;

  analysis::ProfileStore store;
  std::vector<analysis::ResponseRow> rows;
  for (std::size_t p = 0; p < 25; ++p) {
    experiment::SessionOptions opt;
    opt.master_seed = p + 1;
    opt.participant_id = "p" + std::to_string(p);
    opt.session_id = "s" + std::to_string(p);
    const auto s = experiment::plan_session(stim, opt);
    store[s.session_id] = analysis::profile_table(s);
    Rng rng(splitmix64(p));
    for (auto& r : sim::simulate_session(o, s, rng)) {
      rows.push_back({s.session_id, s.participant_id, stim.id, "ab", r});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(analysis::analyze(store, rows));
}
BENCHMARK(BM_AnalyzePhraseGroup)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
