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

#include "revcor/analysis/pipeline.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "common/text.hpp"
#include "revcor/error.hpp"
#include "revcor/profile/profile_io.hpp"
#include "support/fixtures.hpp"
#include "support/recovery.hpp"

namespace revcor::analysis {
namespace {

namespace fs = std::filesystem;
using profile::TaskKind;

struct Dataset {
  std::string profiles_csv;
  std::string responses_csv;
  std::vector<experiment::Session> sessions;
};

// Simulated participants written through the same CSV formats the
// experiment module emits.
Dataset simulate_csv(std::size_t participants, std::size_t trials, TaskKind kind,
                     const sim::LinearTemplateObserver& o) {
  Dataset d;
  auto stim = testing::profile_only_stimulus(kind);
  stim.option_labels = {"pill", "peel"};
  for (std::size_t p = 0; p < participants; ++p) {
    experiment::SessionOptions opt;
    opt.n_trials = trials;
    opt.master_seed = 100 + p;
    opt.participant_id = fmt::format("p{:02}", p);
    auto s = experiment::plan_session(stim, opt);
    Rng rng(p);
    s.responses = sim::simulate_session(o, s, rng);
    std::vector<profile::TrialProfile> rows;
    for (const auto& t : s.trials) rows.push_back({t.trial_index, t.profile});
    const auto pc = profile::profiles_to_csv(s.session_id, rows);
    const auto rc = experiment::export_responses(s);
    d.profiles_csv += p == 0 ? pc : pc.substr(pc.find('\n') + 1);
    d.responses_csv += p == 0 ? rc : rc.substr(rc.find('\n') + 1);
    d.sessions.push_back(std::move(s));
  }
  return d;
}

sim::LinearTemplateObserver word_observer() {
  return testing::standardised_observer({1, 0.5, -0.5, -1}, {-0.5, 1, 1, -0.5},
                                        profile::SamplingSpec::for_task(TaskKind::word));
}

TEST(Analyze, CsvRoundTripMatchesDirectComputation) {
  testing::TempDir dir;
  const auto d = simulate_csv(6, 200, TaskKind::word, word_observer());
  detail::write_file_atomic(dir.path() / "profiles.csv", d.profiles_csv);
  detail::write_file_atomic(dir.path() / "responses.csv", d.responses_csv);

  ProfileStore store;
  read_profiles_csv(dir.path() / "profiles.csv", store);
  const auto rows = read_responses_csv(dir.path() / "responses.csv");
  ASSERT_EQ(store.size(), 6u);
  ASSERT_EQ(rows.size(), 1200u);
  const auto result = analyze(store, rows);

  // Default label order is sorted, not the stimulus order.
  EXPECT_EQ(result.labels, (Labels{"peel", "pill"}));
  ASSERT_EQ(result.kernels.size(), 6u);
  for (std::size_t p = 0; p < 6; ++p) {
    const auto& s = d.sessions[p];
    const auto direct = compute_kernels(s.participant_id, profile_table(s), s.responses, result.labels);
    EXPECT_EQ(result.kernels[p].participant_id, s.participant_id);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(result.kernels[p].pitch.a[k], direct.pitch.a[k], 1e-12);
      EXPECT_NEAR(result.kernels[p].rate.b[k], direct.rate.b[k], 1e-12);
    }
  }
  EXPECT_EQ(result.pitch.n_participants, 6u);
  EXPECT_EQ(result.overall.n_trials, 1200u);
  EXPECT_EQ(result.per_group_bias.size(), 6u);
}

TEST(Analyze, ExplicitLabelsSwapKernels) {
  const auto d = simulate_csv(3, 100, TaskKind::word, word_observer());
  testing::TempDir dir;
  detail::write_file_atomic(dir.path() / "p.csv", d.profiles_csv);
  detail::write_file_atomic(dir.path() / "r.csv", d.responses_csv);
  ProfileStore store;
  read_profiles_csv(dir.path() / "p.csv", store);
  const auto rows = read_responses_csv(dir.path() / "r.csv");
  AnalysisOptions opt;
  opt.labels = Labels{"pill", "peel"};
  const auto swapped = analyze(store, rows, opt);
  const auto sorted = analyze(store, rows);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(swapped.pitch.segments[k].mean_a, sorted.pitch.segments[k].mean_b, 1e-12);
    EXPECT_NEAR(swapped.rate.segments[k].t, -sorted.rate.segments[k].t, 1e-9);
  }
}

TEST(Analyze, ParticipantAcrossSessionsIsPooled) {
  const auto o = word_observer();
  const auto d = simulate_csv(4, 80, TaskKind::word, o);
  testing::TempDir dir;
  detail::write_file_atomic(dir.path() / "p.csv", d.profiles_csv);
  // Relabel sessions 0/1 and 2/3 as the same two participants.
  std::string responses;
  for (std::size_t p = 0; p < 4; ++p) {
    const auto csv = experiment::export_responses([&] {
      auto s = d.sessions[p];
      s.participant_id = p < 2 ? "alice" : "bob";
      return s;
    }());
    responses += p == 0 ? csv : csv.substr(csv.find('\n') + 1);
  }
  detail::write_file_atomic(dir.path() / "r.csv", responses);
  ProfileStore store;
  read_profiles_csv(dir.path() / "p.csv", store);
  const auto rows = read_responses_csv(dir.path() / "r.csv");

  const auto by_participant = analyze(store, rows);
  ASSERT_EQ(by_participant.kernels.size(), 2u);
  EXPECT_EQ(by_participant.kernels[0].participant_id, "alice");
  EXPECT_EQ(by_participant.kernels[0].n_trials, 160u);

  AnalysisOptions opt;
  opt.group_by = GroupBy::session;
  EXPECT_EQ(analyze(store, rows, opt).kernels.size(), 4u);
}

TEST(Analyze, JsonProfilesEquivalentToCsv) {
  testing::TempDir dir;
  const auto d = simulate_csv(2, 50, TaskKind::phrase, testing::standardised_observer(
      std::vector<double>(13, 1.0), std::vector<double>(13, 0.0),
      profile::SamplingSpec::for_task(TaskKind::phrase)));
  detail::write_file_atomic(dir.path() / "p.csv", d.profiles_csv);
  fs::create_directories(dir.path() / "json");
  for (const auto& s : d.sessions) {
    for (const auto& t : s.trials) {
      detail::write_file_atomic(
          dir.path() / "json" / fmt::format("{}_{:04}.json", s.session_id, t.trial_index),
          profile::profile_to_json({t.trial_index, t.profile}, s.session_id));
    }
  }
  ProfileStore from_csv, from_json;
  read_profiles_csv(dir.path() / "p.csv", from_csv);
  read_profiles_json(dir.path() / "json", from_json);
  ASSERT_EQ(from_csv.size(), from_json.size());
  for (const auto& [sid, table] : from_csv) {
    ASSERT_EQ(table.size(), from_json.at(sid).size());
    for (const auto& [i, v] : table) {
      EXPECT_EQ(v.pitch, from_json.at(sid).at(i).pitch);
      EXPECT_EQ(v.stretch, from_json.at(sid).at(i).stretch);
    }
  }
}

TEST(Analyze, Errors) {
  const auto d = simulate_csv(2, 40, TaskKind::word, word_observer());
  testing::TempDir dir;
  detail::write_file_atomic(dir.path() / "p.csv", d.profiles_csv);
  detail::write_file_atomic(dir.path() / "r.csv", d.responses_csv);
  ProfileStore store;
  read_profiles_csv(dir.path() / "p.csv", store);
  auto rows = read_responses_csv(dir.path() / "r.csv");

  EXPECT_THROW(analyze(store, std::vector<ResponseRow>{}), Error);
  EXPECT_THROW(analyze(ProfileStore{}, rows), Error);

  auto missing = rows;
  missing[0].record.trial_index = 999;
  EXPECT_THROW(analyze(store, missing), Error);

  auto three = rows;
  three[0].record.choice = "pall";
  EXPECT_THROW(analyze(store, three), Error);

  auto single = rows;
  single.resize(40);  // one participant
  EXPECT_THROW(analyze(store, single), Error);

  // Duplicate profile rows are rejected on read.
  EXPECT_THROW(read_profiles_csv(dir.path() / "p.csv", store), Error);
}

TEST(ReadTables, MalformedCsv) {
  testing::TempDir dir;
  detail::write_file_atomic(dir.path() / "a.csv", "session_id,trial_index\ns,0\n");
  ProfileStore store;
  EXPECT_THROW(read_profiles_csv(dir.path() / "a.csv", store), Error);
  detail::write_file_atomic(dir.path() / "b.csv",
                            "session_id,trial_index,seed,pitch_0,stretch_0\ns,0,1,2\n");
  EXPECT_THROW(read_profiles_csv(dir.path() / "b.csv", store), Error);
  detail::write_file_atomic(dir.path() / "c.csv", "session_id,choice\ns,a\n");
  EXPECT_THROW(read_responses_csv(dir.path() / "c.csv"), Error);
  EXPECT_THROW(read_responses_csv(dir.path() / "none.csv"), Error);
}

}  // namespace
}  // namespace revcor::analysis
