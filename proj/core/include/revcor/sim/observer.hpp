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
#include <string>
#include <string_view>
#include <vector>

#include "revcor/experiment/session.hpp"
#include "revcor/profile/profile.hpp"
#include "revcor/profile/random.hpp"

namespace revcor::sim {

enum class Choice { option_a, option_b };

// Listener whose decision variable is a fixed linear read-out of the raw
// profile values (cents and log2 units) plus Gaussian internal noise:
//   d = pitch_template . pitch + rate_template . stretch + noise_sd * z + bias
// and who answers option A when d > 0.
struct LinearTemplateObserver {
  std::vector<double> pitch_template;
  std::vector<double> rate_template;
  double noise_sd = 0.0;
  double bias = 0.0;

  void validate() const;
  std::size_t dim() const noexcept { return pitch_template.size(); }
};

// {pitch_template: [...], rate_template: [...], noise_sd, bias}
LinearTemplateObserver observer_from_json(std::string_view text);
std::string observer_to_json(const LinearTemplateObserver& observer);

// One Gaussian draw is consumed per decision, including when noise_sd is 0.
Choice decide(const LinearTemplateObserver& observer,
              const profile::TransformProfile& profile, Rng& rng);

// One response per trial, in trial order, with rt_ms = 0 and an empty
// timestamp.
std::vector<experiment::ResponseRecord> simulate_session(
    const LinearTemplateObserver& observer, const experiment::Session& session, Rng& rng);

// Standard deviation of a N(0, sigma) draw saturated at +/- clip_sigmas * sigma.
double saturated_gaussian_sd(double sigma, double clip_sigmas);

// Standard deviation of the noise-free part of the decision variable when
// profiles are drawn according to `spec`.
double template_response_sd(const LinearTemplateObserver& observer,
                            const profile::SamplingSpec& spec);

}  // namespace revcor::sim
