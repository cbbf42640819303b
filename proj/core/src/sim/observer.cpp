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

#include "revcor/sim/observer.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>

#include "revcor/error.hpp"

namespace revcor::sim {
using nlohmann::json;

void LinearTemplateObserver::validate() const {
  if (pitch_template.size() != rate_template.size()) {
    throw Error(Errc::invalid_argument, "pitch and rate templates differ in length");
  }
  if (!(noise_sd >= 0.0)) throw Error(Errc::invalid_argument, "noise_sd must be >= 0");
}

LinearTemplateObserver observer_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    LinearTemplateObserver o;
    o.pitch_template = doc.at("pitch_template").get<std::vector<double>>();
    o.rate_template = doc.at("rate_template").get<std::vector<double>>();
    o.noise_sd = doc.value("noise_sd", 0.0);
    o.bias = doc.value("bias", 0.0);
    o.validate();
    return o;
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("bad observer JSON: ") + e.what());
  }
}

std::string observer_to_json(const LinearTemplateObserver& o) {
  const json doc = {{"pitch_template", o.pitch_template},
                    {"rate_template", o.rate_template},
                    {"noise_sd", o.noise_sd},
                    {"bias", o.bias}};
  return doc.dump(2) + "\n";
}

Choice decide(const LinearTemplateObserver& observer, const profile::TransformProfile& profile,
              Rng& rng) {
  observer.validate();
  if (profile.pitch_points.size() != observer.dim() ||
      profile.stretch_points.size() != observer.dim()) {
    throw Error(Errc::invalid_argument, "observer template and profile dimensions differ");
  }
  double d = observer.bias;
  for (std::size_t k = 0; k < observer.dim(); ++k) {
    d += observer.pitch_template[k] * profile.pitch_points[k].value;
    d += observer.rate_template[k] * profile.stretch_points[k].value;
  }
  d += observer.noise_sd * rng.gaussian();
  return d > 0.0 ? Choice::option_a : Choice::option_b;
}

std::vector<experiment::ResponseRecord> simulate_session(const LinearTemplateObserver& observer,
                                                         const experiment::Session& session,
                                                         Rng& rng) {
  std::vector<experiment::ResponseRecord> out;
  out.reserve(session.trials.size());
  const auto& labels = session.stimulus.option_labels;
  for (const auto& trial : session.trials) {
    const auto choice = decide(observer, trial.profile, rng);
    out.push_back({trial.trial_index, choice == Choice::option_a ? labels[0] : labels[1], 0.0, {}});
  }
  return out;
}

double saturated_gaussian_sd(double sigma, double clip_sigmas) {
  // E[min(Z^2, c^2)] = P(|Z| < c) - 2 c phi(c) + c^2 P(|Z| > c)
  const double c = clip_sigmas;
  const double phi = std::exp(-0.5 * c * c) / std::sqrt(2.0 * std::numbers::pi);
  const double inside = std::erf(c / std::numbers::sqrt2);
  return sigma * std::sqrt(inside - 2.0 * c * phi + c * c * (1.0 - inside));
}

double template_response_sd(const LinearTemplateObserver& observer,
                            const profile::SamplingSpec& spec) {
  const double sp = saturated_gaussian_sd(spec.pitch_sigma_cents, spec.clip_sigmas);
  const double sr = saturated_gaussian_sd(spec.rate_sigma_log2, spec.clip_sigmas);
  double var = 0.0;
  for (double w : observer.pitch_template) var += w * w * sp * sp;
  for (double w : observer.rate_template) var += w * w * sr * sr;
  return std::sqrt(var);
}

}  // namespace revcor::sim
