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

#include "revcor/dsp/curve.hpp"

#include <algorithm>
#include <cmath>

#include "revcor/error.hpp"

namespace revcor::dsp {

Curve::Curve(std::vector<Breakpoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].time_s) || !std::isfinite(points_[i].value)) {
      throw Error(Errc::invalid_argument, "breakpoint is not finite");
    }
    if (i > 0 && points_[i].time_s <= points_[i - 1].time_s) {
      throw Error(Errc::invalid_argument,
                  "breakpoint times must be strictly increasing");
    }
  }
}

Curve Curve::constant(double value) { return Curve({{0.0, value}}); }

double Curve::operator()(double t) const noexcept {
  if (points_.empty()) return 0.0;
  if (t <= points_.front().time_s) return points_.front().value;
  if (t >= points_.back().time_s) return points_.back().value;
  const auto hi = std::upper_bound(
      points_.begin(), points_.end(), t,
      [](double x, const Breakpoint& p) { return x < p.time_s; });
  const auto lo = hi - 1;
  const double frac = (t - lo->time_s) / (hi->time_s - lo->time_s);
  return lo->value + frac * (hi->value - lo->value);
}

double Curve::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& p : points_) m = std::max(m, std::abs(p.value));
  return m;
}

}  // namespace revcor::dsp
