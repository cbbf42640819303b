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

#include <span>
#include <vector>

namespace revcor::dsp {

struct Breakpoint {
  double time_s = 0.0;
  double value = 0.0;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Breakpoint function: linear between points, held constant before the
// first and after the last. An empty curve evaluates to zero everywhere.
class Curve {
 public:
  Curve() = default;
  explicit Curve(std::vector<Breakpoint> points);

  static Curve constant(double value);

  double operator()(double t) const noexcept;
  double max_abs() const noexcept;
  bool is_zero() const noexcept { return max_abs() == 0.0; }
  std::span<const Breakpoint> points() const noexcept { return points_; }

 private:
  std::vector<Breakpoint> points_;
};

}  // namespace revcor::dsp
