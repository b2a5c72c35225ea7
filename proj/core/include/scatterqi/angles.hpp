// Copyright 2026 The scatterqi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCATTERQI_ANGLES_HPP
#define SCATTERQI_ANGLES_HPP

#include <cmath>
#include <numbers>

namespace scatterqi {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps to [0, 2 pi).
inline double wrap_phase(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Maps to (-pi, pi].
inline double wrap_signed(double phi) {
  double r = wrap_phase(phi);
  if (r > std::numbers::pi) r -= kTwoPi;
  return r;
}

// Smallest absolute angular distance between a and b, in [0, pi].
inline double angular_distance(double a, double b) { return std::abs(wrap_signed(a - b)); }

}  // namespace scatterqi

#endif  // SCATTERQI_ANGLES_HPP
