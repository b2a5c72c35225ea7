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

#ifndef SCATTERQI_SINE_FIT_HPP
#define SCATTERQI_SINE_FIT_HPP

#include <span>

namespace scatterqi {

// y = offset + amplitude * sin(x + phase), amplitude >= 0, phase in (-pi, pi].
struct SineFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  // Standard error of the amplitude from the residual variance; zero when the
  // fit is exactly determined (three points).
  double amplitude_std_err = 0.0;
  double residual_rms = 0.0;
};

// Linear least squares on the basis {1, sin x, cos x}.
// Throws InvalidArgument for fewer than three points or mismatched spans and
// DegenerateFit when the basis is rank deficient on the sample (e.g. all x
// equal modulo 2 pi).
SineFit fit_sine(std::span<const double> x, std::span<const double> y);

// Evaluates a fitted sinusoid at x.
double evaluate(const SineFit& fit, double x);

}  // namespace scatterqi

#endif  // SCATTERQI_SINE_FIT_HPP
