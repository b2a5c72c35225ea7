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

#include "scatterqi/circuit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "scatterqi/angles.hpp"
#include "scatterqi/rng.hpp"

namespace scatterqi {
namespace {

constexpr double kPi = std::numbers::pi;
using C = std::complex<double>;

Eigen::Matrix2cd form(double t, double alpha) {
  Eigen::Matrix2cd b;
  b << t, t, t, std::polar(t, alpha);
  return b;
}

// diag(e^{i r}) B diag(e^{i c}): the phases a measurement cannot see.
Eigen::Matrix2cd gauge(const Eigen::Matrix2cd& b, double r0, double r1, double c0, double c1) {
  Eigen::Matrix2cd g = b;
  g.row(0) *= std::polar(1.0, r0);
  g.row(1) *= std::polar(1.0, r1);
  g.col(0) *= std::polar(1.0, c0);
  g.col(1) *= std::polar(1.0, c1);
  return g;
}

TEST(Circuit, RecoversFormThroughAnyGauge) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double t = 0.1 + 0.5 * rng.uniform();
    const double alpha = kTwoPi * rng.uniform() - kPi;
    const Eigen::Matrix2cd b = gauge(form(t, alpha), 6 * rng.uniform(), 6 * rng.uniform(),
                                     6 * rng.uniform(), 6 * rng.uniform());
    const ProgrammedCircuit c = circuit_from_block(b, alpha, 3, 7);
    EXPECT_NEAR(c.t_fit, t, 1e-14);
    EXPECT_NEAR(c.alpha_fit, alpha, 1e-12);
    EXPECT_EQ(c.alpha_set, alpha);
    EXPECT_EQ(c.output_m, 3u);
    EXPECT_EQ(c.output_n, 7u);
    EXPECT_TRUE(c.sub_matrix == b);
  }
}

TEST(Circuit, AlphaFitIsReportedNearTheSetBranch) {
  const auto c = circuit_from_block(form(0.3, kPi), kPi);
  EXPECT_NEAR(c.alpha_fit, kPi, 1e-15);
  const auto d = circuit_from_block(form(0.3, -0.1), kTwoPi - 0.1 + 0.05);
  EXPECT_NEAR(d.alpha_fit, kTwoPi - 0.1, 1e-14);
  const auto e = circuit_from_block(form(0.3, 0.2), -kTwoPi);
  EXPECT_NEAR(e.alpha_fit, 0.2 - kTwoPi, 1e-14);
}

TEST(Circuit, SingularValuesOfTheForm) {
  for (int i = 0; i <= 16; ++i) {
    const double alpha = kTwoPi * i / 16.0;
    const double t = 0.4;
    const double h = std::abs(std::cos(alpha / 2));
    const auto c = circuit_from_block(form(t, alpha), alpha);
    EXPECT_NEAR(c.largest_singular_value, t * std::sqrt(2 + 2 * h), 1e-14);
    EXPECT_NEAR(c.smallest_singular_value, t * std::sqrt(std::max(0.0, 2 - 2 * h)), 1e-7);
    EXPECT_TRUE(c.embeddable());
  }
}

TEST(Circuit, EmbeddabilityThreshold) {
  ProgrammedCircuit c = circuit_from_block(form(0.5, 0.0), 0.0);
  EXPECT_NEAR(c.largest_singular_value, 1.0, 1e-15);
  EXPECT_TRUE(c.embeddable());
  c.largest_singular_value = 1.0 + 0.5e-9;
  EXPECT_TRUE(c.embeddable());
  c.largest_singular_value = 1.0 + 2e-9;
  EXPECT_FALSE(c.embeddable());
  EXPECT_FALSE(circuit_from_block(form(0.6, 0.0), 0.0).embeddable());
}

TEST(Circuit, UnequalMagnitudesAverage) {
  Eigen::Matrix2cd b;
  b << 0.1, C(0, 0.2), -0.3, C(0.4, 0);
  const auto c = circuit_from_block(b, 0.0);
  EXPECT_NEAR(c.t_fit, 0.25, 1e-15);
  // Cross ratio: arg(0.1 * 0.4 / (0.2i * -0.3)) = arg(i * 2/3) = pi / 2.
  EXPECT_NEAR(c.alpha_fit, kPi / 2, 1e-15);
}

}  // namespace
}  // namespace scatterqi
