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

#include "scatterqi/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "scatterqi/errors.hpp"

namespace scatterqi {
namespace {

constexpr double kPi = std::numbers::pi;
const double kHalf = 1.0 / std::sqrt(2.0);

PhotonPairSource source_with(double overlap, double mu) {
  PhotonPairSource s;
  s.rms_angular_bandwidth = 1e12;
  s.intrinsic_overlap = overlap;
  s.mean_pairs_per_pulse = mu;
  return s;
}

// Poisson-weighted series sum_k P(k; mu) q^k, summed term by term.
double poisson_generating(double mu, double q) {
  double term = std::exp(-mu), total = 0.0;
  for (int k = 0; k < 200; ++k) {
    total += term;
    term *= mu * q / (k + 1);
  }
  return total;
}

double binomial_sigma(double p, double n) { return std::sqrt(n * p * (1.0 - p)); }

TEST(MonteCarlo, VacuumGivesNoCounts) {
  const auto c = montecarlo_counts(ideal_circuit(0.5, 1.0), source_with(1.0, 0.0), 100000, 1);
  EXPECT_EQ(c.pulses, 100000u);
  EXPECT_EQ(c.singles_m, 0u);
  EXPECT_EQ(c.singles_n, 0u);
  EXPECT_EQ(c.coincidences, 0u);
}

TEST(MonteCarlo, DeterministicAndThreadIndependent) {
  const auto circuit = ideal_circuit(0.45, 2.0);
  const auto s = source_with(0.8, 0.3);
  const std::uint64_t n = 3 * 65536 + 1234;
  const auto a = montecarlo_counts(circuit, s, n, 77, 0.0, {}, 1);
  const auto b = montecarlo_counts(circuit, s, n, 77, 0.0, {}, 4);
  const auto c = montecarlo_counts(circuit, s, n, 77, 0.0, {}, 1);
  EXPECT_EQ(a.pulses, n);
  EXPECT_EQ(a.singles_m, b.singles_m);
  EXPECT_EQ(a.singles_n, b.singles_n);
  EXPECT_EQ(a.coincidences, b.coincidences);
  EXPECT_EQ(a.coincidences, c.coincidences);
  const auto d = montecarlo_counts(circuit, s, n, 78, 0.0, {}, 1);
  EXPECT_NE(a.singles_m, d.singles_m);
}

TEST(MonteCarlo, ClickProbabilitiesMatchPoissonSeries) {
  const auto circuit = ideal_circuit(0.4, 1.3);
  for (double mu : {0.01, 0.5, 3.0}) {
    for (double tau : {0.0, 3e-13}) {
      const auto s = source_with(0.9, mu);
      const auto p = outcome_distribution(circuit.sub_matrix, overlap_from_delay(s, tau));
      const double none_m = poisson_generating(mu, p.p02 + p.p01 + p.p00);
      const double none_n = poisson_generating(mu, p.p20 + p.p10 + p.p00);
      const double neither = poisson_generating(mu, p.p00);
      const auto c = click_probabilities(circuit, s, tau);
      EXPECT_NEAR(c.singles_m, 1.0 - none_m, 1e-13);
      EXPECT_NEAR(c.singles_n, 1.0 - none_n, 1e-13);
      EXPECT_NEAR(c.coincidence, 1.0 - none_m - none_n + neither, 1e-13);
    }
  }
}

TEST(MonteCarlo, CountsAgreeWithClickProbabilities) {
  const auto circuit = ideal_circuit(0.5, 0.0);
  const auto s = source_with(1.0, 0.2);
  const double n = 500000;
  const auto c = montecarlo_counts(circuit, s, 500000, 3);
  const auto p = click_probabilities(circuit, s);
  EXPECT_NEAR(c.singles_m, n * p.singles_m, 5.0 * binomial_sigma(p.singles_m, n));
  EXPECT_NEAR(c.singles_n, n * p.singles_n, 5.0 * binomial_sigma(p.singles_n, n));
  EXPECT_NEAR(c.coincidences, n * p.coincidence, 5.0 * binomial_sigma(p.coincidence, n));
}

TEST(MonteCarlo, LowPowerHomSuppressesCoincidences) {
  const auto circuit = ideal_circuit(kHalf, kPi);
  const double mu = 1e-3, n = 1e6;
  const auto c = montecarlo_counts(circuit, source_with(1.0, mu), 1000000, 5);
  // Only two-pair pulses can produce a coincidence: about mu^2 / 4 per pulse.
  EXPECT_LE(c.coincidences, 3u);
  const double singles = -std::expm1(-mu * 0.5);
  EXPECT_NEAR(c.singles_m, n * singles, 5.0 * binomial_sigma(singles, n));
  EXPECT_NEAR(c.singles_n, n * singles, 5.0 * binomial_sigma(singles, n));
}

TEST(MonteCarlo, ErrorShrinksAsInverseSquareRoot) {
  const auto circuit = ideal_circuit(0.5, 0.0);
  const auto s = source_with(1.0, 0.2);
  const double p = click_probabilities(circuit, s).coincidence;
  auto rms_error = [&](std::uint64_t pulses) {
    double sum = 0.0;
    const int seeds = 30;
    for (int i = 0; i < seeds; ++i) {
      const auto c = montecarlo_counts(circuit, s, pulses, 1000 + i);
      const double e = static_cast<double>(c.coincidences) / static_cast<double>(pulses) - p;
      sum += e * e;
    }
    return std::sqrt(sum / seeds);
  };
  const double small = rms_error(10000);
  const double large = rms_error(1000000);
  // Expected ratio 10; 30 seeds give about 13% scatter on each rms.
  EXPECT_GT(small / large, 10.0 / 1.6);
  EXPECT_LT(small / large, 10.0 * 1.6);
  EXPECT_NEAR(small, std::sqrt(p * (1.0 - p) / 10000.0), 0.4 * std::sqrt(p * (1.0 - p) / 10000.0));
}

TEST(MonteCarlo, DetectorEfficiencyScalesRows) {
  const auto circuit = ideal_circuit(0.5, 0.0);
  const auto s = source_with(1.0, 0.3);
  const Detectors eta{0.5, 0.8};
  ProgrammedCircuit scaled = circuit;
  scaled.sub_matrix.row(0) *= std::sqrt(0.5);
  scaled.sub_matrix.row(1) *= std::sqrt(0.8);
  const auto a = click_probabilities(circuit, s, 0.0, eta);
  const auto b = click_probabilities(scaled, s);
  EXPECT_NEAR(a.singles_m, b.singles_m, 1e-15);
  EXPECT_NEAR(a.coincidence, b.coincidence, 1e-15);
  const auto blind = montecarlo_counts(circuit, s, 10000, 1, 0.0, Detectors{0.0, 1.0});
  EXPECT_EQ(blind.singles_m, 0u);
  EXPECT_EQ(blind.coincidences, 0u);
  EXPECT_GT(blind.singles_n, 0u);
}

TEST(MonteCarlo, Errors) {
  const auto circuit = ideal_circuit(0.5, 0.0);
  EXPECT_THROW(montecarlo_counts(circuit, source_with(1.0, 0.1), 0, 1), InvalidArgument);
  EXPECT_THROW(montecarlo_counts(circuit, source_with(1.0, -0.1), 10, 1), InvalidArgument);
  EXPECT_THROW(montecarlo_counts(circuit, source_with(1.0, 101.0), 10, 1), InvalidArgument);
  EXPECT_THROW(montecarlo_counts(circuit, source_with(1.0, 0.1), 10, 1, 0.0, Detectors{1.5, 1.0}),
               InvalidArgument);
  EXPECT_THROW(montecarlo_visibility(circuit, source_with(1.0, 0.0), 1000, 1),
               UndefinedVisibility);
}

TEST(MonteCarlo, VisibilityAgreesWithClickModel) {
  for (double alpha : {0.0, kPi / 3, kPi}) {
    const auto circuit = ideal_circuit(0.9 * embeddability_bound(alpha), alpha);
    const auto s = source_with(0.86, 0.05);
    const auto v = montecarlo_visibility(circuit, s, 1000000, 11);
    const double r0 = click_probabilities(circuit, s, 0.0).coincidence;
    const double r1 = click_probabilities(circuit, s, reference_delay(s)).coincidence;
    EXPECT_GT(v.std_err, 0.0);
    EXPECT_NEAR(v.v, (r0 - r1) / r1, 4.0 * v.std_err) << "alpha " << alpha;
  }
}

}  // namespace
}  // namespace scatterqi
