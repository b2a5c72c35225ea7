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

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "scatterqi/errors.hpp"
#include "scatterqi/parallel.hpp"
#include "scatterqi/rng.hpp"

namespace scatterqi {

namespace {

constexpr std::uint64_t kBlockPulses = 65536;

Eigen::Matrix2cd detected_block(const ProgrammedCircuit& circuit, const Detectors& detectors) {
  auto check = [](double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw InvalidArgument("detector efficiency must lie in [0, 1]");
    }
  };
  check(detectors.efficiency_m);
  check(detectors.efficiency_n);
  Eigen::Matrix2cd block = circuit.sub_matrix;
  block.row(0) *= std::sqrt(detectors.efficiency_m);
  block.row(1) *= std::sqrt(detectors.efficiency_n);
  return block;
}

OutcomeDistribution pair_outcomes(const ProgrammedCircuit& circuit,
                                  const PhotonPairSource& source, double delay_s,
                                  const Detectors& detectors) {
  source.validate();
  if (source.mean_pairs_per_pulse > 100.0) {
    throw InvalidArgument("mean pairs per pulse above 100 is outside the counting model");
  }
  return outcome_distribution(detected_block(circuit, detectors),
                              overlap_from_delay(source, delay_s));
}

}  // namespace

PulseCounts montecarlo_counts(const ProgrammedCircuit& circuit, const PhotonPairSource& source,
                              std::uint64_t n_pulses, std::uint64_t seed, double delay_s,
                              const Detectors& detectors, unsigned threads) {
  if (n_pulses < 1) throw InvalidArgument("need at least one pulse");
  const OutcomeDistribution p = pair_outcomes(circuit, source, delay_s, detectors);
  const double mu = source.mean_pairs_per_pulse;

  // Outcome order: 20, 02, 11, 10, 01, 00.
  const std::array<double, 5> cumulative = {
      p.p20, p.p20 + p.p02, p.p20 + p.p02 + p.p11, p.p20 + p.p02 + p.p11 + p.p10,
      p.p20 + p.p02 + p.p11 + p.p10 + p.p01};
  constexpr std::array<bool, 6> hits_m = {true, false, true, true, false, false};
  constexpr std::array<bool, 6> hits_n = {false, true, true, false, true, false};

  const std::uint64_t blocks = (n_pulses + kBlockPulses - 1) / kBlockPulses;
  std::vector<PulseCounts> partial(blocks);
  parallel_for(static_cast<std::size_t>(blocks), threads, [&](std::size_t b) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(b));
    const std::uint64_t begin = b * kBlockPulses;
    const std::uint64_t end = std::min(n_pulses, begin + kBlockPulses);
    PulseCounts c;
    c.pulses = end - begin;
    for (std::uint64_t pulse = begin; pulse < end; ++pulse) {
      const std::uint64_t pairs = rng.poisson(mu);
      bool click_m = false;
      bool click_n = false;
      for (std::uint64_t i = 0; i < pairs; ++i) {
        const double u = rng.uniform();
        std::size_t outcome = 0;
        while (outcome < cumulative.size() && u >= cumulative[outcome]) ++outcome;
        click_m = click_m || hits_m[outcome];
        click_n = click_n || hits_n[outcome];
      }
      c.singles_m += click_m;
      c.singles_n += click_n;
      c.coincidences += click_m && click_n;
    }
    partial[b] = c;
  });

  PulseCounts total;
  for (const auto& c : partial) {
    total.pulses += c.pulses;
    total.singles_m += c.singles_m;
    total.singles_n += c.singles_n;
    total.coincidences += c.coincidences;
  }
  return total;
}

ClickProbabilities click_probabilities(const ProgrammedCircuit& circuit,
                                       const PhotonPairSource& source, double delay_s,
                                       const Detectors& detectors) {
  const OutcomeDistribution p = pair_outcomes(circuit, source, delay_s, detectors);
  const double mu = source.mean_pairs_per_pulse;
  const double none_m = p.p02 + p.p01 + p.p00;
  const double none_n = p.p20 + p.p10 + p.p00;
  ClickProbabilities c;
  c.singles_m = -std::expm1(-mu * (1.0 - none_m));
  c.singles_n = -std::expm1(-mu * (1.0 - none_n));
  // P(m and n) = P(m) + P(n) - P(m or n).
  const double either = -std::expm1(-mu * (1.0 - p.p00));
  c.coincidence = std::max(0.0, c.singles_m + c.singles_n - either);
  return c;
}

VisibilityResult montecarlo_visibility(const ProgrammedCircuit& circuit,
                                       const PhotonPairSource& source, std::uint64_t n_pulses,
                                       std::uint64_t seed, const Detectors& detectors,
                                       unsigned threads) {
  const PulseCounts indist = montecarlo_counts(circuit, source, n_pulses,
                                               derive_seed(seed, stream_key("indistinguishable")),
                                               0.0, detectors, threads);
  const PulseCounts dist = montecarlo_counts(circuit, source, n_pulses,
                                             derive_seed(seed, stream_key("distinguishable")),
                                             reference_delay(source), detectors, threads);
  const double ci = static_cast<double>(indist.coincidences);
  const double cd = static_cast<double>(dist.coincidences);
  if (cd <= 0.0) {
    throw UndefinedVisibility("no coincidences recorded at the reference delay");
  }
  // Poisson errors on both counts, propagated through (ci - cd) / cd.
  const double err = std::sqrt(ci / (cd * cd) + ci * ci / (cd * cd * cd));
  return visibility(ci, cd, err);
}

}  // namespace scatterqi
