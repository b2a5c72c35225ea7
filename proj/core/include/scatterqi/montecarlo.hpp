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

#ifndef SCATTERQI_MONTECARLO_HPP
#define SCATTERQI_MONTECARLO_HPP

#include <cstdint>

#include "scatterqi/circuit.hpp"
#include "scatterqi/source.hpp"
#include "scatterqi/twophoton.hpp"

namespace scatterqi {

// Per-detector efficiency; a photon reaching output m is registered with
// probability efficiency_m. Equivalent to scaling the block rows by sqrt(eta).
struct Detectors {
  double efficiency_m = 1.0;
  double efficiency_n = 1.0;
};

struct PulseCounts {
  std::uint64_t pulses = 0;
  std::uint64_t singles_m = 0;
  std::uint64_t singles_n = 0;
  std::uint64_t coincidences = 0;
};

// Pulsed photon counting. Each pulse carries Poisson(mu) pairs; pairs are
// mutually distinguishable, the two photons of one pair have overlap
// overlap_from_delay(source, delay). Detectors do not resolve photon number:
// a click at m means at least one photon at m in that pulse, a coincidence
// means clicks at m and n in the same pulse.
//
// Pulses are processed in fixed blocks of 65536, block b drawing from
// Rng::substream(seed, b), so counts do not depend on `threads`.
PulseCounts montecarlo_counts(const ProgrammedCircuit& circuit, const PhotonPairSource& source,
                              std::uint64_t n_pulses, std::uint64_t seed, double delay_s = 0.0,
                              const Detectors& detectors = {}, unsigned threads = 1);

struct ClickProbabilities {
  double singles_m = 0.0;
  double singles_n = 0.0;
  double coincidence = 0.0;
};

// Exact per-pulse click probabilities of the model above. With q_m the
// single-pair probability of no photon at m (and q_n, q_0 likewise),
// summing the Poisson series gives
//   P(click m)      = 1 - exp(-mu (1 - q_m))
//   P(coincidence)  = 1 - exp(-mu (1 - q_m)) - exp(-mu (1 - q_n)) + exp(-mu (1 - q_0)).
ClickProbabilities click_probabilities(const ProgrammedCircuit& circuit,
                                       const PhotonPairSource& source, double delay_s = 0.0,
                                       const Detectors& detectors = {});

// Visibility from two Monte Carlo runs, zero delay and reference_delay(source),
// on independent substreams of `seed`. std_err from Poisson count statistics.
VisibilityResult montecarlo_visibility(const ProgrammedCircuit& circuit,
                                       const PhotonPairSource& source, std::uint64_t n_pulses,
                                       std::uint64_t seed, const Detectors& detectors = {},
                                       unsigned threads = 1);

}  // namespace scatterqi

#endif  // SCATTERQI_MONTECARLO_HPP
