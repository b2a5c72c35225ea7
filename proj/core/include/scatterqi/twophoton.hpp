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

#ifndef SCATTERQI_TWOPHOTON_HPP
#define SCATTERQI_TWOPHOTON_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "scatterqi/circuit.hpp"
#include "scatterqi/medium.hpp"
#include "scatterqi/source.hpp"

namespace scatterqi {

// Photon-number outcomes at outputs (m, n) for one photon in each of k and l.
// p10 means one photon at m and none at n (the other one lost to an
// unselected channel); p00 means both lost.
struct OutcomeDistribution {
  double p20 = 0.0;
  double p02 = 0.0;
  double p11 = 0.0;
  double p10 = 0.0;
  double p01 = 0.0;
  double p00 = 0.0;

  double sum() const { return p20 + p02 + p11 + p10 + p01 + p00; }
};

// Largest t for which t [[1, 1], [1, exp(i alpha)]] has singular values <= 1,
// i.e. embeds in a unitary: 1 / sqrt(2 + 2 |cos(alpha / 2)|).
double embeddability_bound(double alpha);

// Closed-form outcome probabilities of the circuit t [[1, 1], [1, exp(i alpha)]]
// for indistinguishable photons:
//   p20 = p02 = 2 t^4
//   p11       = 2 t^4 (1 + cos alpha)
//   p10 = p01 = 2 t^2 - 2 t^4 (3 + cos alpha)
//   p00       = 1 - 4 t^2 + 2 t^4 (3 + cos alpha)
// Throws DomainError when t exceeds embeddability_bound(alpha). Negative
// values at the level of rounding (>= -1e-12) on the boundary are reported
// as zero.
OutcomeDistribution eq2_probabilities(double t, double alpha);

// Same outcome set for an arbitrary embeddable 2x2 block (rows m, n; columns
// k, l) at indistinguishability overlap x in [0, 1]. Losses are evaluated
// through the column orthogonality of any unitary completion, so the result
// does not depend on which completion is chosen.
OutcomeDistribution outcome_distribution(const Eigen::Matrix2cd& block, double overlap);

// Halmos dilation [[A, sqrt(1 - A A^dagger)], [sqrt(1 - A^dagger A), -A^dagger]].
// Throws DomainError if A is not a contraction.
Eigen::Matrix4cd unitary_completion(const Eigen::Matrix2cd& block);

// Exact permanent by Ryser's inclusion-exclusion formula with Gray-code
// ordering, O(2^n n). Square matrices up to 20 x 20.
Complex permanent(const Eigen::MatrixXcd& matrix);

// Probability of detecting one photon in m and one in n given single photons
// in k and l with overlap x:
//   |T_mk T_nl|^2 + |T_ml T_nk|^2 + 2 x Re(T_mk T_nl conj(T_ml T_nk))   (m != n)
//   |T_mk T_ml|^2 (1 + x)                                            (m == n)
double two_photon_coincidence(const ComplexMatrix& matrix, std::size_t k, std::size_t l,
                              std::size_t m, std::size_t n, double overlap);
double two_photon_coincidence(const TransmissionMatrix& matrix, std::size_t k, std::size_t l,
                              std::size_t m, std::size_t n, double overlap);

// The circuit t [[1, 1], [1, exp(i alpha)]] itself, as a conventional device
// would realize it. Throws DomainError when not embeddable.
ProgrammedCircuit ideal_circuit(double t, double alpha);

struct VisibilityResult {
  double v = 0.0;
  double r_dist = 0.0;
  double r_indist = 0.0;
  double std_err = 0.0;
};

// V = (r_indist - r_dist) / r_dist; negative for a dip, positive for a peak.
VisibilityResult visibility(double r_indist, double r_dist, double std_err = 0.0);

struct CoincidenceScan {
  std::vector<double> delays;
  // Per-pair probabilities (noiseless single-pair model).
  std::vector<double> coincidence_rate;
  std::vector<double> singles_m;
  std::vector<double> singles_n;
};

CoincidenceScan hom_scan(const ProgrammedCircuit& circuit, const PhotonPairSource& source,
                         std::span<const double> delays);

// Coincidence visibility between zero delay and reference_delay(source).
VisibilityResult hom_visibility(const ProgrammedCircuit& circuit, const PhotonPairSource& source);

}  // namespace scatterqi

#endif  // SCATTERQI_TWOPHOTON_HPP
