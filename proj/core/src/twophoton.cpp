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

#include "scatterqi/twophoton.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "scatterqi/errors.hpp"

namespace scatterqi {

namespace {

constexpr double kRoundingFloor = -1e-12;
constexpr double kContractionSlack = 1e-9;

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

double clean(double p) { return (p < 0.0 && p >= kRoundingFloor) ? 0.0 : p; }

void check_overlap(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("overlap must lie in [0, 1]");
}

double largest_singular_value(const Eigen::Matrix2cd& block) {
  return Eigen::JacobiSVD<Eigen::Matrix2cd>(block).singularValues()(0);
}

void require_contraction(const Eigen::Matrix2cd& block) {
  const double s = largest_singular_value(block);
  if (s > 1.0 + kContractionSlack) {
    throw DomainError("circuit is not embeddable: largest singular value " + shortest(s) +
                      " exceeds 1");
  }
}

}  // namespace

double embeddability_bound(double alpha) {
  return 1.0 / std::sqrt(2.0 + 2.0 * std::abs(std::cos(0.5 * alpha)));
}

OutcomeDistribution eq2_probabilities(double t, double alpha) {
  if (!std::isfinite(t) || !std::isfinite(alpha) || t < 0.0) {
    throw InvalidArgument("t must be finite and nonnegative, alpha finite");
  }
  const double bound = embeddability_bound(alpha);
  if (t > bound) {
    throw DomainError("non-embeddable circuit: t = " + shortest(t) +
                      " exceeds the embeddability bound t <= " + shortest(bound) +
                      " at alpha = " + shortest(alpha));
  }
  const double t2 = t * t;
  const double t4 = t2 * t2;
  const double c = std::cos(alpha);
  OutcomeDistribution d;
  d.p20 = 2.0 * t4;
  d.p02 = 2.0 * t4;
  d.p11 = clean(2.0 * t4 * (1.0 + c));
  d.p10 = clean(2.0 * t2 - 2.0 * t4 * (3.0 + c));
  d.p01 = d.p10;
  d.p00 = clean(1.0 - 4.0 * t2 + 2.0 * t4 * (3.0 + c));
  return d;
}

OutcomeDistribution outcome_distribution(const Eigen::Matrix2cd& block, double overlap) {
  check_overlap(overlap);
  require_contraction(block);
  const Complex a = block(0, 0), b = block(0, 1), c = block(1, 0), d = block(1, 1);
  const double aa = std::norm(a), bb = std::norm(b), cc = std::norm(c), dd = std::norm(d);
  // Re(T_mk conj(T_ml) T_nl conj(T_nk)): the cross term shared by all
  // interference contributions.
  const double cross = std::real(a * std::conj(b) * d * std::conj(c));

  OutcomeDistribution p;
  p.p11 = clean(aa * dd + bb * cc + 2.0 * overlap * cross);
  p.p20 = aa * bb * (1.0 + overlap);
  p.p02 = cc * dd * (1.0 + overlap);
  // One photon at m, the other in an unselected channel. Summing over the
  // lost channels uses sum_lost U_rl conj(U_rk) = -(T_ml conj T_mk + T_nl conj T_nk).
  p.p10 = clean(aa * (1.0 - bb - dd) + bb * (1.0 - aa - cc) - 2.0 * overlap * (aa * bb + cross));
  p.p01 = clean(cc * (1.0 - dd - bb) + dd * (1.0 - cc - aa) - 2.0 * overlap * (cc * dd + cross));
  p.p00 = clean(1.0 - (p.p11 + p.p20 + p.p02 + p.p10 + p.p01));
  return p;
}

Eigen::Matrix4cd unitary_completion(const Eigen::Matrix2cd& block) {
  require_contraction(block);
  // Both defect operators from one SVD, A = W S V^dagger:
  //   sqrt(1 - A A^dagger) = W C W^dagger,  sqrt(1 - A^dagger A) = V C V^dagger,
  // C = sqrt(1 - S^2). Separate eigensolves would disagree by sqrt(eps) near
  // singular values of 1 and break the off-diagonal orthogonality.
  const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector2d s = svd.singularValues();
  const Eigen::Vector2d c = (1.0 - s.cwiseAbs2().array()).cwiseMax(0.0).sqrt().matrix();
  const Eigen::Matrix2cd& w = svd.matrixU();
  const Eigen::Matrix2cd& v = svd.matrixV();
  Eigen::Matrix4cd u;
  u.topLeftCorner<2, 2>() = block;
  u.topRightCorner<2, 2>() = w * c.cast<Complex>().asDiagonal() * w.adjoint();
  u.bottomLeftCorner<2, 2>() = v * c.cast<Complex>().asDiagonal() * v.adjoint();
  u.bottomRightCorner<2, 2>() = -block.adjoint();
  return u;
}

Complex permanent(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) throw InvalidArgument("permanent needs a square matrix");
  const Eigen::Index n = matrix.rows();
  if (n > 20) throw InvalidArgument("permanent limited to side <= 20");
  if (n == 0) return 1.0;

  // perm(A) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij, visiting the
  // subsets S in Gray-code order so each step adds or removes one column.
  Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(n);
  Complex total = 0.0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < subsets; ++i) {
    const int j = __builtin_ctzll(i);
    const std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    if (gray & bit) {
      row_sums += matrix.col(j);
    } else {
      row_sums -= matrix.col(j);
    }
    Complex prod = row_sums.prod();
    const int size = __builtin_popcountll(gray);
    total += (size % 2 == 0) ? prod : -prod;
  }
  return (n % 2 == 0) ? total : -total;
}

double two_photon_coincidence(const ComplexMatrix& t, std::size_t k, std::size_t l,
                              std::size_t m, std::size_t n, double overlap) {
  check_overlap(overlap);
  if (k == l) throw InvalidArgument("input modes k and l must differ");
  const auto rows = static_cast<std::size_t>(t.rows());
  const auto cols = static_cast<std::size_t>(t.cols());
  if (k >= cols || l >= cols || m >= rows || n >= rows) {
    throw DimensionError("two_photon_coincidence: channel index out of range");
  }
  auto at = [&t](std::size_t r, std::size_t c) {
    return t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  };
  if (m == n) return std::norm(at(m, k) * at(m, l)) * (1.0 + overlap);
  const Complex direct = at(m, k) * at(n, l);
  const Complex exchange = at(m, l) * at(n, k);
  return std::norm(direct) + std::norm(exchange) +
         2.0 * overlap * std::real(direct * std::conj(exchange));
}

double two_photon_coincidence(const TransmissionMatrix& matrix, std::size_t k, std::size_t l,
                              std::size_t m, std::size_t n, double overlap) {
  return two_photon_coincidence(matrix.entries(), k, l, m, n, overlap);
}

ProgrammedCircuit ideal_circuit(double t, double alpha) {
  eq2_probabilities(t, alpha);  // validates embeddability
  Eigen::Matrix2cd block;
  block << t, t, t, std::polar(t, alpha);
  return circuit_from_block(block, alpha);
}

VisibilityResult visibility(double r_indist, double r_dist, double std_err) {
  if (!(r_dist > 0.0)) {
    throw UndefinedVisibility("visibility undefined: distinguishable rate is zero");
  }
  VisibilityResult v;
  v.r_indist = r_indist;
  v.r_dist = r_dist;
  v.v = (r_indist - r_dist) / r_dist;
  v.std_err = std_err;
  return v;
}

CoincidenceScan hom_scan(const ProgrammedCircuit& circuit, const PhotonPairSource& source,
                         std::span<const double> delays) {
  if (delays.empty()) throw InvalidArgument("hom_scan: empty delay grid");
  source.validate();
  require_contraction(circuit.sub_matrix);
  CoincidenceScan scan;
  scan.delays.assign(delays.begin(), delays.end());
  for (double tau : delays) {
    const OutcomeDistribution p =
        outcome_distribution(circuit.sub_matrix, overlap_from_delay(source, tau));
    scan.coincidence_rate.push_back(p.p11);
    scan.singles_m.push_back(p.p20 + p.p11 + p.p10);
    scan.singles_n.push_back(p.p02 + p.p11 + p.p01);
  }
  return scan;
}

VisibilityResult hom_visibility(const ProgrammedCircuit& circuit, const PhotonPairSource& source) {
  const double delays[] = {0.0, reference_delay(source)};
  const CoincidenceScan scan = hom_scan(circuit, source, delays);
  return visibility(scan.coincidence_rate[0], scan.coincidence_rate[1]);
}

}  // namespace scatterqi
