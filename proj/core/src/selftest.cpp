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

#include "scatterqi/selftest.hpp"

#include <cmath>
#include <complex>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "scatterqi/angles.hpp"
#include "scatterqi/montecarlo.hpp"
#include "scatterqi/rng.hpp"
#include "scatterqi/shaping.hpp"
#include "scatterqi/twophoton.hpp"

namespace scatterqi {
namespace {

constexpr double kPi = std::numbers::pi;

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool same_distribution(const OutcomeDistribution& a, const OutcomeDistribution& b, double tol) {
  return close(a.p20, b.p20, tol) && close(a.p02, b.p02, tol) && close(a.p11, b.p11, tol) &&
         close(a.p10, b.p10, tol) && close(a.p01, b.p01, tol) && close(a.p00, b.p00, tol);
}

bool check_determinism() {
  const auto a = gaussian_transmission_matrix(32, 16, 7, 1);
  const auto b = gaussian_transmission_matrix(32, 16, 7, 3);
  const auto c = gaussian_transmission_matrix(32, 16, 8, 1);
  return a.entries() == b.entries() && a.entries() != c.entries();
}

bool check_unitarity() {
  const auto u = haar_unitary(24, 3);
  const ComplexMatrix g = u.entries().adjoint() * u.entries();
  return (g - ComplexMatrix::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-12;
}

bool check_linearity() {
  const auto t = gaussian_transmission_matrix(20, 10, 11);
  Rng rng(5);
  FieldVector x(10), y(10);
  for (int i = 0; i < 10; ++i) {
    x[i] = rng.complex_normal(1.0);
    y[i] = rng.complex_normal(1.0);
  }
  const Complex a(0.3, -1.2), b(2.0, 0.5);
  const FieldVector lhs = transmit(t, a * x + b * y);
  const FieldVector rhs = a * transmit(t, x) + b * transmit(t, y);
  return (lhs - rhs).cwiseAbs().maxCoeff() < 1e-12;
}

bool check_intensity_conservation() {
  const auto u = haar_unitary(16, 9);
  Rng rng(2);
  FieldVector x(16);
  for (int i = 0; i < 16; ++i) x[i] = rng.complex_normal(1.0);
  return close(transmit(u, x).squaredNorm(), x.squaredNorm(), 1e-12 * x.squaredNorm());
}

bool check_enhancement() {
  const auto t = gaussian_transmission_matrix(64, 32, 4);
  const PhasePattern flat = pattern_template(InputMode::K, 32);
  const PhasePattern best = optimize_pattern(t, flat, 0);
  const double focused = std::norm(output_field(t, best, 0));
  // Any single-segment perturbation lowers the analytic optimum.
  PhasePattern probe = best;
  for (std::size_t s = 0; s < probe.segments(); ++s) {
    probe.phases[s] = wrap_phase(best.phases[s] + 0.3);
    if (std::norm(output_field(t, probe, 0)) > focused) return false;
    probe.phases[s] = best.phases[s];
  }
  return focused > std::norm(output_field(t, flat, 0));
}

bool check_combine_identical() {
  const PhasePattern k = pattern_template(InputMode::K, 8);
  const PhasePattern l = pattern_template(InputMode::L, 8);
  PhasePattern km = k, lm = l;
  for (std::size_t s = 0; s < 8; ++s) {
    km.phases[s] = wrap_phase(0.7 * static_cast<double>(s));
    lm.phases[s] = wrap_phase(-0.4 * static_cast<double>(s));
  }
  const auto [ck, cl] = combine_patterns(km, km, lm, lm, 0.0);
  for (std::size_t s = 0; s < 8; ++s) {
    if (!close(std::arg(std::polar(1.0, ck.phases[s] - km.phases[s])), 0.0, 1e-12)) return false;
    if (!close(std::arg(std::polar(1.0, cl.phases[s] - lm.phases[s])), 0.0, 1e-12)) return false;
  }
  return true;
}

bool check_eq2_oracle() {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const double alpha = 2.0 * kPi * rng.uniform();
    const double t = embeddability_bound(alpha) * rng.uniform();
    const OutcomeDistribution p = eq2_probabilities(t, alpha);
    const auto circuit = ideal_circuit(t, alpha);
    if (!same_distribution(p, outcome_distribution(circuit.sub_matrix, 1.0), 1e-12)) return false;
    const Eigen::Matrix4cd u = unitary_completion(circuit.sub_matrix);
    const ComplexMatrix full = u;
    if (!close(two_photon_coincidence(full, 0, 1, 0, 1, 1.0), p.p11, 1e-12)) return false;
  }
  return true;
}

bool check_normalization() {
  for (double alpha = 0.0; alpha < 2.0 * kPi; alpha += 0.37) {
    const double t = embeddability_bound(alpha);
    if (!close(eq2_probabilities(t, alpha).sum(), 1.0, 1e-12)) return false;
    if (!close(eq2_probabilities(0.5 * t, alpha).sum(), 1.0, 1e-12)) return false;
  }
  return true;
}

bool check_symmetry() {
  const double t = 0.4, alpha = 1.1;
  const auto p = eq2_probabilities(t, alpha);
  return same_distribution(p, eq2_probabilities(t, -alpha), 1e-14) &&
         same_distribution(p, eq2_probabilities(t, 2.0 * kPi - alpha), 1e-14);
}

bool check_permanent() {
  Eigen::MatrixXcd m(3, 3);
  Rng rng(31);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rng.complex_normal(1.0);
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  Complex sum = 0.0;
  for (const auto& p : perms) sum += m(0, p[0]) * m(1, p[1]) * m(2, p[2]);
  return std::abs(permanent(m) - sum) < 1e-12;
}

bool check_cosine_law() {
  const PhotonPairSource src = source_preset("ideal");
  for (double alpha : {0.0, 0.5, 1.3, kPi / 2.0, 2.4, kPi}) {
    const double v = hom_visibility(ideal_circuit(0.5, alpha), src).v;
    if (!close(v, std::cos(alpha), 1e-9)) return false;
  }
  return true;
}

bool check_montecarlo() {
  const auto circuit = ideal_circuit(1.0 / std::sqrt(2.0), kPi);
  const PhotonPairSource src = source_preset("ideal");
  const double delay = reference_delay(src);
  const ClickProbabilities p = click_probabilities(circuit, src, delay);
  const std::uint64_t pulses = 200000;
  const PulseCounts c = montecarlo_counts(circuit, src, pulses, 99, delay);
  const double n = static_cast<double>(pulses);
  const double sigma = std::sqrt(p.coincidence * (1.0 - p.coincidence) / n);
  return close(static_cast<double>(c.coincidences) / n, p.coincidence, 5.0 * sigma);
}

}  // namespace

bool run_selftest(std::ostream& out) {
  const std::pair<const char*, std::function<bool()>> checks[] = {
      {"determinism", check_determinism},
      {"unitarity", check_unitarity},
      {"linearity", check_linearity},
      {"intensity_conservation", check_intensity_conservation},
      {"focusing_optimum", check_enhancement},
      {"combine_identical_patterns", check_combine_identical},
      {"probabilities_vs_propagation", check_eq2_oracle},
      {"normalization", check_normalization},
      {"alpha_symmetry", check_symmetry},
      {"permanent_definition", check_permanent},
      {"cosine_law", check_cosine_law},
      {"montecarlo_convergence", check_montecarlo},
  };
  bool all = true;
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      out << "  error: " << e.what() << '\n';
    }
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
    all = all && ok;
  }
  return all;
}

}  // namespace scatterqi
