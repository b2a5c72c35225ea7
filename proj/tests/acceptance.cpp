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

// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   scatterqi_acceptance [path/to/scatterqi]
// The CLI path is needed for the determinism criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "scatterqi/angles.hpp"
#include "scatterqi/errors.hpp"
#include "scatterqi/experiments.hpp"
#include "scatterqi/montecarlo.hpp"
#include "scatterqi/output.hpp"
#include "scatterqi/rng.hpp"
#include "scatterqi/shaping.hpp"
#include "scatterqi/sine_fit.hpp"
#include "scatterqi/twophoton.hpp"

namespace fs = std::filesystem;
using namespace scatterqi;

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances, pinned.
constexpr double kProbabilityTol = 1e-12;      // AC1, AC2
constexpr double kAc1Seconds = 5.0;
constexpr double kV0IdealTol = 1e-6;           // AC3
constexpr double kV0FilteredLo = 0.83, kV0FilteredHi = 0.89;
constexpr double kHalfPiTol = 1e-9;
constexpr double kAc3Seconds = 120.0;
constexpr double kEndpointTol = 1e-6;          // AC4
constexpr double kPhaseFidelity = 0.05 * kPi;  // AC5
constexpr double kAmplitudeAgreement = 0.10;
constexpr double kEnhancementTol = 0.10;       // AC6
constexpr double kAc6Seconds = 300.0;
constexpr double kPresetTol = 0.01;            // AC7
constexpr double kWidthRatioTol = 0.05;
constexpr double kSigmas = 3.0;                // AC8
constexpr double kAc8Seconds = 120.0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// --- 1: closed-form probabilities against brute-force Fock propagation -------

Outcome closed_form_vs_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240101);
  double worst = 0.0, worst_unitarity = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double alpha = kTwoPi * rng.uniform();
    const double t = embeddability_bound(alpha) * rng.uniform();
    Eigen::Matrix2cd block;
    block << t, t, t, std::polar(t, alpha);
    const Eigen::MatrixXcd u = unitary_completion(block);
    worst_unitarity = std::max(
        worst_unitarity, (u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff());
    const oracle::Outcomes o = oracle::propagate_pair(u, 1.0);
    const OutcomeDistribution p = eq2_probabilities(t, alpha);
    for (double d : {p.p20 - o.p20, p.p02 - o.p02, p.p11 - o.p11, p.p10 - o.p10, p.p01 - o.p01,
                     p.p00 - o.p00}) {
      worst = std::max(worst, std::abs(d));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= kProbabilityTol && worst_unitarity <= kProbabilityTol && secs < kAc1Seconds,
          "max |diff| " + num(worst) + ", completion unitarity " + num(worst_unitarity) + ", " +
              num(secs) + " s"};
}

// --- 2: normalization on a grid ------------------------------------------------

Outcome normalization_grid() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double alpha = kTwoPi * i / 49.0;
    const double bound = embeddability_bound(alpha);
    for (int j = 0; j < 50; ++j) {
      const double t = bound * (j / 49.0);
      worst = std::max(worst, std::abs(eq2_probabilities(t, alpha).sum() - 1.0));
    }
  }
  return {worst <= kProbabilityTol, "max |sum - 1| " + num(worst) + " over 2500 points"};
}

// --- 3: cosine law of the programmed alpha scan at default scale --------------

Outcome cosine_law() {
  ScenarioConfig ideal_source;  // 4000 x 1920, 960 segments, programmed, overlap 1
  auto t0 = std::chrono::steady_clock::now();
  const AlphaScanResult a = run_alpha_scan(ideal_source, worker_count());
  const double secs_a = seconds_since(t0);

  ScenarioConfig filtered;
  filtered.source_preset = "filtered";
  t0 = std::chrono::steady_clock::now();
  const AlphaScanResult b = run_alpha_scan(filtered, worker_count());
  const double secs_b = seconds_since(t0);

  double half_pi = INFINITY;
  for (const AlphaScanResult* r : {&a, &b}) {
    for (std::size_t i = 0; i < r->alphas.size(); ++i) {
      if (std::abs(r->alphas[i] - kPi / 2) < 1e-15) {
        half_pi = std::isinf(half_pi) ? std::abs(r->visibilities[i])
                                      : std::max(half_pi, std::abs(r->visibilities[i]));
      }
    }
  }
  const bool pass = std::abs(a.v0_fit - 1.0) <= kV0IdealTol && b.v0_fit >= kV0FilteredLo &&
                    b.v0_fit <= kV0FilteredHi && half_pi <= kHalfPiTol &&
                    secs_a < kAc3Seconds && secs_b < kAc3Seconds;
  return {pass, "v0 " + num(a.v0_fit) + " (overlap 1), " + num(b.v0_fit) +
                    " (filtered), |V(pi/2)| " + num(half_pi) + ", " + num(secs_a) + " s / " +
                    num(secs_b) + " s"};
}

// --- 4: programmed endpoints --------------------------------------------------

Outcome hom_endpoints() {
  double worst = 0.0, ratio = 0.0;
  std::string detail;
  for (const char* preset : {"ideal", "filtered"}) {
    ScenarioConfig c;
    c.source_preset = preset;
    c.hom_alphas = {kPi, 0.0};
    const double x = c.source().intrinsic_overlap;
    const auto curves = run_programmed_hom(c, worker_count());
    const double dip = curves[0].curve.visibility.v;
    const double peak = curves[1].curve.visibility.v;
    worst = std::max({worst, std::abs(dip + x), std::abs(peak - x)});
    if (x == 1.0) ratio = curves[1].curve.visibility.r_indist / curves[1].curve.visibility.r_dist;
    detail += std::string(preset) + ": dip " + num(dip) + ", peak " + num(peak) + "; ";
  }
  return {worst <= kEndpointTol && std::abs(ratio - 2.0) <= 2.0 * kEndpointTol,
          detail + "peak rate ratio " + num(ratio) + ", max dev " + num(worst)};
}

// --- 5: programmed-phase fidelity over 20 media ------------------------------

Outcome phase_fidelity() {
  double sum_dev = 0.0, sum_dev_raw = 0.0, worst_phase = 0.0, worst_amp = 0.0;
  const int seeds = 20;
  const auto grid = phase_grid(64);
  for (int seed = 0; seed < seeds; ++seed) {
    const auto medium = gaussian_transmission_matrix(4000, 1920, seed, worker_count());
    const PatternSet set = optimize_pattern_set(medium, 960, 0, 1);
    sum_dev += angular_distance(program_circuit(medium, set, 0, 1, kPi).circuit.alpha_fit, kPi);
    sum_dev_raw +=
        angular_distance(program_circuit(medium, set, 0, 1, kPi, 0).circuit.alpha_fit, kPi);

    const ProgrammedPatterns zero = program_circuit(medium, set, 0, 1, 0.0);
    const ClassicalScan scan = classical_scan(medium, zero.k, zero.l, 0, 1, grid);
    const SineFit fm = fit_sine(scan.delta_theta, scan.intensity_m);
    const SineFit fn = fit_sine(scan.delta_theta, scan.intensity_n);
    worst_phase = std::max(worst_phase, angular_distance(fm.phase, fn.phase));
    worst_amp = std::max(worst_amp, std::abs(fn.amplitude / fm.amplitude - 1.0));
  }
  const double mean = sum_dev / seeds;
  return {mean <= kPhaseFidelity && worst_phase <= kPhaseFidelity &&
              worst_amp <= kAmplitudeAgreement,
          "mean |alpha_fit - pi| " + num(mean / kPi) + " pi (uncalibrated " +
              num(sum_dev_raw / seeds / kPi) + " pi); alpha 0 curves: phase gap " +
              num(worst_phase / kPi) + " pi, amplitude gap " + num(worst_amp)};
}

// --- 6: enhancement law -------------------------------------------------------

Outcome enhancement_law() {
  ScenarioConfig c;
  c.enhancement_segments = {64, 256, 960};
  c.trials = 20;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = run_enhancement_study(c, worker_count());
  const double secs = seconds_since(t0);
  bool pass = secs < kAc6Seconds;
  std::string detail;
  for (const auto& r : rows) {
    pass = pass && std::abs(r.mean / r.predicted - 1.0) <= kEnhancementTol;
    detail += "N=" + std::to_string(r.segments) + " " + num(r.mean) + "/" + num(r.predicted) + "; ";
  }
  return {pass, detail + num(secs) + " s"};
}

// --- 7: source presets --------------------------------------------------------

Outcome source_presets() {
  const auto curves = run_hom_reproduction(ScenarioConfig{});
  const double vb = curves[0].visibility.v, vf = curves[1].visibility.v;
  const double ratio = curves[1].half_width_s / curves[0].half_width_s;
  const PhotonPairSource b = source_preset("broadband");
  const double oracle_ratio = oracle::spectral_half_width(1.5e-9, b.center_wavelength_m) /
                              oracle::spectral_half_width(5e-9, b.center_wavelength_m);
  const double bandwidth_ratio =
      source_preset("broadband").rms_angular_bandwidth / source_preset("filtered").rms_angular_bandwidth;
  const bool pass = std::abs(-vb - 0.64) <= kPresetTol && std::abs(-vf - 0.86) <= kPresetTol &&
                    std::abs(ratio / bandwidth_ratio - 1.0) <= kWidthRatioTol &&
                    std::abs(ratio / oracle_ratio - 1.0) <= kWidthRatioTol;
  return {pass, "V " + num(vb) + " / " + num(vf) + ", width ratio " + num(ratio) +
                    " (inverse bandwidth ratio " + num(bandwidth_ratio) + ", spectral integral " +
                    num(oracle_ratio) + ")"};
}

// --- 8: multi-pair visibility reduction --------------------------------------

// Coincidence probability per pulse from the Poisson series over pair number,
// summed term by term from single-pair outcome probabilities.
double series_coincidence(const OutcomeDistribution& p, double mu) {
  const double q_m = p.p02 + p.p01 + p.p00, q_n = p.p20 + p.p10 + p.p00, q_0 = p.p00;
  double term = std::exp(-mu), total = 0.0, qm = 1, qn = 1, q0 = 1;
  for (int k = 0; k < 200; ++k) {
    total += term * (1.0 - qm - qn + q0);
    qm *= q_m;
    qn *= q_n;
    q0 *= q_0;
    term *= mu / (k + 1);
  }
  return total;
}

Outcome multipair() {
  const auto t0 = std::chrono::steady_clock::now();
  const ProgrammedCircuit splitter = ideal_circuit(1.0 / std::sqrt(2.0), kPi);
  PhotonPairSource s = source_preset("broadband");
  VisibilityResult v[2];
  double expected[2];
  const double mus[2] = {0.01, 0.5};
  bool consistent = true;
  for (int i = 0; i < 2; ++i) {
    s.mean_pairs_per_pulse = mus[i];
    v[i] = montecarlo_visibility(splitter, s, 1000000, derive_seed(8, i), {}, worker_count());
    const double r0 = series_coincidence(outcome_distribution(splitter.sub_matrix, s.intrinsic_overlap), mus[i]);
    const double r1 = series_coincidence(outcome_distribution(splitter.sub_matrix, 0.0), mus[i]);
    expected[i] = (r0 - r1) / r1;
    consistent = consistent && std::abs(v[i].v - expected[i]) <= 4.0 * v[i].std_err;
  }
  const double gap = std::abs(v[0].v) - std::abs(v[1].v);
  const double sigma = std::hypot(v[0].std_err, v[1].std_err);
  const double secs = seconds_since(t0);
  return {gap > kSigmas * sigma && consistent && secs < kAc8Seconds,
          "V(mu=0.01) " + num(v[0].v) + " +- " + num(v[0].std_err) + " (series " +
              num(expected[0]) + "), V(mu=0.5) " + num(v[1].v) + " +- " + num(v[1].std_err) +
              " (series " + num(expected[1]) + "), gap " + num(gap / sigma) + " sigma, " +
              num(secs) + " s"};
}

// --- 9: determinism across thread counts --------------------------------------

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  if (!fs::exists(dir)) return files;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[e.path().filename().string()] = s.str();
  }
  return files;
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "CLI path not given"};
  const fs::path root = fs::temp_directory_path() / "scatterqi_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path small = root / "small.cfg";
  std::ofstream(small) << "[medium]\nn_out = 500\n[shaping]\nsegments = 128\n"
                          "[scan]\npulses = 200000\n[enhancement]\nsegment_counts = 8, 32\n"
                          "trials = 6\n";
  const fs::path mc = root / "mc.cfg";
  std::ofstream(mc) << "[scan]\nmode = montecarlo\npulses = 300000\n[source]\npreset = highpower\n";
  const fs::path full = root / "full.cfg";
  std::ofstream(full) << "";
  const std::vector<std::pair<std::string, fs::path>> runs = {
      {"gen-medium", small},     {"optimize", small},    {"program", small},
      {"classical-scan", small}, {"hom-scan", small},    {"alpha-scan", small},
      {"enhancement-study", small}, {"alpha-scan", mc},  {"alpha-scan", full}};
  int compared = 0;
  int index = 0;
  for (const auto& [cmd, cfg] : runs) {
    std::map<std::string, std::string> outputs[2];
    for (int pass = 0; pass < 2; ++pass) {
      const fs::path dir = root / (std::to_string(index) + (pass ? "b" : "a"));
      const std::string line = "\"" + cli + "\" --config \"" + cfg.string() + "\" --seed 42 --out \"" +
                               dir.string() + "\" --threads " + (pass ? "4" : "1") +
                               " --quiet " + cmd;
      if (std::system(line.c_str()) != 0) {
        return {false, "command failed: " + line};
      }
      outputs[pass] = read_dir(dir);
    }
    ++index;
    if (outputs[0].empty() || outputs[0] != outputs[1]) {
      return {false, cmd + " with " + cfg.filename().string() + " differs between 1 and 4 threads"};
    }
    compared += static_cast<int>(outputs[0].size());
  }
  fs::remove_all(root);
  return {true, std::to_string(runs.size()) + " runs, " + std::to_string(compared) +
                    " files byte-identical at 1 and 4 threads"};
}

// --- 10: embeddability guard --------------------------------------------------

Outcome embeddability_guard() {
  Rng rng(10);
  int accepted = 0, rejected = 0, wrong = 0, out_of_range = 0;
  auto probe = [&](double t, double alpha) {
    const bool should_reject = t > embeddability_bound(alpha);
    try {
      const OutcomeDistribution p = eq2_probabilities(t, alpha);
      ++accepted;
      if (should_reject) ++wrong;
      for (double v : {p.p20, p.p02, p.p11, p.p10, p.p01, p.p00}) {
        if (!(v >= 0.0 && v <= 1.0)) ++out_of_range;
      }
    } catch (const DomainError&) {
      ++rejected;
      if (!should_reject) ++wrong;
    }
  };
  for (int i = 0; i < 20000; ++i) probe(0.8 * rng.uniform(), 4.0 * kPi * rng.uniform() - 2.0 * kPi);
  for (int i = 0; i < 2000; ++i) {
    const double alpha = kTwoPi * rng.uniform();
    const double b = embeddability_bound(alpha);
    probe(b, alpha);
    probe(std::nextafter(b, 0.0), alpha);
    probe(std::nextafter(b, 1.0), alpha);
  }
  for (double alpha : {0.0, kPi, kPi / 2, -kPi, kTwoPi}) {
    const double b = embeddability_bound(alpha);
    probe(b, alpha);
    probe(std::nextafter(b, 1.0), alpha);
  }
  return {wrong == 0 && out_of_range == 0,
          std::to_string(accepted) + " accepted, " + std::to_string(rejected) + " rejected, " +
              std::to_string(wrong) + " misclassified, " + std::to_string(out_of_range) +
              " probabilities outside [0, 1]"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "closed-form probabilities match Fock propagation", closed_form_vs_oracle},
      {"AC2", "probabilities normalized on a 50x50 grid", normalization_grid},
      {"AC3", "programmed alpha scan follows V0 cos(alpha)", cosine_law},
      {"AC4", "programmed dip at pi and peak at 0", hom_endpoints},
      {"AC5", "programmed phase fidelity over 20 media", phase_fidelity},
      {"AC6", "focusing enhancement law", enhancement_law},
      {"AC7", "source preset visibilities and dip widths", source_presets},
      {"AC8", "multi-pair emission lowers the visibility", multipair},
      {"AC9", "outputs independent of thread count", [&cli] { return determinism(cli); }},
      {"AC10", "embeddability guard", embeddability_guard},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << "  " << c.name << "  [" << o.detail
              << "]" << std::endl;
  }
  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " failed"
                         : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
