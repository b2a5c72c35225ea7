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

#include "scatterqi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "scatterqi/errors.hpp"
#include "scatterqi/matrix_io.hpp"
#include "scatterqi/output.hpp"
#include "scatterqi/parallel.hpp"
#include "scatterqi/rng.hpp"

namespace scatterqi {

TransmissionMatrix build_medium(const ScenarioConfig& config, unsigned threads) {
  if (!config.medium_file.empty()) return read_matrix_file(config.medium_file);
  if (config.medium_kind == EnsembleKind::Unitary) {
    return haar_unitary(config.effective_n_in(), config.seed, threads);
  }
  return gaussian_transmission_matrix(config.effective_n_out(), config.effective_n_in(),
                                      config.seed, threads);
}

V0Fit fit_v0_cos(std::span<const double> alphas, std::span<const double> visibilities) {
  if (alphas.size() != visibilities.size()) {
    throw InvalidArgument("fit_v0_cos: alphas and visibilities differ in length");
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double c = std::cos(alphas[i]);
    sxy += visibilities[i] * c;
    sxx += c * c;
  }
  // cos(pi/2) is 6e-17, not zero; treat anything at that level as zero.
  if (sxx < 1e-24) throw DegenerateFit("fit_v0_cos: cos(alpha) vanishes at every point");
  V0Fit fit;
  fit.v0 = sxy / sxx;
  if (alphas.size() > 1) {
    double sse = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const double r = visibilities[i] - fit.v0 * std::cos(alphas[i]);
      sse += r * r;
    }
    fit.std_err = std::sqrt(sse / static_cast<double>(alphas.size() - 1) / sxx);
  }
  return fit;
}

AlphaScanResult run_alpha_scan(const ScenarioConfig& config, unsigned threads) {
  config.validate();
  const PhotonPairSource source = config.source();
  const Detectors detectors{config.efficiency_m, config.efficiency_n};

  std::optional<TransmissionMatrix> medium;
  std::optional<PatternSet> patterns;
  if (config.circuit == CircuitSource::Programmed) {
    medium.emplace(build_medium(config, threads));
    patterns.emplace(optimize_pattern_set(*medium, config.segments, config.output_m,
                                          config.output_n, config.method));
  }
  const std::uint64_t mc_seed = derive_seed(config.seed, stream_key("alpha_scan"));

  AlphaScanResult result;
  result.alphas = config.alpha_grid;
  for (std::size_t i = 0; i < config.alpha_grid.size(); ++i) {
    const double alpha = config.alpha_grid[i];
    const ProgrammedCircuit circuit =
        config.circuit == CircuitSource::Ideal
            ? ideal_circuit(config.ideal_t, alpha)
            : program_circuit(*medium, *patterns, config.output_m, config.output_n, alpha,
                              config.calibration_rounds)
                  .circuit;
    const VisibilityResult v =
        config.mode == SimulationMode::Analytic
            ? hom_visibility(circuit, source)
            : montecarlo_visibility(circuit, source, config.pulses, derive_seed(mc_seed, i),
                                    detectors, threads);
    result.visibilities.push_back(v.v);
    result.std_errs.push_back(v.std_err);
    result.alpha_fits.push_back(circuit.alpha_fit);
  }
  const V0Fit fit = fit_v0_cos(result.alphas, result.visibilities);
  result.v0_fit = fit.v0;
  result.v0_std_err = fit.std_err;
  return result;
}

std::vector<double> default_delay_grid(std::span<const PhotonPairSource> sources) {
  if (sources.empty()) throw InvalidArgument("default_delay_grid needs a source");
  double widest = 0.0;
  for (const auto& s : sources) widest = std::max(widest, overlap_half_width(s));
  std::vector<double> grid(601);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = widest * (static_cast<double>(i) - 300.0) / 100.0;
  }
  return grid;
}

double dip_half_width(const CoincidenceScan& scan, double baseline) {
  const auto& tau = scan.delays;
  const auto& rate = scan.coincidence_rate;
  std::size_t zero = tau.size();
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] == 0.0) zero = i;
  }
  if (zero == tau.size()) throw InvalidArgument("dip_half_width: delay grid lacks tau = 0");
  const double depth = rate[zero] - baseline;
  if (depth == 0.0) throw DegenerateFit("dip_half_width: no dip or peak at tau = 0");
  double prev_tau = tau[zero];
  double prev_frac = 1.0;
  for (std::size_t i = zero + 1; i < tau.size(); ++i) {
    if (!(tau[i] > prev_tau)) throw InvalidArgument("dip_half_width: delays must increase");
    const double frac = (rate[i] - baseline) / depth;
    if (frac <= 0.5) {
      return prev_tau + (prev_frac - 0.5) / (prev_frac - frac) * (tau[i] - prev_tau);
    }
    prev_tau = tau[i];
    prev_frac = frac;
  }
  throw DegenerateFit("dip_half_width: delay grid ends before half depth");
}

namespace {

HomCurve make_curve(std::string label, const ProgrammedCircuit& circuit,
                    const PhotonPairSource& source, std::span<const double> delays) {
  HomCurve curve;
  curve.label = std::move(label);
  curve.source = source;
  curve.scan = hom_scan(circuit, source, delays);
  curve.visibility = hom_visibility(circuit, source);
  curve.half_width_s = dip_half_width(curve.scan, curve.visibility.r_dist);
  return curve;
}

}  // namespace

std::vector<HomCurve> run_hom_reproduction(const ScenarioConfig& config) {
  const PhotonPairSource broadband = source_preset("broadband");
  const PhotonPairSource filtered = source_preset("filtered");
  const PhotonPairSource both[] = {broadband, filtered};
  const std::vector<double> delays =
      config.delay_grid.empty() ? default_delay_grid(both) : config.delay_grid;
  const ProgrammedCircuit splitter = ideal_circuit(1.0 / std::sqrt(2.0), std::numbers::pi);
  return {make_curve("broadband", splitter, broadband, delays),
          make_curve("filtered", splitter, filtered, delays)};
}

std::vector<ProgrammedHomCurve> run_programmed_hom(const ScenarioConfig& config,
                                                   unsigned threads) {
  config.validate();
  const PhotonPairSource source = config.source();
  const PhotonPairSource sources[] = {source};
  const std::vector<double> delays =
      config.delay_grid.empty() ? default_delay_grid(sources) : config.delay_grid;
  const TransmissionMatrix medium = build_medium(config, threads);
  const PatternSet set = optimize_pattern_set(medium, config.segments, config.output_m,
                                              config.output_n, config.method);
  std::vector<ProgrammedHomCurve> out;
  for (std::size_t i = 0; i < config.hom_alphas.size(); ++i) {
    const double alpha = config.hom_alphas[i];
    ProgrammedHomCurve entry;
    entry.circuit = program_circuit(medium, set, config.output_m, config.output_n, alpha,
                                    config.calibration_rounds)
                        .circuit;
    entry.curve = make_curve("alpha" + std::to_string(i), entry.circuit, source, delays);
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<EnhancementRow> run_enhancement_study(const ScenarioConfig& config,
                                                  unsigned threads) {
  if (config.enhancement_segments.empty()) throw InvalidArgument("no segment counts given");
  if (config.trials == 0) throw InvalidArgument("need at least one trial");
  const std::size_t n_out = config.n_out.value_or(4000);
  if (config.output_m >= n_out) throw InvalidArgument("output_m beyond n_out");
  const std::uint64_t base = derive_seed(config.seed, stream_key("enhancement"));

  std::vector<EnhancementRow> rows;
  for (std::size_t segments : config.enhancement_segments) {
    std::vector<double> factors(config.trials);
    parallel_for(config.trials, threads, [&](std::size_t trial) {
      const std::uint64_t seed =
          derive_seed(base, (static_cast<std::uint64_t>(segments) << 32) | trial);
      const TransmissionMatrix medium = gaussian_transmission_matrix(n_out, segments, seed);
      const PhasePattern flat = pattern_template(InputMode::K, segments);
      const PhasePattern focused = optimize_pattern(medium, flat, config.output_m, config.method);
      factors[trial] = measure_enhancement(medium, flat, focused, config.output_m).factor();
    });
    EnhancementRow row;
    row.segments = segments;
    for (double f : factors) row.mean += f;
    row.mean /= static_cast<double>(factors.size());
    if (factors.size() > 1) {
      double ss = 0.0;
      for (double f : factors) ss += (f - row.mean) * (f - row.mean);
      row.std = std::sqrt(ss / static_cast<double>(factors.size() - 1));
    }
    row.predicted = predicted_enhancement(segments);
    rows.push_back(row);
  }
  return rows;
}

std::string alpha_scan_csv(const AlphaScanResult& result) {
  CsvTable t({"alpha_rad", "visibility", "std_err"});
  for (std::size_t i = 0; i < result.alphas.size(); ++i) {
    t.add_row(std::vector<double>{result.alphas[i], result.visibilities[i], result.std_errs[i]});
  }
  return t.str();
}

std::string alpha_scan_summary_csv(const AlphaScanResult& result) {
  CsvTable t({"v0_fit", "v0_std_err"});
  t.add_row(std::vector<double>{result.v0_fit, result.v0_std_err});
  return t.str();
}

std::string coincidence_scan_csv(const CoincidenceScan& scan) {
  CsvTable t({"delay_s", "coincidence", "singles_m", "singles_n"});
  for (std::size_t i = 0; i < scan.delays.size(); ++i) {
    t.add_row(std::vector<double>{scan.delays[i], scan.coincidence_rate[i], scan.singles_m[i],
                                  scan.singles_n[i]});
  }
  return t.str();
}

std::string hom_summary_csv(const std::vector<HomCurve>& curves) {
  CsvTable t({"label", "visibility", "half_width_s", "intrinsic_overlap", "rms_angular_bandwidth"});
  for (const auto& c : curves) {
    t.add_row(std::vector<std::string>{c.label, format_double(c.visibility.v),
                                       format_double(c.half_width_s),
                                       format_double(c.source.intrinsic_overlap),
                                       format_double(c.source.rms_angular_bandwidth)});
  }
  return t.str();
}

std::string classical_scan_csv(const ClassicalScan& scan) {
  CsvTable t({"delta_theta_rad", "intensity_m", "intensity_n"});
  for (std::size_t i = 0; i < scan.delta_theta.size(); ++i) {
    t.add_row(std::vector<double>{scan.delta_theta[i], scan.intensity_m[i], scan.intensity_n[i]});
  }
  return t.str();
}

std::string enhancement_csv(const std::vector<EnhancementRow>& rows) {
  CsvTable t({"segments", "mean_enhancement", "std", "predicted"});
  for (const auto& r : rows) {
    t.add_row(std::vector<std::string>{std::to_string(r.segments), format_double(r.mean),
                                       format_double(r.std), format_double(r.predicted)});
  }
  return t.str();
}

std::string probabilities_csv(const OutcomeDistribution& p) {
  CsvTable t({"outcome", "probability"});
  const std::pair<const char*, double> rows[] = {{"p20", p.p20}, {"p02", p.p02},
                                                 {"p11", p.p11}, {"p10", p.p10},
                                                 {"p01", p.p01}, {"p00", p.p00}};
  for (const auto& [label, value] : rows) {
    t.add_row(std::vector<std::string>{label, format_double(value)});
  }
  return t.str();
}

}  // namespace scatterqi
