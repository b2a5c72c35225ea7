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

#ifndef SCATTERQI_EXPERIMENTS_HPP
#define SCATTERQI_EXPERIMENTS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scatterqi/config.hpp"
#include "scatterqi/montecarlo.hpp"
#include "scatterqi/shaping.hpp"
#include "scatterqi/twophoton.hpp"

namespace scatterqi {

// Medium described by the config: loaded from medium_file when set,
// otherwise generated from (kind, dims, seed).
TransmissionMatrix build_medium(const ScenarioConfig& config, unsigned threads = 1);

struct V0Fit {
  double v0 = 0.0;
  double std_err = 0.0;
};

// One-parameter least squares V = V0 cos(alpha):
//   V0 = sum V_i cos a_i / sum cos^2 a_i,
//   std_err = sqrt(sum r_i^2 / (n - 1) / sum cos^2 a_i)   (0 for n = 1).
// Throws DegenerateFit when every cos a_i is zero.
V0Fit fit_v0_cos(std::span<const double> alphas, std::span<const double> visibilities);

struct AlphaScanResult {
  std::vector<double> alphas;
  std::vector<double> visibilities;
  std::vector<double> std_errs;
  // Fitted circuit phase per point (equals alpha for ideal circuits).
  std::vector<double> alpha_fits;
  double v0_fit = 0.0;
  double v0_std_err = 0.0;
};

// For each alpha: realize the circuit (ideal form, or programmed in the
// medium from one set of optimized patterns), evaluate the coincidence
// visibility between zero and reference delay (analytic or Monte Carlo),
// then fit V0 cos(alpha).
AlphaScanResult run_alpha_scan(const ScenarioConfig& config, unsigned threads = 1);

struct HomCurve {
  std::string label;
  PhotonPairSource source;
  CoincidenceScan scan;
  VisibilityResult visibility;
  double half_width_s = 0.0;
};

// Delay grid used when the config leaves it empty: 601 points spanning
// three half widths of the narrowest-band source on either side of zero.
std::vector<double> default_delay_grid(std::span<const PhotonPairSource> sources);

// Half width at half depth of a dip or peak, from samples at tau >= 0 by
// linear interpolation. The grid must contain tau = 0.
double dip_half_width(const CoincidenceScan& scan, double baseline);

// Conventional 50:50 beam splitter (t = 1/sqrt 2, alpha = pi) probed with the
// `broadband` and `filtered` presets.
std::vector<HomCurve> run_hom_reproduction(const ScenarioConfig& config);

// Delay scans through circuits programmed in the medium, one per
// config.hom_alphas entry, using config.source().
struct ProgrammedHomCurve {
  ProgrammedCircuit circuit;
  HomCurve curve;
};
std::vector<ProgrammedHomCurve> run_programmed_hom(const ScenarioConfig& config,
                                                   unsigned threads = 1);

struct EnhancementRow {
  std::size_t segments = 0;
  double mean = 0.0;
  double std = 0.0;
  double predicted = 0.0;
};

// For each segment count N, `trials` Gaussian media of n_out x N, each with one
// input mode focused on output_m; enhancement = optimized target intensity
// over the mean flat-input speckle intensity.
std::vector<EnhancementRow> run_enhancement_study(const ScenarioConfig& config,
                                                  unsigned threads = 1);

// CSV renderings with the column orders of the file formats.
std::string alpha_scan_csv(const AlphaScanResult& result);
std::string alpha_scan_summary_csv(const AlphaScanResult& result);
std::string coincidence_scan_csv(const CoincidenceScan& scan);
std::string hom_summary_csv(const std::vector<HomCurve>& curves);
std::string classical_scan_csv(const ClassicalScan& scan);
std::string enhancement_csv(const std::vector<EnhancementRow>& rows);
std::string probabilities_csv(const OutcomeDistribution& p);

}  // namespace scatterqi

#endif  // SCATTERQI_EXPERIMENTS_HPP
