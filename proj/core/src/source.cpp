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

#include "scatterqi/source.hpp"

#include <cmath>
#include <numbers>

#include "scatterqi/errors.hpp"

namespace scatterqi {

namespace {

constexpr double kSpeedOfLight = 299792458.0;
constexpr double kBroadbandFwhm = 5.0e-9;
constexpr double kFilterFwhm = 1.5e-9;

PhotonPairSource make(double fwhm, double overlap, double mu) {
  PhotonPairSource s;
  s.rms_angular_bandwidth = rms_bandwidth_from_fwhm(fwhm, s.center_wavelength_m);
  s.intrinsic_overlap = overlap;
  s.mean_pairs_per_pulse = mu;
  return s;
}

}  // namespace

void PhotonPairSource::validate() const {
  if (!(rms_angular_bandwidth > 0.0) || !std::isfinite(rms_angular_bandwidth)) {
    throw InvalidArgument("source bandwidth must be positive");
  }
  if (!(intrinsic_overlap >= 0.0 && intrinsic_overlap <= 1.0)) {
    throw InvalidArgument("intrinsic overlap must lie in [0, 1]");
  }
  if (!(mean_pairs_per_pulse >= 0.0) || !std::isfinite(mean_pairs_per_pulse)) {
    throw InvalidArgument("mean pairs per pulse must be nonnegative");
  }
  if (!(pulse_rate_hz > 0.0)) throw InvalidArgument("pulse rate must be positive");
  if (!(center_wavelength_m > 0.0) || !(pump_wavelength_m > 0.0)) {
    throw InvalidArgument("wavelengths must be positive");
  }
}

double rms_bandwidth_from_fwhm(double fwhm_wavelength_m, double center_wavelength_m) {
  if (!(fwhm_wavelength_m > 0.0) || !(center_wavelength_m > 0.0)) {
    throw InvalidArgument("bandwidth and wavelength must be positive");
  }
  const double fwhm_omega = 2.0 * std::numbers::pi * kSpeedOfLight * fwhm_wavelength_m /
                            (center_wavelength_m * center_wavelength_m);
  const double intensity_rms = fwhm_omega / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  return intensity_rms / std::numbers::sqrt2;
}

PhotonPairSource source_preset(std::string_view name) {
  if (name == "broadband") return make(kBroadbandFwhm, 0.64, 0.01);
  if (name == "filtered") return make(kFilterFwhm, 0.86, 0.01);
  if (name == "highpower") return make(kBroadbandFwhm, 0.64, 0.2);
  if (name == "ideal") return make(kFilterFwhm, 1.0, 0.01);
  throw InvalidArgument("unknown source preset '" + std::string(name) + "'");
}

std::vector<std::string> source_preset_names() {
  return {"broadband", "filtered", "highpower", "ideal"};
}

double overlap_from_delay(const PhotonPairSource& source, double delay_s) {
  source.validate();
  const double u = source.rms_angular_bandwidth * delay_s;
  return source.intrinsic_overlap * std::exp(-u * u);
}

double reference_delay(const PhotonPairSource& source) {
  source.validate();
  return 10.0 / source.rms_angular_bandwidth;
}

double overlap_half_width(const PhotonPairSource& source) {
  source.validate();
  return std::sqrt(std::numbers::ln2) / source.rms_angular_bandwidth;
}

}  // namespace scatterqi
