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

#ifndef SCATTERQI_SOURCE_HPP
#define SCATTERQI_SOURCE_HPP

#include <string>
#include <string_view>
#include <vector>

namespace scatterqi {

// Pulsed SPDC photon-pair source.
//
// Distinguishability is one scalar: the overlap between the two photons'
// wave packets, x(tau) = intrinsic_overlap * exp(-(sigma_w tau)^2). For a
// Gaussian spectral intensity of rms width s (angular frequency) the overlap
// is the modulus of its Fourier transform, exp(-s^2 tau^2 / 2), so
// sigma_w = s / sqrt(2). See rms_bandwidth_from_fwhm.
struct PhotonPairSource {
  double center_wavelength_m = 790e-9;
  double pump_wavelength_m = 395e-9;
  // sigma_w in rad/s.
  double rms_angular_bandwidth = 0.0;
  double intrinsic_overlap = 1.0;
  // Poisson mean of the pair number per pulse.
  double mean_pairs_per_pulse = 0.01;
  double pulse_rate_hz = 80e6;

  // Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

// sigma_w for a Gaussian spectrum with the given FWHM in wavelength:
//   FWHM_w = 2 pi c FWHM_lambda / lambda^2
//   s      = FWHM_w / (2 sqrt(2 ln 2))   (rms of the spectral intensity)
//   sigma_w = s / sqrt(2)
double rms_bandwidth_from_fwhm(double fwhm_wavelength_m, double center_wavelength_m);

// Calibration presets, not predictions:
//   broadband  5 nm spectrum, overlap 0.64, mu 0.01
//   filtered   1.5 nm bandpass, overlap 0.86, mu 0.01
//   highpower  5 nm spectrum, overlap 0.64, mu 0.2
//   ideal      1.5 nm, overlap 1, mu 0.01
PhotonPairSource source_preset(std::string_view name);
std::vector<std::string> source_preset_names();

double overlap_from_delay(const PhotonPairSource& source, double delay_s);

// 10 / sigma_w: overlap below exp(-100), the distinguishable baseline.
double reference_delay(const PhotonPairSource& source);

// Delay at which the overlap falls to half its zero-delay value,
// sqrt(ln 2) / sigma_w.
double overlap_half_width(const PhotonPairSource& source);

}  // namespace scatterqi

#endif  // SCATTERQI_SOURCE_HPP
