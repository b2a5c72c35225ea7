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

#include "scatterqi/sine_fit.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "scatterqi/errors.hpp"

namespace scatterqi {

SineFit fit_sine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("fit_sine: x and y differ in length");
  if (x.size() < 3) throw InvalidArgument("fit_sine: need at least 3 points");

  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::sin(x[static_cast<std::size_t>(i)]);
    design(i, 2) = std::cos(x[static_cast<std::size_t>(i)]);
    rhs(i) = y[static_cast<std::size_t>(i)];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) {
    throw DegenerateFit("fit_sine: sample points do not determine a sinusoid");
  }
  const Eigen::Vector3d coef = qr.solve(rhs);
  const double a = coef(1);
  const double b = coef(2);

  SineFit fit;
  fit.offset = coef(0);
  fit.amplitude = std::hypot(a, b);
  fit.phase = fit.amplitude > 0.0 ? std::atan2(b, a) : 0.0;

  const Eigen::VectorXd residual = rhs - design * coef;
  const double sse = residual.squaredNorm();
  fit.residual_rms = std::sqrt(sse / static_cast<double>(n));
  if (n > 3 && fit.amplitude > 0.0) {
    const double sigma2 = sse / static_cast<double>(n - 3);
    const Eigen::Matrix3d cov = sigma2 * (design.transpose() * design).inverse();
    const double var = (a * a * cov(1, 1) + b * b * cov(2, 2) + 2.0 * a * b * cov(1, 2)) /
                       (fit.amplitude * fit.amplitude);
    fit.amplitude_std_err = std::sqrt(std::max(var, 0.0));
  }
  return fit;
}

double evaluate(const SineFit& fit, double x) {
  return fit.offset + fit.amplitude * std::sin(x + fit.phase);
}

}  // namespace scatterqi
