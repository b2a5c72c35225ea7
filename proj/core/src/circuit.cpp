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

#include "scatterqi/circuit.hpp"

#include <complex>

#include "scatterqi/angles.hpp"

namespace scatterqi {

bool ProgrammedCircuit::embeddable() const { return largest_singular_value <= 1.0 + 1e-9; }

ProgrammedCircuit circuit_from_block(const Eigen::Matrix2cd& block, double alpha_set,
                                     std::size_t output_m, std::size_t output_n) {
  ProgrammedCircuit c;
  c.sub_matrix = block;
  c.alpha_set = alpha_set;
  c.output_m = output_m;
  c.output_n = output_n;

  const std::complex<double> a = block(0, 0), b = block(0, 1), d_k = block(1, 0),
                             d_l = block(1, 1);
  const double cross = std::arg(a) + std::arg(d_l) - std::arg(b) - std::arg(d_k);
  c.alpha_fit = alpha_set + wrap_signed(cross - alpha_set);
  c.t_fit = (std::abs(a) + std::abs(b) + std::abs(d_k) + std::abs(d_l)) / 4.0;

  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(block);
  c.largest_singular_value = svd.singularValues()(0);
  c.smallest_singular_value = svd.singularValues()(1);
  return c;
}

}  // namespace scatterqi
