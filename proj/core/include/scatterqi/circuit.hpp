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

#ifndef SCATTERQI_CIRCUIT_HPP
#define SCATTERQI_CIRCUIT_HPP

#include <cstddef>

#include <Eigen/Dense>

namespace scatterqi {

// Effective 2x2 field transmission from inputs (k, l) to outputs (m, n):
//
//   sub_matrix = [[T_mk, T_ml],
//                 [T_nk, T_nl]]
//
// t_fit and alpha_fit are the least-squares parameters of the form
// t [[1, 1], [1, exp(i alpha)]] after all row and column phases are gauged
// away. That leaves exactly one invariant phase, the cross ratio
// arg(T_mk T_nl / (T_ml T_nk)), which is alpha_fit; t_fit is then the mean of
// the four magnitudes. alpha_fit is reported on the branch closest to
// alpha_set.
struct ProgrammedCircuit {
  Eigen::Matrix2cd sub_matrix = Eigen::Matrix2cd::Zero();
  double alpha_set = 0.0;
  double t_fit = 0.0;
  double alpha_fit = 0.0;
  std::size_t output_m = 0;
  std::size_t output_n = 1;
  double largest_singular_value = 0.0;
  double smallest_singular_value = 0.0;

  // Largest singular value <= 1 (+1e-9): the block fits inside a unitary.
  bool embeddable() const;
};

ProgrammedCircuit circuit_from_block(const Eigen::Matrix2cd& block, double alpha_set,
                                     std::size_t output_m = 0, std::size_t output_n = 1);

}  // namespace scatterqi

#endif  // SCATTERQI_CIRCUIT_HPP
