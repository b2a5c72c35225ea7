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

#ifndef SCATTERQI_MEDIUM_HPP
#define SCATTERQI_MEDIUM_HPP

#include <complex>
#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace scatterqi {

using Complex = std::complex<double>;
// Row index = output channel, column index = input channel.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using FieldVector = Eigen::VectorXcd;

enum class EnsembleKind : std::uint32_t {
  Gaussian = 1,
  Unitary = 2,
};

const char* to_string(EnsembleKind kind);

// Field-transmission matrix of a scattering medium.
//
// Immutable after construction. Construction checks that every entry is
// finite and, for the unitary ensemble, that the matrix is square with
// U^dagger U = 1 to within 1e-10 per entry.
class TransmissionMatrix {
 public:
  TransmissionMatrix(ComplexMatrix entries, EnsembleKind kind, std::uint64_t seed);

  std::size_t n_out() const { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t n_in() const { return static_cast<std::size_t>(entries_.cols()); }
  EnsembleKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  const ComplexMatrix& entries() const { return entries_; }

  Complex operator()(std::size_t out, std::size_t in) const {
    return entries_(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
  }

 private:
  ComplexMatrix entries_;
  EnsembleKind kind_;
  std::uint64_t seed_;
};

// I.i.d. circular complex Gaussian entries with variance 1/n_in, so every row
// has expected squared norm 1. Row r is drawn from Rng::substream(seed, r);
// the result is therefore bit-identical for any thread count.
TransmissionMatrix gaussian_transmission_matrix(std::size_t n_out, std::size_t n_in,
                                                std::uint64_t seed, unsigned threads = 1);

// Haar-distributed unitary: QR of a complex Gaussian matrix, with the
// columns of Q rephased by diag(R)/|diag(R)| so the law is exactly uniform.
TransmissionMatrix haar_unitary(std::size_t n, std::uint64_t seed, unsigned threads = 1);

FieldVector transmit(const TransmissionMatrix& matrix, const FieldVector& input);

}  // namespace scatterqi

#endif  // SCATTERQI_MEDIUM_HPP
