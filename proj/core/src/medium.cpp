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

#include "scatterqi/medium.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "scatterqi/errors.hpp"
#include "scatterqi/parallel.hpp"
#include "scatterqi/rng.hpp"

namespace scatterqi {

namespace {

constexpr double kUnitaryTolerance = 1e-10;

void check_dims(std::size_t n_out, std::size_t n_in) {
  if (n_out == 0 || n_in == 0) {
    throw InvalidArgument("matrix dimensions must be positive");
  }
  // Entries are addressed with Eigen::Index and stored as 16-byte complexes.
  const auto max_entries = static_cast<std::size_t>(
      std::numeric_limits<Eigen::Index>::max() / static_cast<Eigen::Index>(sizeof(Complex)));
  if (n_out > max_entries || n_in > max_entries / n_out) {
    throw InvalidArgument("matrix dimensions overflow: " + std::to_string(n_out) + " x " +
                          std::to_string(n_in));
  }
}

ComplexMatrix gaussian_entries(std::size_t n_out, std::size_t n_in, std::uint64_t seed,
                               unsigned threads) {
  check_dims(n_out, n_in);
  ComplexMatrix m(static_cast<Eigen::Index>(n_out), static_cast<Eigen::Index>(n_in));
  const double variance = 1.0 / static_cast<double>(n_in);
  parallel_for(n_out, threads, [&](std::size_t row) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(row));
    auto r = m.row(static_cast<Eigen::Index>(row));
    for (Eigen::Index c = 0; c < r.size(); ++c) r(c) = rng.complex_normal(variance);
  });
  return m;
}

}  // namespace

const char* to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Gaussian:
      return "gaussian";
    case EnsembleKind::Unitary:
      return "unitary";
  }
  return "unknown";
}

TransmissionMatrix::TransmissionMatrix(ComplexMatrix entries, EnsembleKind kind,
                                       std::uint64_t seed)
    : entries_(std::move(entries)), kind_(kind), seed_(seed) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw InvalidArgument("transmission matrix must be at least 1 x 1");
  }
  if (kind_ != EnsembleKind::Gaussian && kind_ != EnsembleKind::Unitary) {
    throw InvalidArgument("unknown ensemble kind");
  }
  for (Eigen::Index i = 0; i < entries_.size(); ++i) {
    const Complex z = entries_.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("transmission matrix has a non-finite entry");
    }
  }
  if (kind_ == EnsembleKind::Unitary) {
    if (entries_.rows() != entries_.cols()) {
      throw DimensionError("unitary transmission matrix must be square");
    }
    const Eigen::MatrixXcd gram = entries_.adjoint() * entries_;
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
    if ((gram - identity).cwiseAbs().maxCoeff() > kUnitaryTolerance) {
      throw InvalidArgument("matrix tagged unitary violates U^dagger U = 1");
    }
  }
}

TransmissionMatrix gaussian_transmission_matrix(std::size_t n_out, std::size_t n_in,
                                                std::uint64_t seed, unsigned threads) {
  return TransmissionMatrix(gaussian_entries(n_out, n_in, seed, threads),
                            EnsembleKind::Gaussian, seed);
}

TransmissionMatrix haar_unitary(std::size_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) throw InvalidArgument("unitary dimension must be positive");
  const Eigen::MatrixXcd z = gaussian_entries(n, n, seed, threads);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(z.rows(), z.cols());
  const Eigen::MatrixXcd& r = qr.matrixQR();
  // Q R = Z is unique only up to a diagonal unitary; fixing diag(R) > 0
  // is what makes Q Haar distributed.
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return TransmissionMatrix(ComplexMatrix(q), EnsembleKind::Unitary, seed);
}

FieldVector transmit(const TransmissionMatrix& matrix, const FieldVector& input) {
  if (static_cast<std::size_t>(input.size()) != matrix.n_in()) {
    throw DimensionError("input field has length " + std::to_string(input.size()) +
                         ", matrix expects " + std::to_string(matrix.n_in()));
  }
  return matrix.entries() * input;
}

}  // namespace scatterqi
