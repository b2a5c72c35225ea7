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

#include "scatterqi/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "scatterqi/errors.hpp"

namespace scatterqi {

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'Q', 'T', 'M', 'A', 'T', 'R', 'X'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

void read_exact(std::istream& in, unsigned char* buf, std::size_t n) {
  in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw FormatError("matrix container truncated");
  }
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  read_exact(in, b, 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  read_exact(in, b, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void write_matrix(std::ostream& out, const TransmissionMatrix& matrix) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kVersion);
  put_u32(out, 0);
  put_u64(out, matrix.n_out());
  put_u64(out, matrix.n_in());
  put_u32(out, static_cast<std::uint32_t>(matrix.kind()));
  put_u32(out, 0);
  put_u64(out, matrix.seed());
  const ComplexMatrix& e = matrix.entries();
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    put_f64(out, e.data()[i].real());
    put_f64(out, e.data()[i].imag());
  }
  if (!out) throw FormatError("failed writing matrix container");
}

TransmissionMatrix read_matrix(std::istream& in) {
  std::array<unsigned char, 8> magic{};
  read_exact(in, magic.data(), magic.size());
  if (std::memcmp(magic.data(), kMagic.data(), kMagic.size()) != 0) {
    throw FormatError("not a transmission-matrix container (bad magic)");
  }
  const std::uint32_t version = get_u32(in);
  if (version != kVersion) {
    throw FormatError("unsupported matrix container version " + std::to_string(version));
  }
  get_u32(in);
  const std::uint64_t n_out = get_u64(in);
  const std::uint64_t n_in = get_u64(in);
  const std::uint32_t kind = get_u32(in);
  get_u32(in);
  const std::uint64_t seed = get_u64(in);
  if (kind != static_cast<std::uint32_t>(EnsembleKind::Gaussian) &&
      kind != static_cast<std::uint32_t>(EnsembleKind::Unitary)) {
    throw FormatError("unknown ensemble kind tag " + std::to_string(kind));
  }
  if (n_out == 0 || n_in == 0 || n_out > (1ULL << 31) || n_in > (1ULL << 31) ||
      n_out * n_in > (1ULL << 32)) {
    throw FormatError("implausible matrix dimensions in container");
  }
  // Catch truncation before allocating, when the stream can tell.
  const auto here = in.tellg();
  if (here != std::streampos(-1)) {
    in.seekg(0, std::ios::end);
    const auto end = in.tellg();
    in.seekg(here);
    if (end != std::streampos(-1) &&
        static_cast<std::uint64_t>(end - here) < n_out * n_in * 16) {
      throw FormatError("matrix container truncated");
    }
  }
  ComplexMatrix e(static_cast<Eigen::Index>(n_out), static_cast<Eigen::Index>(n_in));
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    const double re = std::bit_cast<double>(get_u64(in));
    const double im = std::bit_cast<double>(get_u64(in));
    e.data()[i] = Complex(re, im);
  }
  return TransmissionMatrix(std::move(e), static_cast<EnsembleKind>(kind), seed);
}

void write_matrix_file(const std::filesystem::path& path, const TransmissionMatrix& matrix) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_matrix(out, matrix);
}

TransmissionMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_matrix(in);
}

}  // namespace scatterqi
