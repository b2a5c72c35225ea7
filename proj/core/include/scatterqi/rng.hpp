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

#ifndef SCATTERQI_RNG_HPP
#define SCATTERQI_RNG_HPP

#include <complex>
#include <cstdint>
#include <string_view>

namespace scatterqi {

// xoshiro256++ seeded through splitmix64.
//
// Every stochastic quantity in the library draws from an Rng obtained via
// Rng::substream(master_seed, key). The key derivation is
//
//   state seed = splitmix64(master_seed ^ splitmix64(key + 0x9e3779b97f4a7c15))
//
// followed by four splitmix64 steps to fill the xoshiro state. Keys are
// either small integers (row index, block index, trial index) or the FNV-1a
// hash of a stream name (stream_key("medium")). Substreams therefore do not
// depend on how work is split across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng substream(std::uint64_t master_seed, std::uint64_t key);
  static Rng substream(std::uint64_t master_seed, std::string_view name);

  std::uint64_t next();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1].
  double uniform_open_zero();
  double normal();
  // Circular complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_normal(double variance);
  // Inversion sampler; mean must lie in [0, 100].
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t key);
std::uint64_t stream_key(std::string_view name);

}  // namespace scatterqi

#endif  // SCATTERQI_RNG_HPP
