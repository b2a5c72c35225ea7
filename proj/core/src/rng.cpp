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

#include "scatterqi/rng.hpp"

#include <cmath>
#include <numbers>

#include "scatterqi/errors.hpp"

namespace scatterqi {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t key) {
  return splitmix64(master_seed ^ splitmix64(key + 0x9e3779b97f4a7c15ULL));
}

std::uint64_t stream_key(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    word = z ^ (z >> 31);
  }
}

Rng Rng::substream(std::uint64_t master_seed, std::uint64_t key) {
  return Rng(derive_seed(master_seed, key));
}

Rng Rng::substream(std::uint64_t master_seed, std::string_view name) {
  return Rng(derive_seed(master_seed, stream_key(name)));
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open_zero() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() {
  // Box-Muller, one variate per call so the stream position is predictable.
  const double r = std::sqrt(-2.0 * std::log(uniform_open_zero()));
  return r * std::cos(2.0 * std::numbers::pi * uniform());
}

std::complex<double> Rng::complex_normal(double variance) {
  // |z|^2 is exponential with mean `variance`; the phase is uniform.
  const double radius = std::sqrt(-variance * std::log(uniform_open_zero()));
  const double phase = 2.0 * std::numbers::pi * uniform();
  return std::polar(radius, phase);
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || mean > 100.0) {
    throw InvalidArgument("poisson mean must lie in [0, 100]");
  }
  if (mean == 0.0) return 0;
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf && p > 0.0) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

}  // namespace scatterqi
