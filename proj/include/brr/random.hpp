// Copyright 2026 The BRR Authors.
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

#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "brr/core.hpp"

namespace brr {

// splitmix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded stream. std::mt19937_64 output is fixed by the standard and the
// double conversion below is done by hand, so sequences are bit-identical
// across platforms and standard libraries. Single owner; not thread-safe.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Lemire-style rejection keeps this exact and portable.
    const std::uint64_t limit = -n % n;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r < limit);
    return r % n;
  }

  // Child stream for parallel task `index`: seed = hash(master, index).
  RandomSource child(std::uint64_t index) const {
    return RandomSource(mix_seed(seed_ ^ mix_seed(index)));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

// Inverse-CDF draw over ascending positions; returns a 0-based index. Mass
// lost to rounding at the top of the CDF falls on the last non-zero entry.
inline std::size_t sample_index(std::span<const double> weights, double u) {
  double cum = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_nonzero = i;
    cum += weights[i];
    if (u < cum) return i;
  }
  return last_nonzero;
}

inline CandidateId sample(const MechanismTable& m, CandidateId x, RandomSource& rng) {
  if (x < 1 || x > m.size()) throw InvalidInput("truth id out of range");
  return sample_index(m.row(x), rng.uniform()) + 1;
}

}  // namespace brr
