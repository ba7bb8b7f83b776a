// Copyright 2026 The qctrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCTRL_RNG_HPP
#define QCTRL_RNG_HPP

#include <cstdint>

namespace qctrl {

// splitmix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 /
// std::uniform_real_distribution so that streams are identical on every
// platform and standard library; results must be byte-reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 random bits
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream for a work item identified by one or two
// indices. Streams depend only on (seed, indices), never on scheduling
// order, so parallel runs reproduce the serial results exactly.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t i) {
  return SplitMix64(mix64(seed ^ mix64(i + 0x9e3779b97f4a7c15ULL)));
}

inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t i,
                                std::uint64_t j) {
  return SplitMix64(
      mix64(seed ^ mix64(i + 0x9e3779b97f4a7c15ULL) ^ mix64(j + 0x3c6ef372fe94f82aULL)));
}

}  // namespace qctrl

#endif  // QCTRL_RNG_HPP
