// Copyright 2026 The privguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVGUESS_RNG_HPP_
#define PRIVGUESS_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace privguess {

// splitmix64. Small, seedable, and identical across platforms, which keeps
// search results reproducible for a given seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1]; never 0 so -log(u) stays finite.
  double next_unit() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next_exponential() { return -std::log(next_unit()); }

  // Task k of a sweep draws from seed ^ k, so serial and parallel
  // evaluations of the same sweep agree.
  static SplitMix64 for_task(std::uint64_t seed, std::uint64_t task) {
    return SplitMix64(seed ^ task);
  }

 private:
  std::uint64_t state_;
};

}  // namespace privguess

#endif  // PRIVGUESS_RNG_HPP_
