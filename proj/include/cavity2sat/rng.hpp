// Copyright 2026 The cavity2sat Authors
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

#ifndef CAVITY2SAT_RNG_HPP
#define CAVITY2SAT_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace cavity2sat {

// Identifier written into every run manifest.
inline constexpr std::string_view kRngAlgorithm =
    "philox4x32-10/splitmix64-streams/v1";

// Philox4x32 with 10 rounds (Salmon et al., Random123). Pure function of
// (counter, key).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

// Purpose tags keep streams of different consumers disjoint.
enum class StreamTag : std::uint64_t {
  kFormula = 1,
  kCoupled = 2,
  kTree = 3,
  kPopulation = 4,
  kPopulationPlus = 5,
  kBethe = 6,
  kSoftBethe = 7,
  kAss = 8,
  kCurve = 9,
  kTrial = 10,
  kContraction = 11,
};

// 64-bit stream identifier derived from (tag, a, b).
std::uint64_t stream_id(StreamTag tag, std::uint64_t a = 0,
                        std::uint64_t b = 0);

// Counter-based generator: the key is the user seed, the high counter
// half selects the stream and the low half counts blocks. Two generators
// built from the same (seed, stream) produce the same sequence on every
// platform.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  CounterRng(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0,
             std::uint64_t b = 0)
      : CounterRng(seed, stream_id(tag, a, b)) {}

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on {0, ..., n-1}; n > 0. Unbiased (Lemire rejection).
  std::uint64_t uniform_index(std::uint64_t n);
  // +1 or -1 with probability 1/2 each.
  int sign();
  // Poisson(mean), mean >= 0. Inversion below mean 10, PTRS above.
  std::uint64_t poisson(double mean);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned used_ = 4;
};

}  // namespace cavity2sat

#endif  // CAVITY2SAT_RNG_HPP
