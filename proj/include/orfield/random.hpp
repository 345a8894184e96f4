// Copyright 2026 The OrField Authors
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

#ifndef ORFIELD_RANDOM_HPP_
#define ORFIELD_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace orfield {

// mt19937_64 is fully specified by the standard; the real-valued conversion
// is done by hand so sequences match across standard library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

// Stable per-consumer seed offsets.
namespace seed_offset {
inline constexpr std::uint64_t kScene = 0x5ce0;
inline constexpr std::uint64_t kPlanner = 0x91a0;
inline constexpr std::uint64_t kAugment = 0xa090;
inline constexpr std::uint64_t kExperiment = 0xe4e0;
}  // namespace seed_offset

}  // namespace orfield

#endif  // ORFIELD_RANDOM_HPP_
