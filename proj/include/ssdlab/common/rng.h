// Copyright 2026 The ssdlab Authors
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

#ifndef SSDLAB_COMMON_RNG_H_
#define SSDLAB_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ssdlab {

// All randomness in the lab is counter based: a draw is a pure function of
// (seed, purpose, counters...). Streams for different purposes never
// interact, so e.g. adding an agent does not shift environment spawning.
enum class RngPurpose : uint64_t {
  kPlacement = 1,
  kOrientation = 2,
  kMovePriority = 3,
  kWasteSpawn = 4,
  kAppleSpawn = 5,
  kInitialWaste = 6,
  kActionSample = 7,
  kEpisodeSeed = 8,
  kSvoSample = 9,
  kParamInit = 10,
  kMinibatch = 11,
  kEvalSeed = 12,
};

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t HashKey(uint64_t seed, std::initializer_list<uint64_t> parts) {
  uint64_t h = Mix64(seed);
  for (uint64_t p : parts) h = Mix64(h ^ Mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

inline uint64_t HashKey(uint64_t seed, RngPurpose purpose,
                        std::initializer_list<uint64_t> parts = {}) {
  uint64_t h = HashKey(seed, {static_cast<uint64_t>(purpose)});
  for (uint64_t p : parts) h = Mix64(h ^ Mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double ToUnitInterval(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// One uniform draw keyed on (seed, purpose, step, item); used for per-cell
// environment randomness so outcomes do not depend on iteration order.
inline double KeyedUniform(uint64_t seed, RngPurpose purpose, uint64_t step,
                           uint64_t item) {
  return ToUnitInterval(HashKey(seed, purpose, {step, item}));
}

// Sequential generator over a fixed key: draw n is Mix64(key ^ n).
class CounterRng {
 public:
  explicit CounterRng(uint64_t key) : key_(key) {}

  uint64_t NextBits() { return Mix64(key_ ^ Mix64(counter_++)); }
  double Uniform() { return ToUnitInterval(NextBits()); }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Unbiased integer in [0, n) by rejection.
  uint64_t UniformInt(uint64_t n);
  // Box-Muller; one normal per call.
  double Normal();

  uint64_t counter() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

// Fisher-Yates permutation of 0..n-1 driven by `rng`.
std::vector<int> RandomPermutation(int n, CounterRng& rng);

}  // namespace ssdlab

#endif  // SSDLAB_COMMON_RNG_H_
