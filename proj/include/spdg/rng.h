//
// Copyright 2026 The SPDG Tools Authors
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
//

#ifndef SPDG_RNG_H_
#define SPDG_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace spdg {

// Small seeded random stream. Every draw is computed here rather than through
// <random> distributions so that output is identical across standard
// libraries; generated corpora must be byte-reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  // Independent stream keyed by a seed, a string (usually a document id) and
  // any number of integer coordinates (sentence index, token index, op tag).
  static Rng Derive(uint64_t seed, std::string_view key,
                    std::initializer_list<uint64_t> coords);

  // SplitMix64.
  uint64_t Next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double Unit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi]; returns lo exactly when lo == hi.
  double Uniform(double lo, double hi) {
    if (lo == hi) return lo;
    return lo + (hi - lo) * Unit();
  }

  // Box-Muller; returns mean exactly when stddev == 0.
  double Normal(double mean, double stddev);

  bool Bernoulli(double p) { return Unit() < p; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = Below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n), uniformly over k-subsets (Floyd's
  // algorithm), returned in uniformly random order. Requires k <= n.
  std::vector<size_t> SampleDistinct(size_t n, size_t k);

 private:
  uint64_t state_;
};

// 64-bit FNV-1a, used for stream derivation.
uint64_t Fnv1a64(std::string_view bytes);

}  // namespace spdg

#endif  // SPDG_RNG_H_
