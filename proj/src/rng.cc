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

#include "spdg/rng.h"

#include <cmath>
#include <numbers>

namespace spdg {
namespace {

uint64_t Mix(uint64_t h, uint64_t v) {
  Rng mixer(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
  return mixer.Next();
}

}  // namespace

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng Rng::Derive(uint64_t seed, std::string_view key,
                std::initializer_list<uint64_t> coords) {
  uint64_t h = Mix(seed, Fnv1a64(key));
  for (uint64_t c : coords) h = Mix(h, c);
  return Rng(h);
}

uint64_t Rng::Below(uint64_t n) {
  // Lemire's nearly-divisionless bounded draw.
  unsigned __int128 m = static_cast<unsigned __int128>(Next()) * n;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < n) {
    const uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(Next()) * n;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

double Rng::Normal(double mean, double stddev) {
  if (stddev == 0.0) return mean;
  // 1 - Unit() lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - Unit();
  const double u2 = Unit();
  const double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

std::vector<size_t> Rng::SampleDistinct(size_t n, size_t k) {
  std::vector<size_t> out;
  out.reserve(k);
  if (k == 0) return out;
  if (k * 2 >= n) {
    // Dense case: partial Fisher-Yates over the full index range.
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    for (size_t i = 0; i < k; ++i) {
      const size_t j = i + Below(n - i);
      std::swap(idx[i], idx[j]);
      out.push_back(idx[i]);
    }
    return out;
  }
  std::unordered_set<size_t> chosen;
  chosen.reserve(k * 2);
  for (size_t j = n - k; j < n; ++j) {
    const size_t t = Below(j + 1);
    const size_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  Shuffle(std::span<size_t>(out));
  return out;
}

}  // namespace spdg
