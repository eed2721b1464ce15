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

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "kernels_internal.h"

#define SPDG_AVX2 __attribute__((target("avx2")))

namespace spdg::kernels::internal {
namespace {

constexpr size_t kLanes = 32;

SPDG_AVX2 inline __m256i SpaceMask(__m256i v) {
  const __m256i range =
      _mm256_and_si256(_mm256_cmpgt_epi8(v, _mm256_set1_epi8(8)),
                       _mm256_cmpgt_epi8(_mm256_set1_epi8(14), v));
  return _mm256_or_si256(range, _mm256_cmpeq_epi8(v, _mm256_set1_epi8(' ')));
}

}  // namespace

SPDG_AVX2 void LowercaseAvx2(char* data, size_t size) {
  size_t i = 0;
  while (i + kLanes <= size) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    if (_mm256_movemask_epi8(v) != 0) {
      i = LowerScalarUntil(data, size, i, i + kLanes);
      continue;
    }
    const __m256i upper =
        _mm256_and_si256(_mm256_cmpgt_epi8(v, _mm256_set1_epi8('A' - 1)),
                         _mm256_cmpgt_epi8(_mm256_set1_epi8('Z' + 1), v));
    v = _mm256_or_si256(v, _mm256_and_si256(upper, _mm256_set1_epi8(0x20)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(data + i), v);
    i += kLanes;
  }
  LowerScalarUntil(data, size, i, size);
}

SPDG_AVX2 size_t FindWhitespaceAvx2(const char* data, size_t size,
                                    size_t from) {
  size_t i = from;
  for (; i + kLanes <= size; i += kLanes) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    const auto bits =
        static_cast<unsigned>(_mm256_movemask_epi8(SpaceMask(v)));
    if (bits != 0) return i + __builtin_ctz(bits);
  }
  return FindWhitespaceScalar(data, size, i);
}

SPDG_AVX2 size_t SkipWhitespaceAvx2(const char* data, size_t size,
                                    size_t from) {
  size_t i = from;
  for (; i + kLanes <= size; i += kLanes) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    const auto bits =
        ~static_cast<unsigned>(_mm256_movemask_epi8(SpaceMask(v)));
    if (bits != 0) return i + __builtin_ctz(bits);
  }
  return SkipWhitespaceScalar(data, size, i);
}

}  // namespace spdg::kernels::internal

#endif
