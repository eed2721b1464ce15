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

#include <emmintrin.h>

#include "kernels_internal.h"

namespace spdg::kernels::internal {
namespace {

constexpr size_t kLanes = 16;

// 0xFF in every lane holding ' ' or '\t'..'\r'. Bytes >= 0x80 compare as
// negative and never match.
inline __m128i SpaceMask(__m128i v) {
  const __m128i range = _mm_and_si128(_mm_cmpgt_epi8(v, _mm_set1_epi8(8)),
                                      _mm_cmplt_epi8(v, _mm_set1_epi8(14)));
  return _mm_or_si128(range, _mm_cmpeq_epi8(v, _mm_set1_epi8(' ')));
}

}  // namespace

void LowercaseSse2(char* data, size_t size) {
  size_t i = 0;
  while (i + kLanes <= size) {
    __m128i v = _mm_loadu_si128(reinterpret_cast<const __m128i*>(data + i));
    if (_mm_movemask_epi8(v) != 0) {
      i = LowerScalarUntil(data, size, i, i + kLanes);
      continue;
    }
    const __m128i upper =
        _mm_and_si128(_mm_cmpgt_epi8(v, _mm_set1_epi8('A' - 1)),
                      _mm_cmplt_epi8(v, _mm_set1_epi8('Z' + 1)));
    v = _mm_or_si128(v, _mm_and_si128(upper, _mm_set1_epi8(0x20)));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(data + i), v);
    i += kLanes;
  }
  LowerScalarUntil(data, size, i, size);
}

size_t FindWhitespaceSse2(const char* data, size_t size, size_t from) {
  size_t i = from;
  for (; i + kLanes <= size; i += kLanes) {
    const __m128i v =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(data + i));
    const int bits = _mm_movemask_epi8(SpaceMask(v));
    if (bits != 0) return i + __builtin_ctz(bits);
  }
  return FindWhitespaceScalar(data, size, i);
}

size_t SkipWhitespaceSse2(const char* data, size_t size, size_t from) {
  size_t i = from;
  for (; i + kLanes <= size; i += kLanes) {
    const __m128i v =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(data + i));
    const int bits = ~_mm_movemask_epi8(SpaceMask(v)) & 0xFFFF;
    if (bits != 0) return i + __builtin_ctz(bits);
  }
  return SkipWhitespaceScalar(data, size, i);
}

}  // namespace spdg::kernels::internal

#endif
