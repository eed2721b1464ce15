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

#ifndef SPDG_SRC_KERNELS_KERNELS_INTERNAL_H_
#define SPDG_SRC_KERNELS_KERNELS_INTERNAL_H_

#include <cstddef>

#include "spdg/text_kernels.h"

namespace spdg::kernels::internal {

// Lowercases the character starting at data[i] and returns the index of the
// next character. Multi-byte sequences are only recognized from their lead
// byte, so vector variants may hand over to this at any ASCII boundary.
inline size_t LowerStep(char* data, size_t size, size_t i) {
  const auto b = static_cast<unsigned char>(data[i]);
  if (b < 0x80) {
    if (b >= 'A' && b <= 'Z') data[i] = static_cast<char>(b | 0x20);
    return i + 1;
  }
  if (i + 1 < size) {
    const auto n = static_cast<unsigned char>(data[i + 1]);
    if (b == 0xC3 && n >= 0x80 && n <= 0x9E && n != 0x97) {
      data[i + 1] = static_cast<char>(n + 0x20);
      return i + 2;
    }
    if (b == 0xC5 && n == 0x92) {  // Œ -> œ
      data[i + 1] = static_cast<char>(0x93);
      return i + 2;
    }
    if (b == 0xC5 && n == 0xB8) {  // Ÿ -> ÿ
      data[i] = static_cast<char>(0xC3);
      data[i + 1] = static_cast<char>(0xBF);
      return i + 2;
    }
  }
  return i + 1;
}

// Scalar processing of [i, stop), possibly finishing one sequence past stop.
inline size_t LowerScalarUntil(char* data, size_t size, size_t i,
                               size_t stop) {
  while (i < stop) i = LowerStep(data, size, i);
  return i;
}

void LowercaseScalar(char* data, size_t size);
size_t FindWhitespaceScalar(const char* data, size_t size, size_t from);
size_t SkipWhitespaceScalar(const char* data, size_t size, size_t from);

#if defined(__x86_64__) || defined(_M_X64)
void LowercaseSse2(char* data, size_t size);
size_t FindWhitespaceSse2(const char* data, size_t size, size_t from);
size_t SkipWhitespaceSse2(const char* data, size_t size, size_t from);
void LowercaseAvx2(char* data, size_t size);
size_t FindWhitespaceAvx2(const char* data, size_t size, size_t from);
size_t SkipWhitespaceAvx2(const char* data, size_t size, size_t from);
#endif

#if defined(__aarch64__)
void LowercaseNeon(char* data, size_t size);
size_t FindWhitespaceNeon(const char* data, size_t size, size_t from);
size_t SkipWhitespaceNeon(const char* data, size_t size, size_t from);
#endif

}  // namespace spdg::kernels::internal

#endif  // SPDG_SRC_KERNELS_KERNELS_INTERNAL_H_
