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

#if defined(__aarch64__)

#include <arm_neon.h>

#include "kernels_internal.h"

namespace spdg::kernels::internal {
namespace {

constexpr size_t kLanes = 16;

inline uint8x16_t SpaceMask(uint8x16_t v) {
  // '\t'..'\r' is a 5-wide range starting at 9: (v - 9) < 5 unsigned.
  const uint8x16_t range = vcltq_u8(vsubq_u8(v, vdupq_n_u8(9)), vdupq_n_u8(5));
  return vorrq_u8(range, vceqq_u8(v, vdupq_n_u8(' ')));
}

}  // namespace

void LowercaseNeon(char* data, size_t size) {
  size_t i = 0;
  while (i + kLanes <= size) {
    uint8x16_t v = vld1q_u8(reinterpret_cast<const uint8_t*>(data + i));
    if (vmaxvq_u8(v) >= 0x80) {
      i = LowerScalarUntil(data, size, i, i + kLanes);
      continue;
    }
    const uint8x16_t upper =
        vcltq_u8(vsubq_u8(v, vdupq_n_u8('A')), vdupq_n_u8(26));
    v = vorrq_u8(v, vandq_u8(upper, vdupq_n_u8(0x20)));
    vst1q_u8(reinterpret_cast<uint8_t*>(data + i), v);
    i += kLanes;
  }
  LowerScalarUntil(data, size, i, size);
}

size_t FindWhitespaceNeon(const char* data, size_t size, size_t from) {
  size_t i = from;
  for (; i + kLanes <= size; i += kLanes) {
    const uint8x16_t v = vld1q_u8(reinterpret_cast<const uint8_t*>(data + i));
    if (vmaxvq_u8(SpaceMask(v)) != 0) {
      return FindWhitespaceScalar(data, i + kLanes, i);
    }
  }
  return FindWhitespaceScalar(data, size, i);
}

size_t SkipWhitespaceNeon(const char* data, size_t size, size_t from) {
  size_t i = from;
  for (; i + kLanes <= size; i += kLanes) {
    const uint8x16_t v = vld1q_u8(reinterpret_cast<const uint8_t*>(data + i));
    if (vminvq_u8(SpaceMask(v)) == 0) {
      return SkipWhitespaceScalar(data, i + kLanes, i);
    }
  }
  return SkipWhitespaceScalar(data, size, i);
}

}  // namespace spdg::kernels::internal

#endif
