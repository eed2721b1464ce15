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

// Byte-level text kernels used on the ingestion hot path.
//
// Each kernel has a scalar reference implementation and vector variants
// (SSE2, AVX2 on x86-64; NEON on AArch64). The best variant supported by the
// running CPU is picked once at first use; SPDG_ISA=scalar|sse2|avx2|neon
// forces a specific one. All variants must produce results identical to the
// scalar reference, which the kernel tests check on randomized inputs.

#ifndef SPDG_TEXT_KERNELS_H_
#define SPDG_TEXT_KERNELS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace spdg::kernels {

enum class Isa { kScalar, kSse2, kAvx2, kNeon };

const char* IsaName(Isa isa);

struct TextKernels {
  Isa isa;

  // In-place UTF-8 lowercasing of ASCII A-Z, Latin-1 uppercase letters
  // (U+00C0..U+00DE except U+00D7) and U+0152/U+0178. Byte length is
  // preserved; all other bytes are untouched.
  void (*lowercase_utf8)(char* data, size_t size);

  // Index of the first ASCII whitespace byte at or after `from`, or `size`.
  size_t (*find_whitespace)(const char* data, size_t size, size_t from);

  // Index of the first non-whitespace byte at or after `from`, or `size`.
  size_t (*skip_whitespace)(const char* data, size_t size, size_t from);
};

const TextKernels& ScalarKernels();

// Variants runnable on this CPU, scalar first.
std::span<const TextKernels> AvailableKernels();

// The dispatch choice used by the rest of the library.
const TextKernels& ActiveKernels();

inline bool IsAsciiSpace(char c) {
  return c == ' ' || (c >= '\t' && c <= '\r');
}

}  // namespace spdg::kernels

namespace spdg {

// Lowercased copy of `text` using the active kernels.
std::string LowercaseUtf8(std::string_view text);

}  // namespace spdg

#endif  // SPDG_TEXT_KERNELS_H_
