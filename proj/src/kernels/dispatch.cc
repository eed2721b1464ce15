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

#include <cstdlib>
#include <string_view>
#include <vector>

#include "kernels_internal.h"
#include "spdg/text_kernels.h"

namespace spdg::kernels {
namespace {

using namespace internal;

std::vector<TextKernels> DetectAvailable() {
  std::vector<TextKernels> out;
  out.push_back(ScalarKernels());
#if defined(__x86_64__) || defined(_M_X64)
  // SSE2 is part of the x86-64 baseline.
  out.push_back({Isa::kSse2, &LowercaseSse2, &FindWhitespaceSse2,
                 &SkipWhitespaceSse2});
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) {
    out.push_back({Isa::kAvx2, &LowercaseAvx2, &FindWhitespaceAvx2,
                   &SkipWhitespaceAvx2});
  }
#endif
#if defined(__aarch64__)
  out.push_back({Isa::kNeon, &LowercaseNeon, &FindWhitespaceNeon,
                 &SkipWhitespaceNeon});
#endif
  return out;
}

const TextKernels& Choose() {
  const auto available = AvailableKernels();
  if (const char* forced = std::getenv("SPDG_ISA")) {
    for (const TextKernels& k : available) {
      if (std::string_view(IsaName(k.isa)) == forced) return k;
    }
  }
  return available.back();
}

}  // namespace

const char* IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kSse2:
      return "sse2";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

const TextKernels& ScalarKernels() {
  static const TextKernels kScalar = {Isa::kScalar, &LowercaseScalar,
                                      &FindWhitespaceScalar,
                                      &SkipWhitespaceScalar};
  return kScalar;
}

std::span<const TextKernels> AvailableKernels() {
  static const std::vector<TextKernels> kAvailable = DetectAvailable();
  return kAvailable;
}

const TextKernels& ActiveKernels() {
  static const TextKernels& active = Choose();
  return active;
}

}  // namespace spdg::kernels

namespace spdg {

std::string LowercaseUtf8(std::string_view text) {
  std::string out(text);
  kernels::ActiveKernels().lowercase_utf8(out.data(), out.size());
  return out;
}

}  // namespace spdg
