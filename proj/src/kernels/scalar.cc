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

#include "kernels_internal.h"

namespace spdg::kernels::internal {

void LowercaseScalar(char* data, size_t size) {
  LowerScalarUntil(data, size, 0, size);
}

size_t FindWhitespaceScalar(const char* data, size_t size, size_t from) {
  for (size_t i = from; i < size; ++i) {
    if (IsAsciiSpace(data[i])) return i;
  }
  return size;
}

size_t SkipWhitespaceScalar(const char* data, size_t size, size_t from) {
  for (size_t i = from; i < size; ++i) {
    if (!IsAsciiSpace(data[i])) return i;
  }
  return size;
}

}  // namespace spdg::kernels::internal
