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

// Line-delimited JSON exchange with a child process, and the denoiser hook
// built on it.
//
// Protocol: the parent writes one {"id": <int>, "text": <string>} object per
// line to the child's stdin and closes it. The child must print exactly one
// object of the same shape per input record to stdout, in any order, and
// exit with status 0. Responses are matched back by id.

#ifndef SPDG_DENOISER_H_
#define SPDG_DENOISER_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace spdg {

struct HookRecord {
  int64_t id = 0;
  std::string text;

  friend bool operator==(const HookRecord&, const HookRecord&) = default;
};

// Runs `command` through /bin/sh and performs one exchange. Throws HookError
// on spawn failure, timeout, non-zero exit, malformed output, or when the
// response ids differ from the request ids. The result is sorted by id.
std::vector<HookRecord> ExchangeJsonl(const std::string& command,
                                      const std::vector<HookRecord>& records,
                                      std::chrono::milliseconds timeout);

struct DenoiserHook {
  enum class Mode { kIdentity, kExternal };

  Mode mode = Mode::kIdentity;
  std::string command;
  std::chrono::milliseconds timeout{std::chrono::seconds(60)};

  static DenoiserHook Identity() { return {}; }
  static DenoiserHook External(std::string command,
                               std::chrono::milliseconds timeout) {
    return {Mode::kExternal, std::move(command), timeout};
  }

  // Identity mode returns `records` unchanged; external mode runs one
  // exchange (see ExchangeJsonl).
  std::vector<HookRecord> Apply(const std::vector<HookRecord>& records) const;
};

// External-mode exchange. Throws std::invalid_argument for an identity hook.
std::vector<HookRecord> DenoiseExternal(const DenoiserHook& hook,
                                        const std::vector<HookRecord>& records);

}  // namespace spdg

#endif  // SPDG_DENOISER_H_
