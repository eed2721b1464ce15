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


// Subcommands of the spdg tool.

#ifndef SPDG_CLI_COMMANDS_H_
#define SPDG_CLI_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "cli/config.h"

namespace spdg::cli {

// Flags shared by every subcommand; unset values fall back to the config.
struct CommonFlags {
  std::filesystem::path config;
  std::optional<uint64_t> seed;
  std::optional<size_t> workers;
  std::optional<std::filesystem::path> output;
  std::string pairs;  // "en-fr,fr-en"
  size_t limit = 0;   // documents per corpus, 0 = all
};

// Counters reported in the <output>.stats.json sidecar.
struct RunStats {
  uint64_t documents = 0;
  uint64_t tokens = 0;
  uint64_t dropped_tokens = 0;
  uint64_t lookup_tokens = 0;
  std::map<std::string, uint64_t> pairs;
  std::map<std::string, uint64_t> blocks;
  uint64_t hook_failures = 0;
  uint64_t empty_pool_warnings = 0;
  double wall_seconds = 0.0;

  std::string ToJson() const;
};

// Config loaded from flags.config with the overrides applied and validated.
PipelineConfig ResolveConfig(const CommonFlags& flags);

// Each command returns the stats it wrote; errors propagate as exceptions.
void RunCalibrate(const CommonFlags& flags,
                  const std::optional<std::string>& tgt);
RunStats RunWbw(const CommonFlags& flags, const std::string& src,
                const std::string& tgt);
RunStats RunDenoiseData(const CommonFlags& flags, const std::string& lang);
RunStats RunSpdgData(const CommonFlags& flags, bool force_mix);
RunStats RunMlmData(const CommonFlags& flags, const std::string& objective,
                    const std::optional<std::string>& lang);
// Summary of a pair file as JSON.
std::string PairFileSummary(const std::filesystem::path& path);

// Entry point: parses argv, dispatches, maps errors to exit codes
// (0 ok, 2 configuration, 3 data).
int Main(int argc, char** argv);

}  // namespace spdg::cli

#endif  // SPDG_CLI_COMMANDS_H_
