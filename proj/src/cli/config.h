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


// Run configuration: one JSON file describing corpora, lexicons, providers
// and generator settings, plus command-line overrides.

#ifndef SPDG_CLI_CONFIG_H_
#define SPDG_CLI_CONFIG_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spdg/annotate.h"
#include "spdg/denoiser.h"
#include "spdg/language.h"
#include "spdg/lexicon.h"
#include "spdg/mix.h"
#include "spdg/mlm.h"
#include "spdg/noiser.h"
#include "spdg/wbw.h"

namespace spdg::cli {

struct ExternalCommand {
  std::string command;
  std::chrono::milliseconds timeout{std::chrono::seconds(60)};
};

struct PipelineConfig {
  std::vector<LanguageId> languages;
  std::map<LanguageId, std::filesystem::path> corpora;
  std::map<LanguagePair, std::filesystem::path> lexicons;
  LanguageId pivot{"en"};
  size_t batch_capacity = DocumentBatch::kDefaultCapacity;
  uint64_t seed = 0;
  size_t workers = 1;
  std::optional<std::filesystem::path> gazetteer;
  std::optional<ExternalCommand> ner;
  std::optional<ExternalCommand> transliteration;
  std::map<LanguageId, NoiseProfile> noise_profiles;
  std::vector<CorruptionOp> corruption_order = CorruptOptions{}.order;
  DenoiserHook denoiser;
  MlmParams mlm;
  Objective mix_mlm_objective = Objective::kMlm;
  bool mix_enabled = false;
  MixSchedule mix;
  std::filesystem::path output = "out.jsonl";

  // Explicit profile, else the built-in default. Throws ConfigError when the
  // language has neither.
  NoiseProfile ProfileFor(LanguageId lang) const;
};

// Parses and validates a config file. Relative paths are resolved against
// the file's directory. Throws ConfigError.
PipelineConfig LoadConfig(const std::filesystem::path& path);

// Same, from an already-parsed JSON text.
PipelineConfig ParseConfig(const std::string& json_text,
                           const std::filesystem::path& base_dir);

// Structural checks plus existence of every referenced file. Throws
// ConfigError naming the offending entry.
void ValidateConfig(const PipelineConfig& config);

// Loaded lexicons and providers for one run.
struct Resources {
  std::unique_ptr<LexiconSet> lexicons;
  std::unique_ptr<NerProvider> ner;
  std::unique_ptr<TransliterationProvider> transliterator;

  WbwContext Context(uint64_t seed) const {
    return {lexicons.get(), ner.get(), transliterator.get(), seed};
  }
};

// Loads the lexicons for `needed` directions (all configured ones when
// empty) and builds the providers.
Resources LoadResources(const PipelineConfig& config,
                        const std::set<LanguagePair>& needed = {});

// Lexicon directions required to serve (src, tgt) with this config's pivot.
std::set<LanguagePair> LexiconsFor(const PipelineConfig& config,
                                   LanguageId src, LanguageId tgt);

}  // namespace spdg::cli

#endif  // SPDG_CLI_CONFIG_H_
