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

// Pseudo-parallel pair generation: every document is paired with its
// word-by-word translation (refined by the denoiser hook) into each of the
// other languages.

#ifndef SPDG_SPDG_H_
#define SPDG_SPDG_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "spdg/corpus.h"
#include "spdg/denoiser.h"
#include "spdg/language.h"
#include "spdg/noiser.h"
#include "spdg/wbw.h"

namespace spdg {

struct SpdgCounters {
  std::atomic<uint64_t> documents{0};
  std::atomic<uint64_t> tokens{0};
  std::atomic<uint64_t> dropped_tokens{0};
  std::atomic<uint64_t> lookup_tokens{0};
  std::atomic<uint64_t> pairs{0};
  std::atomic<uint64_t> hook_failures{0};
  // Pairs skipped because the translation (or hook output) was empty.
  std::atomic<uint64_t> empty_outputs{0};
};

struct SpdgOptions {
  size_t workers = 1;
  // When non-empty, only these directions are generated.
  std::set<LanguagePair> directions;

  bool Allows(LanguageId src, LanguageId tgt) const {
    return directions.empty() || directions.contains({src, tgt});
  }
};

// Pairs for every document of `batch` and every language in `targets`
// (skipping the document's own language and directions the options filter
// out), ordered document-major then by `targets` order. Each (batch, target)
// group goes through the hook as one exchange; a failed exchange drops the
// whole group and counts one hook failure.
std::vector<ParallelPair> SpdgBatch(const DocumentBatch& batch,
                                    std::span<const LanguageId> targets,
                                    const WbwContext& ctx,
                                    const DenoiserHook& hook,
                                    const SpdgOptions& options,
                                    SpdgCounters* counters = nullptr);

// Single document, single target. nullopt when the hook failed or the
// translation came out empty.
std::optional<ParallelPair> SpdgPair(const Document& doc, LanguageId tgt,
                                     const WbwContext& ctx,
                                     const DenoiserHook& hook,
                                     SpdgCounters* counters = nullptr);

struct CorpusInput {
  LanguageId lang;
  BatchSource next;
};

using PairSink = std::function<void(const ParallelPair&)>;

// Checks that |langs| >= 2, every corpus language is in `langs`, and every
// direction that will be generated is resolvable. Throws ConfigError.
void ValidateMultilingual(std::span<const CorpusInput> corpora,
                          std::span<const LanguageId> langs,
                          const LexiconSet& lexicons,
                          const SpdgOptions& options);

// Streams pairs for every corpus, document and other language, in that
// order. Validation happens before the first batch is read.
void MultilingualSpdg(std::span<CorpusInput> corpora,
                      std::span<const LanguageId> langs, const WbwContext& ctx,
                      const DenoiserHook& hook, const SpdgOptions& options,
                      const PairSink& sink, SpdgCounters* counters = nullptr);

}  // namespace spdg

#endif  // SPDG_SPDG_H_
