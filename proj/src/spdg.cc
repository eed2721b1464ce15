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

#include "spdg/spdg.h"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "spdg/errors.h"
#include "spdg/parallel.h"

namespace spdg {
namespace {

void Bump(std::atomic<uint64_t> SpdgCounters::*field, SpdgCounters* counters,
          uint64_t by = 1) {
  if (counters != nullptr) {
    (counters->*field).fetch_add(by, std::memory_order_relaxed);
  }
}

}  // namespace

std::vector<ParallelPair> SpdgBatch(const DocumentBatch& batch,
                                    std::span<const LanguageId> targets,
                                    const WbwContext& ctx,
                                    const DenoiserHook& hook,
                                    const SpdgOptions& options,
                                    SpdgCounters* counters) {
  const size_t n_docs = batch.documents.size();
  const size_t n_tgt = targets.size();
  // translations[d * n_tgt + t]; nullopt where the direction is skipped.
  std::vector<std::optional<std::string>> translations(n_docs * n_tgt);

  ParallelFor(n_docs, options.workers, [&](size_t d) {
    const Document& doc = batch.documents[d];
    Bump(&SpdgCounters::documents, counters);
    for (size_t t = 0; t < n_tgt; ++t) {
      if (targets[t] == doc.lang || !options.Allows(doc.lang, targets[t])) {
        continue;
      }
      WbwResult r = TranslateDocument(doc, targets[t], ctx);
      Bump(&SpdgCounters::tokens, counters, r.token_count);
      Bump(&SpdgCounters::dropped_tokens, counters, r.dropped);
      Bump(&SpdgCounters::lookup_tokens, counters, r.lookup_denominator);
      translations[d * n_tgt + t] = std::move(r.text);
    }
  });

  // One hook exchange per target language, issued from this thread only.
  std::vector<bool> failed(n_docs * n_tgt, false);
  for (size_t t = 0; t < n_tgt; ++t) {
    std::vector<HookRecord> records;
    for (size_t d = 0; d < n_docs; ++d) {
      auto& slot = translations[d * n_tgt + t];
      if (slot && !slot->empty()) {
        records.push_back({static_cast<int64_t>(d), std::move(*slot)});
      }
    }
    if (records.empty()) continue;
    std::vector<HookRecord> refined;
    try {
      refined = hook.Apply(records);
    } catch (const HookError& e) {
      spdlog::warn("denoiser hook failed for {} documents into {}: {}",
                   records.size(), targets[t].str(), e.what());
      Bump(&SpdgCounters::hook_failures, counters);
      for (const HookRecord& r : records) {
        failed[static_cast<size_t>(r.id) * n_tgt + t] = true;
      }
      continue;
    }
    for (HookRecord& r : refined) {
      translations[static_cast<size_t>(r.id) * n_tgt + t] = std::move(r.text);
    }
  }

  std::vector<ParallelPair> pairs;
  for (size_t d = 0; d < n_docs; ++d) {
    const Document& doc = batch.documents[d];
    for (size_t t = 0; t < n_tgt; ++t) {
      const auto& slot = translations[d * n_tgt + t];
      if (!slot || failed[d * n_tgt + t]) continue;
      if (slot->empty()) {
        Bump(&SpdgCounters::empty_outputs, counters);
        continue;
      }
      pairs.push_back(ParallelPair{doc.id, doc.lang, targets[t], doc.text,
                                   *slot, Objective::kSpdg});
      Bump(&SpdgCounters::pairs, counters);
    }
  }
  return pairs;
}

std::optional<ParallelPair> SpdgPair(const Document& doc, LanguageId tgt,
                                     const WbwContext& ctx,
                                     const DenoiserHook& hook,
                                     SpdgCounters* counters) {
  if (doc.lang == tgt) {
    throw std::invalid_argument("document " + doc.id +
                                " is already in the target language");
  }
  DocumentBatch batch;
  batch.documents.push_back(doc);
  const LanguageId targets[] = {tgt};
  std::vector<ParallelPair> pairs =
      SpdgBatch(batch, targets, ctx, hook, SpdgOptions{}, counters);
  if (pairs.empty()) return std::nullopt;
  return std::move(pairs.front());
}

void ValidateMultilingual(std::span<const CorpusInput> corpora,
                          std::span<const LanguageId> langs,
                          const LexiconSet& lexicons,
                          const SpdgOptions& options) {
  if (langs.size() < 2) {
    throw ConfigError("multilingual generation needs at least two languages");
  }
  for (const CorpusInput& corpus : corpora) {
    if (std::find(langs.begin(), langs.end(), corpus.lang) == langs.end()) {
      throw ConfigError("corpus language " + corpus.lang.str() +
                        " is not among the configured languages");
    }
    for (LanguageId tgt : langs) {
      if (tgt == corpus.lang || !options.Allows(corpus.lang, tgt)) continue;
      lexicons.Require(corpus.lang, tgt);
    }
  }
}

void MultilingualSpdg(std::span<CorpusInput> corpora,
                      std::span<const LanguageId> langs, const WbwContext& ctx,
                      const DenoiserHook& hook, const SpdgOptions& options,
                      const PairSink& sink, SpdgCounters* counters) {
  ValidateMultilingual(corpora, langs, *ctx.lexicons, options);
  for (CorpusInput& corpus : corpora) {
    while (auto batch = corpus.next()) {
      for (const ParallelPair& pair :
           SpdgBatch(*batch, langs, ctx, hook, options, counters)) {
        sink(pair);
      }
    }
  }
}

}  // namespace spdg
