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

// Word-by-word dictionary translation of documents.

#ifndef SPDG_WBW_H_
#define SPDG_WBW_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "spdg/annotate.h"
#include "spdg/corpus.h"
#include "spdg/language.h"
#include "spdg/lexicon.h"
#include "spdg/rng.h"

namespace spdg {

enum class OutcomeKind { kTranslated, kCopied, kTransliterated, kDropped };

const char* OutcomeKindName(OutcomeKind kind);

struct TokenOutcome {
  // Position of the token inside its sentence.
  size_t token_index = 0;
  OutcomeKind kind = OutcomeKind::kDropped;
  // Output surface; empty for kDropped.
  std::string text;
};

struct WbwResult {
  std::string text;
  // One list per sentence, one outcome per token.
  std::vector<std::vector<TokenOutcome>> outcomes;
  // Dropped / (Word + Compound tokens not transliterated); 0 when the
  // denominator is 0.
  double missing_rate = 0.0;
  // Dropped / all tokens, reported for comparison.
  double missing_rate_all_tokens = 0.0;
  size_t token_count = 0;
  size_t dropped = 0;
  size_t lookup_denominator = 0;
};

// Everything the translator needs besides the document itself.
struct WbwContext {
  const LexiconSet* lexicons = nullptr;
  const NerProvider* ner = nullptr;
  const TransliterationProvider* transliterator = nullptr;
  uint64_t seed = 0;
};

// Decision cascade for one token:
//   1. punctuation and numbers are copied;
//   2. a direct or pivot dictionary hit is translated, one candidate drawn
//      uniformly;
//   3. named entities are transliterated;
//   4. compounds are translated part by part, rejoined with the original
//      separators, if every part has a translation;
//   5. anything else is dropped.
TokenOutcome TranslateToken(const Token& token, size_t token_index,
                            LanguageId src, LanguageId tgt,
                            const LexiconSet& lexicons, bool named_entity,
                            const TransliterationProvider& transliterator,
                            Rng& rng);

// Translates every token of `doc` into `tgt`. Output is sentence by sentence,
// surviving token surfaces joined with single spaces. The per-token random
// stream is derived from (seed, doc id, sentence index, token index), so the
// result does not depend on execution order. Throws ConfigError if the
// direction is not resolvable and std::invalid_argument if doc.lang == tgt.
WbwResult TranslateDocument(const Document& doc, LanguageId tgt,
                            const WbwContext& ctx);

}  // namespace spdg

#endif  // SPDG_WBW_H_
