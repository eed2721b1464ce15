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

#include "spdg/wbw.h"

#include <stdexcept>

#include "utf8.h"

namespace spdg {
namespace {

constexpr uint64_t kTokenStreamTag = 0x7b7;

// Translation of one dictionary-looked-up word, or false.
bool TranslateWord(std::string_view word, LanguageId src, LanguageId tgt,
                   const LexiconSet& lexicons, Rng& rng, std::string& out) {
  const Candidates candidates = lexicons.LookupWithPivot(src, tgt, word);
  if (candidates.empty()) return false;
  const std::string_view pick =
      candidates.size() == 1 ? candidates[0]
                             : candidates[rng.Below(candidates.size())];
  out.append(pick);
  return true;
}

// Splits a compound into alphabetic parts and translates each; separators are
// kept verbatim.
bool TranslateCompound(std::string_view surface, LanguageId src,
                       LanguageId tgt, const LexiconSet& lexicons, Rng& rng,
                       std::string& out) {
  size_t part_start = 0;
  size_t i = 0;
  while (i <= surface.size()) {
    bool boundary = i == surface.size();
    size_t len = 1;
    if (!boundary) {
      const utf8::Decoded d = utf8::DecodeAt(surface, i);
      len = d.length;
      boundary = utf8::IsCompoundSeparator(d.cp);
    }
    if (boundary) {
      if (i > part_start &&
          !TranslateWord(surface.substr(part_start, i - part_start), src, tgt,
                         lexicons, rng, out)) {
        return false;
      }
      if (i < surface.size()) out.append(surface.substr(i, len));
      part_start = i + len;
    }
    i += len;
  }
  return true;
}

}  // namespace

const char* OutcomeKindName(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kTranslated:
      return "translated";
    case OutcomeKind::kCopied:
      return "copied";
    case OutcomeKind::kTransliterated:
      return "transliterated";
    case OutcomeKind::kDropped:
      return "dropped";
  }
  return "unknown";
}

TokenOutcome TranslateToken(const Token& token, size_t token_index,
                            LanguageId src, LanguageId tgt,
                            const LexiconSet& lexicons, bool named_entity,
                            const TransliterationProvider& transliterator,
                            Rng& rng) {
  TokenOutcome outcome{token_index, OutcomeKind::kDropped, {}};
  if (token.kind == TokenKind::kPunctuation ||
      token.kind == TokenKind::kNumber) {
    outcome.kind = OutcomeKind::kCopied;
    outcome.text = token.surface;
    return outcome;
  }
  if (TranslateWord(token.surface, src, tgt, lexicons, rng, outcome.text)) {
    outcome.kind = OutcomeKind::kTranslated;
    return outcome;
  }
  if (named_entity) {
    outcome.kind = OutcomeKind::kTransliterated;
    outcome.text = transliterator.Transliterate(token.surface, src, tgt);
    return outcome;
  }
  if (token.kind == TokenKind::kCompound) {
    std::string joined;
    if (TranslateCompound(token.surface, src, tgt, lexicons, rng, joined)) {
      outcome.kind = OutcomeKind::kTranslated;
      outcome.text = std::move(joined);
      return outcome;
    }
  }
  return outcome;
}

WbwResult TranslateDocument(const Document& doc, LanguageId tgt,
                            const WbwContext& ctx) {
  if (doc.lang == tgt) {
    throw std::invalid_argument("document " + doc.id +
                                " is already in the target language");
  }
  ctx.lexicons->Require(doc.lang, tgt);

  std::vector<std::vector<bool>> ne_flags(doc.sentences.size());
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    ne_flags[s].assign(doc.sentences[s].tokens.size(), false);
  }
  if (ctx.ner != nullptr) {
    for (const NeSpan& span : DetectNamedEntities(doc, *ctx.ner)) {
      for (size_t t = span.begin; t < span.end; ++t) {
        ne_flags[span.sentence_index][t] = true;
      }
    }
  }
  static const DefaultTransliterator kFallbackTransliterator;
  const TransliterationProvider& translit =
      ctx.transliterator != nullptr ? *ctx.transliterator
                                    : kFallbackTransliterator;

  WbwResult result;
  result.outcomes.resize(doc.sentences.size());
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto& tokens = doc.sentences[s].tokens;
    auto& outcomes = result.outcomes[s];
    outcomes.reserve(tokens.size());
    for (size_t t = 0; t < tokens.size(); ++t) {
      Rng rng = Rng::Derive(ctx.seed, doc.id, {kTokenStreamTag, s, t});
      outcomes.push_back(TranslateToken(tokens[t], t, doc.lang, tgt,
                                        *ctx.lexicons, ne_flags[s][t],
                                        translit, rng));
      const TokenOutcome& o = outcomes.back();
      const TokenKind kind = tokens[t].kind;
      if ((kind == TokenKind::kWord || kind == TokenKind::kCompound) &&
          o.kind != OutcomeKind::kTransliterated) {
        ++result.lookup_denominator;
      }
      if (o.kind == OutcomeKind::kDropped) {
        ++result.dropped;
        continue;
      }
      if (!result.text.empty()) result.text.push_back(' ');
      result.text.append(o.text);
    }
    result.token_count += tokens.size();
  }
  if (result.lookup_denominator > 0) {
    result.missing_rate = static_cast<double>(result.dropped) /
                          static_cast<double>(result.lookup_denominator);
  }
  if (result.token_count > 0) {
    result.missing_rate_all_tokens = static_cast<double>(result.dropped) /
                                     static_cast<double>(result.token_count);
  }
  return result;
}

}  // namespace spdg
