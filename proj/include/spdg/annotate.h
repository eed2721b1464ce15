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

// Sentence splitting, tokenization, named-entity detection and
// transliteration. NER and transliteration sit behind provider interfaces;
// the built-in defaults are a gazetteer and a diacritic-folding
// transliterator.

#ifndef SPDG_ANNOTATE_H_
#define SPDG_ANNOTATE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "spdg/corpus.h"
#include "spdg/language.h"

namespace spdg {

// Splits after '.', '!' or '?' when followed by whitespace. The terminator
// stays with its sentence; surrounding whitespace is dropped. Returned views
// point into `text`.
std::vector<std::string_view> SplitSentences(std::string_view text);

// Whitespace split, then leading/trailing punctuation runs are detached into
// their own Punctuation tokens. Spans are byte offsets into `sentence`.
std::vector<Token> Tokenize(std::string_view sentence);

// Classification of a token surface that has no leading or trailing
// punctuation (or is punctuation only).
TokenKind ClassifySurface(std::string_view surface);

// Builds a Document from raw text (no lowercasing). Sentences that tokenize
// to nothing are dropped.
Document AnnotateDocument(std::string id, LanguageId lang, std::string text);

// Token range [begin, end) inside sentence `sentence_index`.
struct NeSpan {
  size_t sentence_index = 0;
  size_t begin = 0;
  size_t end = 0;

  friend bool operator==(const NeSpan&, const NeSpan&) = default;
};

class NerProvider {
 public:
  virtual ~NerProvider() = default;

  // Serializes calls when the provider is not safe for concurrent use.
  std::vector<NeSpan> Detect(const Document& doc) const {
    if (concurrent_safe()) return DoDetect(doc);
    std::lock_guard<std::mutex> lock(mu_);
    return DoDetect(doc);
  }

  virtual bool concurrent_safe() const { return true; }

 protected:
  virtual std::vector<NeSpan> DoDetect(const Document& doc) const = 0;

 private:
  mutable std::mutex mu_;
};

// Detects nothing.
class NullNer : public NerProvider {
 protected:
  std::vector<NeSpan> DoDetect(const Document&) const override { return {}; }
};

// Any token whose surface is in the word list is a single-token entity.
class GazetteerNer : public NerProvider {
 public:
  explicit GazetteerNer(std::vector<std::string> words);

  // One lowercase entity word per line. Throws LexiconLoadError when the
  // file cannot be read.
  static std::unique_ptr<GazetteerNer> Load(const std::filesystem::path& path);

  size_t size() const { return words_.size(); }

 protected:
  std::vector<NeSpan> DoDetect(const Document& doc) const override;

 private:
  std::unordered_set<std::string> words_;
};

bool IsDefiniteArticle(std::string_view word);

// Trims definite articles off both edges of every span and drops spans that
// become empty. Articles inside an entity are kept.
std::vector<NeSpan> FilterArticleEdges(const Document& doc,
                                       std::vector<NeSpan> spans);

// Runs the provider and post-filters its output: out-of-range and
// overlapping spans are discarded and article edges trimmed. A throwing
// provider yields no spans and a logged warning.
std::vector<NeSpan> DetectNamedEntities(const Document& doc,
                                        const NerProvider& provider);

class TransliterationProvider {
 public:
  virtual ~TransliterationProvider() = default;

  // Never returns an empty string for non-empty input; falls back to the
  // word itself.
  std::string Transliterate(std::string_view word, LanguageId src,
                            LanguageId tgt) const;

  virtual bool concurrent_safe() const { return true; }

 protected:
  virtual std::string DoTransliterate(std::string_view word, LanguageId src,
                                      LanguageId tgt) const = 0;

 private:
  mutable std::mutex mu_;
};

// Latin-script folding. Letters native to the target orthography are kept;
// German umlauts and ß expand to ae/oe/ue/ss (always for a German source
// going elsewhere); other diacritics fold to their base letter.
std::string TransliterateDefault(std::string_view word, LanguageId src,
                                 LanguageId tgt);

class DefaultTransliterator : public TransliterationProvider {
 protected:
  std::string DoTransliterate(std::string_view word, LanguageId src,
                              LanguageId tgt) const override {
    return TransliterateDefault(word, src, tgt);
  }
};

}  // namespace spdg

#endif  // SPDG_ANNOTATE_H_
