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

#include "spdg/annotate.h"

#include <algorithm>
#include <fstream>
#include <utility>

#include <spdlog/spdlog.h>

#include "spdg/errors.h"
#include "spdg/text_kernels.h"
#include "utf8.h"

namespace spdg {
namespace {

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Byte length of the leading punctuation run of `chunk`.
size_t LeadingPunctuation(std::string_view chunk) {
  size_t i = 0;
  while (i < chunk.size()) {
    const utf8::Decoded d = utf8::DecodeAt(chunk, i);
    if (!utf8::IsPunctuation(d.cp)) break;
    i += d.length;
  }
  return i;
}

// Byte offset where the trailing punctuation run of `chunk` starts.
size_t TrailingPunctuationStart(std::string_view chunk, size_t floor) {
  size_t end = chunk.size();
  while (end > floor) {
    const size_t len = utf8::LengthBefore(chunk, end);
    if (!utf8::IsPunctuation(utf8::DecodeAt(chunk, end - len).cp)) break;
    end -= len;
  }
  return end;
}

void Push(std::vector<Token>& tokens, std::string_view sentence, size_t start,
          size_t end, TokenKind kind) {
  tokens.push_back(
      Token{std::string(sentence.substr(start, end - start)), kind,
            ByteSpan{start, end}});
}

}  // namespace

std::vector<std::string_view> SplitSentences(std::string_view text) {
  const auto& k = kernels::ActiveKernels();
  std::vector<std::string_view> out;
  const char* data = text.data();
  const size_t n = text.size();
  size_t start = k.skip_whitespace(data, n, 0);
  size_t pos = start;
  while (start < n) {
    const size_t ws = k.find_whitespace(data, n, pos);
    if (ws == n) {
      out.push_back(text.substr(start));
      break;
    }
    const size_t next = k.skip_whitespace(data, n, ws);
    if (IsTerminator(text[ws - 1]) || next == n) {
      out.push_back(text.substr(start, ws - start));
      start = next;
    }
    pos = next;
  }
  return out;
}

TokenKind ClassifySurface(std::string_view surface) {
  bool all_punct = true;
  bool has_digit = false;
  bool has_letter = false;
  bool only_letters_and_separators = true;
  size_t segments = 0;
  bool in_segment = false;
  bool empty_segment = false;
  for (size_t i = 0; i < surface.size();) {
    const utf8::Decoded d = utf8::DecodeAt(surface, i);
    i += d.length;
    const bool punct = utf8::IsPunctuation(d.cp);
    const bool letter = utf8::IsLetter(d.cp);
    all_punct = all_punct && punct;
    has_digit = has_digit || utf8::IsDigit(d.cp);
    has_letter = has_letter || letter;
    if (letter) {
      if (!in_segment) ++segments;
      in_segment = true;
    } else if (utf8::IsCompoundSeparator(d.cp)) {
      if (!in_segment) empty_segment = true;
      in_segment = false;
    } else {
      only_letters_and_separators = false;
    }
  }
  if (all_punct) return TokenKind::kPunctuation;
  if (has_digit && !has_letter) return TokenKind::kNumber;
  if (only_letters_and_separators && segments >= 2 && !empty_segment &&
      in_segment) {
    return TokenKind::kCompound;
  }
  return TokenKind::kWord;
}

std::vector<Token> Tokenize(std::string_view sentence) {
  const auto& k = kernels::ActiveKernels();
  const char* data = sentence.data();
  const size_t n = sentence.size();
  std::vector<Token> tokens;
  size_t a = k.skip_whitespace(data, n, 0);
  while (a < n) {
    const size_t b = k.find_whitespace(data, n, a);
    const std::string_view chunk = sentence.substr(a, b - a);
    const size_t lead = LeadingPunctuation(chunk);
    if (lead == chunk.size()) {
      Push(tokens, sentence, a, b, TokenKind::kPunctuation);
    } else {
      const size_t trail = TrailingPunctuationStart(chunk, lead);
      if (lead > 0) Push(tokens, sentence, a, a + lead, TokenKind::kPunctuation);
      Push(tokens, sentence, a + lead, a + trail,
           ClassifySurface(chunk.substr(lead, trail - lead)));
      if (trail < chunk.size()) {
        Push(tokens, sentence, a + trail, b, TokenKind::kPunctuation);
      }
    }
    a = k.skip_whitespace(data, n, b);
  }
  return tokens;
}

Document AnnotateDocument(std::string id, LanguageId lang, std::string text) {
  Document doc;
  doc.id = std::move(id);
  doc.lang = lang;
  doc.text = std::move(text);
  const std::string_view view = doc.text;
  for (std::string_view s : SplitSentences(view)) {
    std::vector<Token> tokens = Tokenize(s);
    if (tokens.empty()) continue;
    doc.sentences.push_back(
        Sentence{std::string(s), static_cast<size_t>(s.data() - view.data()),
                 std::move(tokens)});
  }
  return doc;
}

GazetteerNer::GazetteerNer(std::vector<std::string> words) {
  for (auto& w : words) {
    if (!w.empty()) words_.insert(std::move(w));
  }
}

std::unique_ptr<GazetteerNer> GazetteerNer::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw LexiconLoadError("cannot read gazetteer " + path.string());
  }
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto& k = kernels::ActiveKernels();
    const size_t a = k.skip_whitespace(line.data(), line.size(), 0);
    const size_t b = k.find_whitespace(line.data(), line.size(), a);
    if (a < b) words.push_back(LowercaseUtf8(line.substr(a, b - a)));
  }
  return std::make_unique<GazetteerNer>(std::move(words));
}

std::vector<NeSpan> GazetteerNer::DoDetect(const Document& doc) const {
  std::vector<NeSpan> spans;
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto& tokens = doc.sentences[s].tokens;
    for (size_t t = 0; t < tokens.size(); ++t) {
      if (words_.contains(tokens[t].surface)) spans.push_back({s, t, t + 1});
    }
  }
  return spans;
}

bool IsDefiniteArticle(std::string_view word) {
  static constexpr std::string_view kArticles[] = {"the", "le",  "la", "les",
                                                   "der", "die", "das"};
  return std::find(std::begin(kArticles), std::end(kArticles), word) !=
         std::end(kArticles);
}

std::vector<NeSpan> FilterArticleEdges(const Document& doc,
                                       std::vector<NeSpan> spans) {
  std::vector<NeSpan> out;
  out.reserve(spans.size());
  for (NeSpan span : spans) {
    const auto& tokens = doc.sentences[span.sentence_index].tokens;
    while (span.begin < span.end &&
           IsDefiniteArticle(tokens[span.begin].surface)) {
      ++span.begin;
    }
    while (span.end > span.begin &&
           IsDefiniteArticle(tokens[span.end - 1].surface)) {
      --span.end;
    }
    if (span.begin < span.end) out.push_back(span);
  }
  return out;
}

std::vector<NeSpan> DetectNamedEntities(const Document& doc,
                                        const NerProvider& provider) {
  std::vector<NeSpan> raw;
  try {
    raw = provider.Detect(doc);
  } catch (const std::exception& e) {
    spdlog::warn("NER provider failed on {}: {}", doc.id, e.what());
    return {};
  }
  std::erase_if(raw, [&](const NeSpan& s) {
    return s.sentence_index >= doc.sentences.size() || s.begin >= s.end ||
           s.end > doc.sentences[s.sentence_index].tokens.size();
  });
  std::sort(raw.begin(), raw.end(), [](const NeSpan& x, const NeSpan& y) {
    return std::tie(x.sentence_index, x.begin, x.end) <
           std::tie(y.sentence_index, y.begin, y.end);
  });
  std::vector<NeSpan> disjoint;
  for (const NeSpan& s : raw) {
    if (!disjoint.empty() &&
        disjoint.back().sentence_index == s.sentence_index &&
        s.begin < disjoint.back().end) {
      continue;
    }
    disjoint.push_back(s);
  }
  return FilterArticleEdges(doc, std::move(disjoint));
}

std::string TransliterationProvider::Transliterate(std::string_view word,
                                                   LanguageId src,
                                                   LanguageId tgt) const {
  std::string out;
  if (concurrent_safe()) {
    out = DoTransliterate(word, src, tgt);
  } else {
    std::lock_guard<std::mutex> lock(mu_);
    out = DoTransliterate(word, src, tgt);
  }
  if (out.empty()) return std::string(word);
  return out;
}

namespace {

bool NativeTo(LanguageId tgt, char32_t cp) {
  if (tgt.code() == "de") {
    return cp == U'ä' || cp == U'ö' || cp == U'ü' || cp == U'ß' ||
           cp == U'Ä' || cp == U'Ö' || cp == U'Ü';
  }
  if (tgt.code() == "fr") {
    static constexpr std::u32string_view kFrench =
        U"àâæçéèêëîïôœùûüÿÀÂÆÇÉÈÊËÎÏÔŒÙÛÜŸ";
    return kFrench.find(cp) != std::u32string_view::npos;
  }
  return false;
}

std::string_view GermanExpansion(char32_t cp) {
  switch (cp) {
    case U'ä': return "ae";
    case U'ö': return "oe";
    case U'ü': return "ue";
    case U'ß': return "ss";
    case U'Ä': return "Ae";
    case U'Ö': return "Oe";
    case U'Ü': return "Ue";
    default: return {};
  }
}

// Base-letter folding for U+00C0..U+00FF and a few Latin Extended-A letters.
std::string_view BaseLetter(char32_t cp) {
  static constexpr std::string_view kLatin1[64] = {
      "A", "A", "A", "A", "A",  "A", "AE", "C", "E", "E", "E", "E", "I",
      "I", "I", "I", "D", "N",  "O", "O",  "O", "O", "O", "",  "O", "U",
      "U", "U", "U", "Y", "TH", "ss", "a",  "a", "a", "a", "a", "a", "ae",
      "c", "e", "e", "e", "e",  "i", "i",  "i", "i", "d", "n", "o", "o",
      "o", "o", "o", "",  "o",  "u", "u",  "u", "u", "y", "th", "y"};
  if (cp >= 0xC0 && cp <= 0xFF) return kLatin1[cp - 0xC0];
  switch (cp) {
    case U'œ': return "oe";
    case U'Œ': return "OE";
    case U'Ÿ': return "Y";
    default: return {};
  }
}

}  // namespace

std::string TransliterateDefault(std::string_view word, LanguageId src,
                                 LanguageId tgt) {
  std::string out;
  out.reserve(word.size() + 4);
  const bool german_source = src.code() == "de" && tgt.code() != "de";
  for (size_t i = 0; i < word.size();) {
    const utf8::Decoded d = utf8::DecodeAt(word, i);
    const std::string_view raw = word.substr(i, d.length);
    i += d.length;
    if (d.cp < 0x80) {
      out.append(raw);
      continue;
    }
    const std::string_view expansion = GermanExpansion(d.cp);
    if (german_source && !expansion.empty()) {
      out.append(expansion);
    } else if (NativeTo(tgt, d.cp)) {
      out.append(raw);
    } else if (d.cp == U'ß') {
      out.append("ss");
    } else if (const std::string_view base = BaseLetter(d.cp); !base.empty()) {
      out.append(base);
    } else {
      out.append(raw);
    }
  }
  if (out.empty()) return std::string(word);
  return out;
}

}  // namespace spdg
