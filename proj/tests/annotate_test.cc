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

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace spdg {
namespace {

using ::spdg::testing::MakeDoc;

const LanguageId kEn("en");
const LanguageId kFr("fr");
const LanguageId kDe("de");

std::vector<std::string> Surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

TEST(SplitSentencesTest, Examples) {
  EXPECT_EQ(SplitSentences("a b. c d!"),
            (std::vector<std::string_view>{"a b.", "c d!"}));
  EXPECT_EQ(SplitSentences("no terminator"),
            (std::vector<std::string_view>{"no terminator"}));
  EXPECT_TRUE(SplitSentences("").empty());
  EXPECT_EQ(SplitSentences("  why?  3.5 is fine. "),
            (std::vector<std::string_view>{"why?", "3.5 is fine."}));
}

TEST(TokenizeTest, DetachesPunctuation) {
  const auto tokens = Tokenize("hello, world.");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_EQ(Surfaces(tokens),
            (std::vector<std::string>{"hello", ",", "world", "."}));
  EXPECT_EQ(tokens[0].kind, TokenKind::kWord);
  EXPECT_EQ(tokens[1].kind, TokenKind::kPunctuation);
  EXPECT_EQ(tokens[2].kind, TokenKind::kWord);
  EXPECT_EQ(tokens[3].kind, TokenKind::kPunctuation);
}

TEST(TokenizeTest, Kinds) {
  EXPECT_EQ(Tokenize("high-end")[0].kind, TokenKind::kCompound);
  EXPECT_EQ(Tokenize("high-end").size(), 1u);
  EXPECT_EQ(Tokenize("42")[0].kind, TokenKind::kNumber);
  EXPECT_EQ(Tokenize("3,5")[0].kind, TokenKind::kNumber);
  EXPECT_EQ(Tokenize("aujourd'hui")[0].kind, TokenKind::kCompound);
  EXPECT_EQ(Tokenize("«")[0].kind, TokenKind::kPunctuation);
  EXPECT_EQ(Tokenize("straße")[0].kind, TokenKind::kWord);
}

TEST(TokenizeTest, SpansIndexTheSentence) {
  const std::string s = "  «bonjour»,  l'été -- 2024!";
  for (const Token& t : Tokenize(s)) {
    EXPECT_EQ(s.substr(t.span.start, t.span.size()), t.surface);
  }
  EXPECT_EQ(Surfaces(Tokenize(s)),
            (std::vector<std::string>{"«", "bonjour", "»,", "l'été", "--",
                                      "2024", "!"}));
}

TEST(AnnotateDocumentTest, SentenceOffsetsIndexTheDocument) {
  const Document doc = MakeDoc("d", kEn, "First one.  Second, here!  third");
  ASSERT_EQ(doc.sentences.size(), 3u);
  for (const Sentence& s : doc.sentences) {
    EXPECT_EQ(doc.text.substr(s.offset, s.text.size()), s.text);
  }
  EXPECT_EQ(doc.sentences[1].text, "second, here!");
}

TEST(ArticleFilterTest, TrimsEdges) {
  const Document doc = MakeDoc("d", kEn, "the white house and la");
  auto spans = FilterArticleEdges(doc, {{0, 0, 3}, {0, 4, 5}});
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0], (NeSpan{0, 1, 3}));
  EXPECT_TRUE(FilterArticleEdges(doc, {}).empty());
}

TEST(ArticleFilterTest, KeepsInteriorArticles) {
  const Document doc = MakeDoc("d", kFr, "tour de la paix");
  auto spans = FilterArticleEdges(doc, {{0, 0, 4}});
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0], (NeSpan{0, 0, 4}));
}

class FixedNer : public NerProvider {
 public:
  explicit FixedNer(std::vector<NeSpan> spans) : spans_(std::move(spans)) {}

 protected:
  std::vector<NeSpan> DoDetect(const Document&) const override {
    return spans_;
  }

 private:
  std::vector<NeSpan> spans_;
};

class ThrowingNer : public NerProvider {
 protected:
  std::vector<NeSpan> DoDetect(const Document&) const override {
    throw std::runtime_error("boom");
  }
};

TEST(DetectNamedEntitiesTest, PostFilters) {
  const Document doc = MakeDoc("d", kEn, "the white house is big.");
  FixedNer ner({{0, 0, 3}, {0, 2, 4}, {0, 5, 9}, {3, 0, 1}, {0, 4, 4}});
  const auto spans = DetectNamedEntities(doc, ner);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0], (NeSpan{0, 1, 3}));
  EXPECT_TRUE(DetectNamedEntities(doc, ThrowingNer()).empty());
  EXPECT_TRUE(DetectNamedEntities(doc, NullNer()).empty());
}

TEST(GazetteerNerTest, MatchesSingleTokens) {
  GazetteerNer ner({"paris", "berlin"});
  const Document doc = MakeDoc("d", kEn, "From Paris to Berlin. Rome!");
  const auto spans = DetectNamedEntities(doc, ner);
  EXPECT_EQ(spans, (std::vector<NeSpan>{{0, 1, 2}, {0, 3, 4}}));
}

TEST(TransliterateTest, Examples) {
  EXPECT_EQ(TransliterateDefault("münchen", kDe, kEn), "muenchen");
  EXPECT_EQ(TransliterateDefault("paris", kFr, kDe), "paris");
  EXPECT_EQ(TransliterateDefault("straße", kDe, kFr), "strasse");
  EXPECT_EQ(TransliterateDefault("müller", kEn, kDe), "müller");
  EXPECT_EQ(TransliterateDefault("françois", kFr, kFr), "françois");
  EXPECT_EQ(TransliterateDefault("françois", kFr, kEn), "francois");
  EXPECT_EQ(TransliterateDefault("zoë", kEn, kDe), "zoe");
}

TEST(TransliterateTest, ProviderNeverReturnsEmpty) {
  class Empty : public TransliterationProvider {
   protected:
    std::string DoTransliterate(std::string_view, LanguageId,
                                LanguageId) const override {
      return "";
    }
  };
  EXPECT_EQ(Empty().Transliterate("oslo", kEn, kFr), "oslo");
}

}  // namespace
}  // namespace spdg
