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


#include "spdg/noiser.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "spdg/errors.h"
#include "test_util.h"

namespace spdg {
namespace {

using ::spdg::testing::ClampedRemovalOracle;
using ::spdg::testing::MakeDoc;
using ::spdg::testing::RandomText;
using ::spdg::testing::RoundedUniformOracle;

const LanguageId kEn("en");
const LanguageId kFr("fr");
const LanguageId kDe("de");

TokenList Numbered(size_t m) {
  TokenList t;
  for (size_t i = 0; i < m; ++i) t.push_back("w" + std::to_string(i));
  return t;
}

std::multiset<std::string> Bag(const TokenList& t) { return {t.begin(), t.end()}; }

TEST(NoiseProfileTest, Defaults) {
  const auto en = *NoiseProfile::Default(kEn);
  const auto fr = *NoiseProfile::Default(kFr);
  const auto de = *NoiseProfile::Default(kDe);
  EXPECT_EQ(en.remove_mean, 0.066);
  EXPECT_EQ(en.remove_std, 0.061);
  EXPECT_EQ(fr.remove_mean, 0.152);
  EXPECT_EQ(fr.remove_std, 0.087);
  EXPECT_EQ(de.remove_mean, 0.137);
  EXPECT_EQ(de.remove_std, 0.085);
  for (const auto& p : {en, fr, de}) {
    EXPECT_EQ(p.add_min, 0.01);
    EXPECT_EQ(p.add_max, 0.03);
    EXPECT_EQ(p.sub_min, 0.05);
    EXPECT_EQ(p.sub_max, 0.07);
  }
  EXPECT_FALSE(NoiseProfile::Default(LanguageId("it")));
}

TEST(NoiseProfileTest, Validate) {
  NoiseProfile p = NoiseProfile::Zero(kEn);
  p.Validate();
  p.add_min = 0.5;
  p.add_max = 0.1;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = NoiseProfile::Zero(kEn);
  p.remove_mean = 1.5;
  EXPECT_THROW(p.Validate(), ConfigError);
}

TEST(ShuffleTest, SentencesArePermutedInPlace) {
  std::vector<TokenList> s = {{"a", "b", "c"}, {"d", "e"}, {"x"}};
  Rng rng(4);
  ShuffleSentences(s, rng);
  EXPECT_EQ(Bag(s[0]), Bag({"a", "b", "c"}));
  EXPECT_EQ(Bag(s[1]), Bag({"d", "e"}));
  EXPECT_EQ(s[2], TokenList{"x"});
}

TEST(ShuffleTest, PermutationsAreUniform) {
  // Multinomial over 6 outcomes with p = 1/6: sd ~ 28.9, so +-120 is ~4 sd.
  std::map<TokenList, int> counts;
  for (uint64_t i = 0; i < 6000; ++i) {
    std::vector<TokenList> s = {{"a", "b", "c"}};
    Rng rng = Rng::Derive(i, "shuffle", {});
    ShuffleSentences(s, rng);
    ++counts[s[0]];
  }
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [perm, n] : counts) EXPECT_NEAR(n, 1000, 120);
}

TEST(RemoveWordsTest, Boundaries) {
  NoiseProfile all = NoiseProfile::Zero(kEn);
  all.remove_mean = 1.0;
  Rng rng(1);
  EXPECT_TRUE(RemoveWords({}, all, rng).empty());
  EXPECT_TRUE(RemoveWords(Numbered(10), all, rng).empty());
  EXPECT_EQ(RemoveWords(Numbered(10), NoiseProfile::Zero(kEn), rng),
            Numbered(10));
}

TEST(RemoveWordsTest, SurvivorsKeepOrder) {
  NoiseProfile p = NoiseProfile::Zero(kEn);
  p.remove_mean = 0.3;
  Rng rng(2);
  const TokenList in = Numbered(50);
  const TokenList out = RemoveWords(in, p, rng);
  EXPECT_EQ(out.size(), 35u);
  EXPECT_TRUE(std::includes(in.begin(), in.end(), out.begin(), out.end(),
                            [&](const std::string& a, const std::string& b) {
                              return std::stoi(a.substr(1)) <
                                     std::stoi(b.substr(1));
                            }));
}

TEST(RemoveWordsTest, EnglishRateMatchesClampedNormalOracle) {
  const NoiseProfile en = *NoiseProfile::Default(kEn);
  const double oracle = ClampedRemovalOracle(0.066, 0.061, 100, 2000000, 77);
  double removed = 0;
  const TokenList in = Numbered(100);
  for (uint64_t i = 0; i < 10000; ++i) {
    Rng rng = Rng::Derive(31, "remove", {i});
    removed += 100 - RemoveWords(in, en, rng).size();
  }
  EXPECT_NEAR(removed / (10000 * 100.0), oracle, 0.005);
}

TEST(AddWordsTest, Counts) {
  WordPool pool({"p1", "p2", "p3", "p4", "p5"});
  Rng rng(1);
  EXPECT_EQ(AddWords(Numbered(100), pool, NoiseProfile::Zero(kEn), rng),
            Numbered(100));
  NoiseProfile p = NoiseProfile::Zero(kEn);
  p.add_min = p.add_max = 0.02;
  const TokenList out = AddWords(Numbered(100), pool, p, rng);
  ASSERT_EQ(out.size(), 102u);
  std::vector<std::string> added;
  for (const auto& w : out) {
    if (w[0] == 'p') added.push_back(w);
  }
  ASSERT_EQ(added.size(), 2u);
  EXPECT_NE(added[0], added[1]);
  // Original tokens keep their relative order.
  TokenList rest;
  for (const auto& w : out) {
    if (w[0] == 'w') rest.push_back(w);
  }
  EXPECT_EQ(rest, Numbered(100));
}

TEST(AddWordsTest, MeanInsertionsMatchOracle) {
  const NoiseProfile en = *NoiseProfile::Default(kEn);
  WordPool pool(Numbered(50));
  const double oracle = RoundedUniformOracle(0.01, 0.03, 100);
  EXPECT_NEAR(oracle, 2.0, 1e-6);
  double total = 0;
  for (uint64_t i = 0; i < 10000; ++i) {
    Rng rng = Rng::Derive(8, "add", {i});
    total += AddWords(TokenList(100, "x"), pool, en, rng).size() - 100;
  }
  EXPECT_NEAR(total / 10000, oracle, 0.15);
}

TEST(AddWordsTest, EmptyPoolWarns) {
  NoiseProfile p = NoiseProfile::Zero(kEn);
  p.add_min = p.add_max = 0.5;
  NoiseCounters counters;
  Rng rng(1);
  EXPECT_EQ(AddWords(Numbered(4), WordPool(), p, rng, &counters), Numbered(4));
  EXPECT_EQ(SubstituteWords(Numbered(4), WordPool(), p, rng, &counters),
            Numbered(4));
  EXPECT_EQ(counters.empty_pool_warnings.load(), 2u);
}

TEST(SubstituteWordsTest, ExactCountAndLength) {
  NoiseProfile p = NoiseProfile::Zero(kEn);
  p.sub_min = p.sub_max = 0.5;
  WordPool pool({"a", "b", "c", "d", "e", "f", "g"});
  Rng rng(3);
  const TokenList out = SubstituteWords(Numbered(10), pool, p, rng);
  ASSERT_EQ(out.size(), 10u);
  int replaced = 0;
  for (size_t i = 0; i < 10; ++i) replaced += out[i] != "w" + std::to_string(i);
  EXPECT_EQ(replaced, 5);
  EXPECT_EQ(SubstituteWords(Numbered(10), pool, NoiseProfile::Zero(kEn), rng),
            Numbered(10));
}

TEST(SubstituteWordsTest, ReplacementsAreDistinct) {
  std::mt19937_64 gen(12);
  for (int run = 0; run < 10000; ++run) {
    const size_t m = 1 + gen() % 40;
    const size_t pool_size = 1 + gen() % 30;
    TokenList pool_words;
    for (size_t i = 0; i < pool_size; ++i) pool_words.push_back("p" + std::to_string(i));
    NoiseProfile p = NoiseProfile::Zero(kEn);
    p.sub_min = 0.0;
    p.sub_max = 1.0;
    Rng rng(gen());
    const TokenList out = SubstituteWords(Numbered(m), WordPool(pool_words), p, rng);
    ASSERT_EQ(out.size(), m);
    std::set<std::string> seen;
    for (const auto& w : out) {
      if (w[0] == 'p') ASSERT_TRUE(seen.insert(w).second) << "repeat " << w;
    }
  }
}

TEST(CorruptionCountTest, Rounding) {
  EXPECT_EQ(CorruptionCount(100, 0.025), 3u);
  EXPECT_EQ(CorruptionCount(100, 0.0249), 2u);
  EXPECT_EQ(CorruptionCount(10, -1.0), 0u);
  EXPECT_EQ(CorruptionCount(10, 2.0), 10u);
  EXPECT_EQ(CorruptionCount(0, 0.5), 0u);
}

TEST(WordPoolTest, SampleIsDistinctAndBounded) {
  WordPool pool({"a", "b", "a", "c"});
  EXPECT_EQ(pool.size(), 3u);
  Rng rng(1);
  auto s = pool.Sample(10, rng);
  EXPECT_EQ(std::set<std::string_view>(s.begin(), s.end()).size(), 3u);
}

TEST(BatchVocabularyTest, PoolExcludesOwnDocument) {
  DocumentBatch batch;
  batch.documents.push_back(MakeDoc("0", kEn, "alpha shared"));
  batch.documents.push_back(MakeDoc("1", kEn, "beta shared"));
  batch.documents.push_back(MakeDoc("2", kEn, "gamma"));
  BatchVocabulary vocab(batch);
  Rng rng(1);
  auto words = vocab.PoolExcluding(0).Sample(100, rng);
  std::set<std::string_view> got(words.begin(), words.end());
  EXPECT_EQ(got, (std::set<std::string_view>{"shared", "beta", "gamma"}));
  DocumentBatch single;
  single.documents.push_back(MakeDoc("0", kEn, "alone here"));
  EXPECT_TRUE(BatchVocabulary(single).PoolExcluding(0).empty());
}

TEST(CorruptBatchTest, ZeroRatesOnlyShuffle) {
  std::mt19937_64 gen(99);
  DocumentBatch batch;
  for (int i = 0; i < 1000; ++i) {
    batch.documents.push_back(
        MakeDoc("d" + std::to_string(i), kEn, RandomText(gen, 1 + gen() % 4, 1, 12)));
  }
  CorruptOptions options;
  options.seed = 5;
  options.workers = 3;
  const auto pairs = CorruptBatch(batch, NoiseProfile::Zero(kEn), options);
  ASSERT_EQ(pairs.size(), batch.documents.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    const Document& doc = batch.documents[i];
    EXPECT_EQ(pairs[i].output, doc.text);
    EXPECT_EQ(pairs[i].objective, Objective::kDenoise);
    // Re-tokenizing the corrupted text sentence by sentence is ambiguous, so
    // compare the whole token multiset and the per-sentence lengths via
    // the joined form.
    TokenList original, corrupted;
    for (const Sentence& s : doc.sentences) {
      for (const Token& t : s.tokens) original.push_back(t.surface);
    }
    std::string word;
    for (char c : pairs[i].input + " ") {
      if (c == ' ') {
        if (!word.empty()) corrupted.push_back(word);
        word.clear();
      } else {
        word += c;
      }
    }
    ASSERT_EQ(Bag(original), Bag(corrupted)) << doc.text;
  }
}

TEST(CorruptDocumentTest, SentenceOrderIsKept) {
  const Document doc = MakeDoc("d", kEn, "a b c. d e. f.");
  CorruptOptions options;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    options.seed = seed;
    const std::string out =
        CorruptDocument(doc, WordPool(), NoiseProfile::Zero(kEn), options);
    // Sentence boundaries: the first 4 tokens are from sentence one, etc.
    std::vector<std::string> toks;
    size_t start = 0;
    while (start < out.size()) {
      size_t sp = out.find(' ', start);
      if (sp == std::string::npos) sp = out.size();
      toks.push_back(out.substr(start, sp - start));
      start = sp + 1;
    }
    ASSERT_EQ(toks.size(), 9u);
    EXPECT_EQ(Bag({toks.begin(), toks.begin() + 4}), Bag({"a", "b", "c", "."}));
    EXPECT_EQ(Bag({toks.begin() + 4, toks.begin() + 7}), Bag({"d", "e", "."}));
    EXPECT_EQ(Bag({toks.begin() + 7, toks.end()}), Bag({"f", "."}));
  }
}

TEST(CorruptDocumentTest, SingleTokenSentencesAreIdentity) {
  const Document doc = MakeDoc("d", kEn, "yes");
  CorruptOptions options;
  EXPECT_EQ(CorruptDocument(doc, WordPool(), NoiseProfile::Zero(kEn), options),
            "yes");
}

TEST(CorruptBatchTest, WorkerCountDoesNotChangeOutput) {
  std::mt19937_64 gen(3);
  DocumentBatch batch;
  for (int i = 0; i < 200; ++i) {
    batch.documents.push_back(
        MakeDoc("d" + std::to_string(i), kDe, RandomText(gen, 3, 2, 20)));
  }
  CorruptOptions options;
  options.seed = 17;
  const NoiseProfile de = *NoiseProfile::Default(kDe);
  const auto serial = CorruptBatch(batch, de, options);
  options.workers = 4;
  EXPECT_EQ(CorruptBatch(batch, de, options), serial);
}

TEST(CorruptBatchTest, RejectsWrongLanguage) {
  DocumentBatch batch;
  batch.documents.push_back(MakeDoc("d", kFr, "un mot"));
  EXPECT_THROW(CorruptBatch(batch, NoiseProfile::Zero(kEn), {}),
               std::invalid_argument);
}

TEST(CalibrateTest, TwoDocumentOracle) {
  // Rates 1/5 and 2/5 by construction: population mean .3, std .1.
  Lexicon lex(kEn, kFr);
  for (const char* w : {"a", "b", "c", "d", "e", "f", "g"}) lex.Add(w, "x");
  LexiconSet set;
  set.Add(std::move(lex));
  DocumentBatch batch;
  batch.documents.push_back(MakeDoc("one", kEn, "a b c d zz."));
  batch.documents.push_back(MakeDoc("two", kEn, "e f g yy zz!"));
  bool served = false;
  std::vector<BatchSource> sources = {[&]() -> std::optional<DocumentBatch> {
    if (served) return std::nullopt;
    served = true;
    return batch;
  }};
  const CalibrationReport r =
      Calibrate(sources, kFr, {&set, nullptr, nullptr, 0});
  EXPECT_NEAR(r.mean, 0.3, 1e-9);
  EXPECT_NEAR(r.std, 0.1, 1e-9);
  EXPECT_EQ(r.documents_seen, 2u);
  EXPECT_EQ(r.tokens_seen, 12u);
}

TEST(CalibrateTest, FullCoverageAndEmpty) {
  Lexicon lex(kEn, kFr);
  lex.Add("a", "x");
  LexiconSet set;
  set.Add(std::move(lex));
  int calls = 0;
  std::vector<BatchSource> sources = {[&]() -> std::optional<DocumentBatch> {
    if (calls++ > 0) return std::nullopt;
    DocumentBatch b;
    b.documents.push_back(MakeDoc("x", kEn, "a a."));
    b.documents.push_back(MakeDoc("y", kEn, "a!"));
    return b;
  }};
  const CalibrationReport r =
      Calibrate(sources, kFr, {&set, nullptr, nullptr, 0});
  EXPECT_EQ(r.mean, 0.0);
  EXPECT_EQ(r.std, 0.0);
  std::vector<BatchSource> none = {[] { return std::optional<DocumentBatch>(); }};
  EXPECT_THROW(Calibrate(none, kFr, {&set, nullptr, nullptr, 0}),
               CalibrationError);
}

}  // namespace
}  // namespace spdg
