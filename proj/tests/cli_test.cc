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


// Black-box tests of the command-line tool.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "spdg/jsonl.h"
#include "test_util.h"

namespace spdg {
namespace {

using ::nlohmann::json;
using ::spdg::testing::CliPath;
using ::spdg::testing::Quote;
using ::spdg::testing::ReadFile;
using ::spdg::testing::ReadLines;
using ::spdg::testing::RunShell;
using ::spdg::testing::TempDir;
using ::spdg::testing::WriteFile;
using ::spdg::testing::WriteTrilingualFixture;

class CliTest : public ::testing::Test {
 protected:
  // Runs the tool with `args`; stderr is kept in err().
  int Run(const std::string& args) {
    return RunShell(CliPath() + " " + args + " > " + Quote((dir_ / "stdout").string()) +
                    " 2> " + Quote((dir_ / "stderr").string()));
  }
  std::string err() const { return ReadFile(dir_ / "stderr"); }
  std::string out() const { return ReadFile(dir_ / "stdout"); }
  std::string Path(const std::string& name) const {
    return Quote((dir_ / name).string());
  }

  std::map<std::string, int> ObjectiveCounts(const std::string& name) const {
    std::map<std::string, int> counts;
    for (const auto& line : ReadLines(dir_ / name)) {
      ++counts[ObjectiveName(PairFromJsonLine(line).objective)];
    }
    return counts;
  }

  json Stats(const std::string& name) const {
    return json::parse(ReadFile(dir_ / (name + ".stats.json")));
  }

  TempDir dir_;
};

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(Run(""), 2);
  EXPECT_EQ(Run("wbw --src en --tgt fr"), 2);
  EXPECT_EQ(Run("wbw --config " + Path("missing.json") + " --src en --tgt fr"), 2);
  WriteFile(dir_ / "bad.json", "{ not json");
  EXPECT_EQ(Run("calibrate --config " + Path("bad.json")), 2);
  WriteFile(dir_ / "typo.json", R"({"languages": ["en"], "corpra": {}})");
  EXPECT_EQ(Run("calibrate --config " + Path("typo.json")), 2);
  EXPECT_NE(err().find("corpra"), std::string::npos);
  WriteFile(dir_ / "nocorpus.json", R"({"languages": ["en", "fr"], "corpora": {}})");
  EXPECT_EQ(Run("spdg-data --config " + Path("nocorpus.json")), 2);
}

TEST_F(CliTest, MissingLexiconPathNamesThePair) {
  WriteTrilingualFixture(dir_.path(), 5, 1);
  std::filesystem::remove(dir_ / "fr-de.txt");
  EXPECT_EQ(Run("calibrate --config " + Path("config.json")), 2);
  EXPECT_NE(err().find("fr-de"), std::string::npos) << err();
}

TEST_F(CliTest, UnresolvableDirectionIsConfigError) {
  WriteFile(dir_ / "en.txt", "a b.\n");
  WriteFile(dir_ / "fr.txt", "c d.\n");
  WriteFile(dir_ / "en-fr.txt", "a c\n");
  WriteFile(dir_ / "c.json", R"({"languages": ["en", "fr"],
    "corpora": {"en": "en.txt", "fr": "fr.txt"},
    "lexicons": {"en-fr": "en-fr.txt"}, "output": "o.jsonl"})");
  EXPECT_EQ(Run("spdg-data --config " + Path("c.json")), 2);
  EXPECT_NE(err().find("fr-en"), std::string::npos) << err();
  EXPECT_FALSE(std::filesystem::exists(dir_ / "o.jsonl"));
  EXPECT_EQ(Run("spdg-data --config " + Path("c.json") + " --pairs en-fr"), 0)
      << err();
  EXPECT_EQ(ReadLines(dir_ / "o.jsonl").size(), 1u);
}

TEST_F(CliTest, DataErrorsExitThree) {
  WriteFile(dir_ / "en.txt", "");
  WriteFile(dir_ / "fr.txt", "");
  WriteFile(dir_ / "en-fr.txt", "a c\n");
  WriteFile(dir_ / "fr-en.txt", "only-one-field\n");
  WriteFile(dir_ / "c.json", R"({"languages": ["en", "fr"],
    "corpora": {"en": "en.txt", "fr": "fr.txt"},
    "lexicons": {"en-fr": "en-fr.txt", "fr-en": "fr-en.txt"},
    "output": "o.jsonl"})");
  // Empty corpus during calibration.
  EXPECT_EQ(Run("calibrate --config " + Path("c.json") + " --tgt fr"), 3) << err();
  // Lexicon without a single valid line.
  EXPECT_EQ(Run("calibrate --config " + Path("c.json") + " --tgt en"), 3) << err();
}

TEST_F(CliTest, CalibrateOracles) {
  WriteFile(dir_ / "en.txt", "a b c d zz.\ne f g yy zz!\n");
  WriteFile(dir_ / "fr.txt", "x.\n");
  WriteFile(dir_ / "en-fr.txt", "a x\nb x\nc x\nd x\ne x\nf x\ng x\n");
  WriteFile(dir_ / "fr-en.txt", "x a\n");
  WriteFile(dir_ / "c.json", R"({"languages": ["en", "fr"],
    "corpora": {"en": "en.txt", "fr": "fr.txt"},
    "lexicons": {"en-fr": "en-fr.txt", "fr-en": "fr-en.txt"},
    "output": "reports/o.jsonl"})");
  ASSERT_EQ(Run("calibrate --config " + Path("c.json")), 0) << err();
  const json fr = json::parse(ReadFile(dir_ / "reports" / "calibration_fr.json"));
  EXPECT_NEAR(fr["mean"].get<double>(), 0.3, 1e-9);
  EXPECT_NEAR(fr["std"].get<double>(), 0.1, 1e-9);
  EXPECT_EQ(fr["documents_seen"], 2);
  EXPECT_EQ(fr["lang"], "fr");
  const json en = json::parse(ReadFile(dir_ / "reports" / "calibration_en.json"));
  EXPECT_EQ(en["mean"].get<double>(), 0.0);
  EXPECT_EQ(en["std"].get<double>(), 0.0);
  EXPECT_NE(out().find("fr"), std::string::npos);
}

TEST_F(CliTest, WbwOutput) {
  WriteTrilingualFixture(dir_.path(), 100, 2);
  ASSERT_EQ(Run("wbw --config " + Path("config.json") +
                " --src en --tgt de --output " + Path("a.jsonl")), 0) << err();
  const auto lines = ReadLines(dir_ / "a.jsonl");
  ASSERT_EQ(lines.size(), 100u);
  const json first = json::parse(lines[0]);
  for (const char* key : {"id", "input", "wbw", "missing_rate"}) {
    EXPECT_TRUE(first.contains(key)) << key;
  }
  ASSERT_EQ(Run("wbw --config " + Path("config.json") +
                " --src en --tgt de --output " + Path("b.jsonl")), 0);
  EXPECT_EQ(ReadFile(dir_ / "a.jsonl"), ReadFile(dir_ / "b.jsonl"));
  ASSERT_EQ(Run("wbw --config " + Path("config.json") +
                " --src en --tgt de --seed 99 --output " + Path("c.jsonl")), 0);
  EXPECT_NE(ReadFile(dir_ / "a.jsonl"), ReadFile(dir_ / "c.jsonl"));
}

TEST_F(CliTest, WbwEmptyCorpus) {
  WriteTrilingualFixture(dir_.path(), 3, 2);
  WriteFile(dir_ / "fr.txt", "");
  ASSERT_EQ(Run("wbw --config " + Path("config.json") +
                " --src fr --tgt en --output " + Path("e.jsonl")), 0) << err();
  EXPECT_EQ(ReadFile(dir_ / "e.jsonl"), "");
}

TEST_F(CliTest, DenoiseData) {
  WriteTrilingualFixture(dir_.path(), 1000, 3,
                         R"("noise_profiles": {"fr": {"remove_mean": 0, "remove_std": 0,
      "add_min": 0, "add_max": 0, "sub_min": 0, "sub_max": 0}})");
  ASSERT_EQ(Run("denoise-data --config " + Path("config.json") +
                " --lang fr --output " + Path("d.jsonl")), 0) << err();
  const auto lines = ReadLines(dir_ / "d.jsonl");
  ASSERT_EQ(lines.size(), 1000u);
  auto bag = [](std::string s) {
    // Detach the sentence-final periods the fixture uses.
    std::multiset<std::string> words;
    std::istringstream in(s);
    std::string w;
    while (in >> w) {
      if (w.size() > 1 && w.back() == '.') {
        words.insert(w.substr(0, w.size() - 1));
        words.insert(".");
      } else {
        words.insert(w);
      }
    }
    return words;
  };
  for (const auto& line : lines) {
    const ParallelPair p = PairFromJsonLine(line);
    ASSERT_EQ(p.objective, Objective::kDenoise);
    ASSERT_EQ(bag(p.input), bag(p.output));
  }
  // Independent token count over the corpus file.
  uint64_t tokens = 0;
  for (const auto& l : ReadLines(dir_ / "fr.txt")) tokens += bag(l).size();
  const json stats = Stats("d.jsonl");
  EXPECT_EQ(stats["tokens"].get<uint64_t>(), tokens);
  EXPECT_EQ(stats["documents"], 1000);
  EXPECT_EQ(stats["pairs"]["denoise"], 1000);
}

TEST_F(CliTest, DenoiseDataWithDefaultProfile) {
  WriteTrilingualFixture(dir_.path(), 50, 3);
  ASSERT_EQ(Run("denoise-data --config " + Path("config.json") +
                " --lang de --output " + Path("d.jsonl")), 0) << err();
  EXPECT_EQ(ReadLines(dir_ / "d.jsonl").size(), 50u);
}

TEST_F(CliTest, SpdgDataCardinalityAndFilter) {
  WriteTrilingualFixture(dir_.path(), 10, 4);
  ASSERT_EQ(Run("spdg-data --config " + Path("config.json") + " --output " +
                Path("s.jsonl")), 0) << err();
  EXPECT_EQ(ReadLines(dir_ / "s.jsonl").size(), 60u);
  EXPECT_EQ(Stats("s.jsonl")["pairs"]["spdg"], 60);
  ASSERT_EQ(Run("spdg-data --config " + Path("config.json") +
                " --pairs en-fr,fr-en --output " + Path("f.jsonl")), 0) << err();
  const auto lines = ReadLines(dir_ / "f.jsonl");
  EXPECT_EQ(lines.size(), 20u);
  for (const auto& line : lines) {
    const ParallelPair p = PairFromJsonLine(line);
    const std::string dir = LanguagePair{p.src_lang, p.tgt_lang}.str();
    EXPECT_TRUE(dir == "en-fr" || dir == "fr-en") << dir;
  }
}

TEST_F(CliTest, SpdgDataMixed) {
  WriteTrilingualFixture(dir_.path(), 10, 5,
                         R"("mix": {"enabled": true, "spdg_fraction": 0.75,
      "total_steps": 100, "batch_size": 4})");
  ASSERT_EQ(Run("spdg-data --config " + Path("config.json") + " --output " +
                Path("m.jsonl")), 0) << err();
  const json stats = Stats("m.jsonl");
  EXPECT_EQ(stats["blocks"]["spdg"], 75);
  EXPECT_EQ(stats["blocks"]["mlm"], 25);
  const auto counts = ObjectiveCounts("m.jsonl");
  EXPECT_EQ(counts.at("spdg"), 300);
  EXPECT_EQ(counts.at("mlm"), 100);
  for (const auto& [name, n] : counts) EXPECT_EQ(stats["pairs"][name], n);
  EXPECT_FALSE(std::filesystem::exists(dir_ / "m.jsonl.spdg.part"));
}

TEST_F(CliTest, WorkerCountDoesNotChangeBytes) {
  WriteTrilingualFixture(dir_.path(), 120, 6, R"("batch_capacity": 50)");
  for (const char* w : {"1", "4"}) {
    ASSERT_EQ(Run(std::string("spdg-data --config ") + Path("config.json") +
                  " --workers " + w + " --output " + Path(std::string("w") + w)),
              0) << err();
  }
  EXPECT_EQ(ReadFile(dir_ / "w1"), ReadFile(dir_ / "w4"));
}

TEST_F(CliTest, MlmDataAndStats) {
  WriteTrilingualFixture(dir_.path(), 20, 7);
  ASSERT_EQ(Run("mlm-data --config " + Path("config.json") +
                " --objective mlm_reorder --output " + Path("r.jsonl")), 0) << err();
  const auto lines = ReadLines(dir_ / "r.jsonl");
  ASSERT_EQ(lines.size(), 60u);
  // Round-robin over languages.
  EXPECT_EQ(PairFromJsonLine(lines[0]).src_lang, LanguageId("en"));
  EXPECT_EQ(PairFromJsonLine(lines[1]).src_lang, LanguageId("fr"));
  EXPECT_EQ(PairFromJsonLine(lines[2]).src_lang, LanguageId("de"));
  ASSERT_EQ(Run("mlm-data --config " + Path("config.json") +
                " --lang de --limit 5 --output " + Path("l.jsonl")), 0) << err();
  EXPECT_EQ(ObjectiveCounts("l.jsonl").at("mlm"), 5);
  ASSERT_EQ(Run("stats " + Path("r.jsonl")), 0) << err();
  const json summary = json::parse(out());
  EXPECT_EQ(summary["pairs"], 60);
  EXPECT_EQ(summary["per_objective"]["mlm_reorder"], 60);
  EXPECT_EQ(summary["invariant_violations"], 0);
  EXPECT_EQ(Run("mlm-data --config " + Path("config.json") +
                " --objective spdg --output " + Path("x.jsonl")), 2);
}

}  // namespace
}  // namespace spdg
