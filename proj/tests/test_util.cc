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


#include "test_util.h"

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "spdg/annotate.h"
#include "spdg/wbw.h"
#include "spdg/text_kernels.h"

namespace spdg::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "spdg_test_XXXXXX").string();
  if (mkdtemp(tmpl.data()) == nullptr) std::abort();
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void WriteFile(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

Document MakeDoc(std::string id, LanguageId lang, std::string_view text) {
  return AnnotateDocument(std::move(id), lang, LowercaseUtf8(text));
}

std::string RandomWord(std::mt19937_64& gen, size_t min_len, size_t max_len) {
  std::uniform_int_distribution<size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> letter('a', 'z');
  std::string w(len(gen), 'a');
  for (char& c : w) c = static_cast<char>(letter(gen));
  return w;
}

std::string RandomText(std::mt19937_64& gen, size_t sentences,
                       size_t min_words, size_t max_words) {
  static constexpr const char* kTerminators[] = {".", "!", "?"};
  std::uniform_int_distribution<size_t> words(min_words, max_words);
  std::uniform_int_distribution<int> pick(0, 99);
  std::string text;
  for (size_t s = 0; s < sentences; ++s) {
    if (s > 0) text += ' ';
    const size_t n = words(gen);
    for (size_t w = 0; w < n; ++w) {
      if (w > 0) text += ' ';
      const int r = pick(gen);
      if (r < 5) {
        text += std::to_string(gen() % 1000);
      } else if (r < 10) {
        text += RandomWord(gen, 2, 5) + "-" + RandomWord(gen, 2, 5);
      } else {
        text += RandomWord(gen);
        if (r < 14 && w + 1 < n) text += ',';
      }
    }
    text += kTerminators[gen() % 3];
  }
  return text;
}

int RunShell(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + WTERMSIG(status);
}

std::string CliPath() { return SPDG_CLI_PATH; }

std::string Quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

namespace {

std::string FormatSentinel(const std::string& format, size_t i) {
  std::string out = format;
  const size_t at = out.find("{i}");
  out.replace(at, 3, std::to_string(i));
  return out;
}

}  // namespace

std::optional<std::string> SpliceMlm(const std::string& input,
                                     const std::string& output,
                                     const std::string& sentinel_format) {
  // Target spans, in order.
  std::vector<std::string> spans;
  size_t pos = 0;
  for (size_t i = 0;; ++i) {
    const std::string s = FormatSentinel(sentinel_format, i);
    if (output.compare(pos, s.size(), s) != 0) {
      if (i == 0 || pos != output.size()) return std::nullopt;
      break;
    }
    pos += s.size();
    if (pos >= output.size() || output[pos] != ' ') return std::nullopt;
    ++pos;
    const std::string next = " " + FormatSentinel(sentinel_format, i + 1);
    size_t end = output.find(next, pos);
    if (end == std::string::npos) end = output.size();
    spans.push_back(output.substr(pos, end - pos));
    pos = end == output.size() ? end : end + 1;
  }
  std::string rebuilt;
  size_t cursor = 0;
  for (size_t i = 0; i < spans.size(); ++i) {
    const std::string s = FormatSentinel(sentinel_format, i);
    const size_t at = input.find(s, cursor);
    if (at == std::string::npos) return std::nullopt;
    rebuilt.append(input, cursor, at - cursor);
    rebuilt += spans[i];
    cursor = at + s.size();
  }
  rebuilt.append(input, cursor, std::string::npos);
  if (input.find(FormatSentinel(sentinel_format, spans.size()), cursor) !=
      std::string::npos) {
    return std::nullopt;
  }
  return rebuilt;
}

double ClampedRemovalOracle(double mean, double std, size_t m, size_t draws,
                            uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(mean, std);
  double total = 0.0;
  for (size_t i = 0; i < draws; ++i) {
    const double r = std::clamp(normal(gen), 0.0, 1.0);
    total += std::round(static_cast<double>(m) * r) / static_cast<double>(m);
  }
  return total / static_cast<double>(draws);
}

double RoundedUniformOracle(double lo, double hi, size_t m) {
  if (lo == hi) return std::round(static_cast<double>(m) * lo);
  constexpr int kSteps = 1000000;
  double total = 0.0;
  for (int i = 0; i < kSteps; ++i) {
    const double c = lo + (hi - lo) * (i + 0.5) / kSteps;
    total += std::round(static_cast<double>(m) * c);
  }
  return total / kSteps;
}

fs::path WriteTrilingualFixture(const fs::path& dir, size_t docs_per_lang,
                                uint64_t seed, const std::string& extra_json) {
  static constexpr const char* kLangs[] = {"en", "fr", "de"};
  constexpr size_t kVocab = 300;
  std::mt19937_64 gen(seed);
  std::vector<std::string> vocab[3];
  for (int l = 0; l < 3; ++l) {
    std::set<std::string> seen;
    while (vocab[l].size() < kVocab) {
      std::string w = RandomWord(gen, 3, 9);
      if (seen.insert(w).second) vocab[l].push_back(w);
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      std::string lex;
      // The last tenth of the vocabulary has no entry, so some words drop.
      for (size_t i = 0; i < kVocab * 9 / 10; ++i) {
        lex += vocab[a][i] + " " + vocab[b][i] + "\n";
        if (i % 7 == 0) lex += vocab[a][i] + " " + vocab[b][(i + 1) % kVocab] + "\n";
      }
      WriteFile(dir / (std::string(kLangs[a]) + "-" + kLangs[b] + ".txt"), lex);
    }
  }
  std::uniform_int_distribution<size_t> word(0, kVocab - 1);
  std::uniform_int_distribution<size_t> len(3, 12);
  for (int l = 0; l < 3; ++l) {
    std::string corpus;
    for (size_t d = 0; d < docs_per_lang; ++d) {
      const size_t sentences = 1 + gen() % 3;
      for (size_t s = 0; s < sentences; ++s) {
        if (s > 0) corpus += ' ';
        const size_t n = len(gen);
        for (size_t w = 0; w < n; ++w) {
          if (w > 0) corpus += ' ';
          corpus += vocab[l][word(gen)];
        }
        corpus += '.';
      }
      corpus += '\n';
    }
    WriteFile(dir / (std::string(kLangs[l]) + ".txt"), corpus);
  }
  std::string config = R"({
  "languages": ["en", "fr", "de"],
  "corpora": {"en": "en.txt", "fr": "fr.txt", "de": "de.txt"},
  "lexicons": {"en-fr": "en-fr.txt", "fr-en": "fr-en.txt", "en-de": "en-de.txt",
               "de-en": "de-en.txt", "fr-de": "fr-de.txt", "de-fr": "de-fr.txt"},
  "seed": 11,
  "output": "out/pairs.jsonl")";
  if (!extra_json.empty()) config += ",\n  " + extra_json;
  config += "\n}\n";
  WriteFile(dir / "config.json", config);
  return dir / "config.json";
}

std::string WbwOracle::Check(const Document& doc,
                             const WbwResult& result) const {
  auto in_dict = [&](const std::string& w, const std::string& out) {
    auto it = dictionary_.find(w);
    if (it == dictionary_.end()) return false;
    return std::find(it->second.begin(), it->second.end(), out) !=
           it->second.end();
  };
  if (result.outcomes.size() != doc.sentences.size()) {
    return "sentence count mismatch";
  }
  std::vector<std::string> emitted;
  size_t dropped = 0, denominator = 0;
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto& tokens = doc.sentences[s].tokens;
    const auto& outcomes = result.outcomes[s];
    if (outcomes.size() != tokens.size()) return "token count mismatch";
    for (size_t t = 0; t < tokens.size(); ++t) {
      const Token& tok = tokens[t];
      const TokenOutcome& o = outcomes[t];
      const std::string where = doc.id + " token '" + tok.surface + "': ";
      const bool punct_or_number = tok.kind == TokenKind::kPunctuation ||
                                   tok.kind == TokenKind::kNumber;
      const bool direct = dictionary_.contains(tok.surface);
      const bool entity = entities_.contains(tok.surface);
      // Compound parts split on '-', the only separator the fuzzers emit.
      std::vector<std::string> parts;
      bool compound_ok = tok.kind == TokenKind::kCompound;
      if (compound_ok) {
        size_t start = 0;
        while (true) {
          size_t dash = tok.surface.find('-', start);
          std::string part = tok.surface.substr(
              start, dash == std::string::npos ? std::string::npos
                                               : dash - start);
          parts.push_back(part);
          if (!dictionary_.contains(part)) compound_ok = false;
          if (dash == std::string::npos) break;
          start = dash + 1;
        }
      }
      OutcomeKind expected;
      if (punct_or_number) {
        expected = OutcomeKind::kCopied;
        if (o.text != tok.surface) return where + "copy altered text";
      } else if (direct) {
        expected = OutcomeKind::kTranslated;
        if (!in_dict(tok.surface, o.text)) return where + "not a candidate";
      } else if (entity) {
        expected = OutcomeKind::kTransliterated;
        if (o.text != TransliterateDefault(tok.surface, src_, tgt_)) {
          return where + "wrong transliteration";
        }
      } else if (compound_ok) {
        expected = OutcomeKind::kTranslated;
        size_t start = 0;
        for (size_t i = 0; i < parts.size(); ++i) {
          size_t dash = o.text.find('-', start);
          if ((dash == std::string::npos) != (i + 1 == parts.size())) {
            return where + "compound shape changed";
          }
          std::string got = o.text.substr(
              start, dash == std::string::npos ? std::string::npos
                                               : dash - start);
          if (!in_dict(parts[i], got)) return where + "bad compound part";
          start = dash + 1;
        }
      } else {
        expected = OutcomeKind::kDropped;
        if (!o.text.empty()) return where + "dropped token has text";
      }
      if (o.kind != expected) {
        return where + "kind " + OutcomeKindName(o.kind) + ", expected " +
               OutcomeKindName(expected);
      }
      if (o.token_index != t) return where + "wrong token index";
      if (expected == OutcomeKind::kDropped) {
        ++dropped;
      } else {
        emitted.push_back(o.text);
      }
      if ((tok.kind == TokenKind::kWord || tok.kind == TokenKind::kCompound) &&
          expected != OutcomeKind::kTransliterated) {
        ++denominator;
      }
    }
  }
  std::string text;
  for (const std::string& e : emitted) {
    if (!text.empty()) text += ' ';
    text += e;
  }
  if (text != result.text) return doc.id + ": output text mismatch";
  const double rate =
      denominator == 0 ? 0.0 : static_cast<double>(dropped) / denominator;
  if (rate != result.missing_rate) return doc.id + ": missing rate mismatch";
  if (dropped != result.dropped) return doc.id + ": dropped count mismatch";
  return "";
}

WbwFuzzCase MakeWbwFuzzCase(std::mt19937_64& gen) {
  static constexpr const char* kAccents[] = {"é", "ü", "ö", "ç", "ß", "à"};
  static constexpr const char* kPunct[] = {",", ";", ":", "(", ")", "\"",
                                           "--", "«", "»"};
  WbwFuzzCase c;
  const size_t vocab_size = 5 + gen() % 40;
  std::vector<std::string> vocab;
  for (size_t i = 0; i < vocab_size; ++i) {
    std::string w = RandomWord(gen, 1, 7);
    if (gen() % 5 == 0) w += kAccents[gen() % 6];
    vocab.push_back(w);
  }
  for (const std::string& w : vocab) {
    const uint64_t r = gen() % 10;
    if (r < 6) {
      auto& cands = c.dictionary[w];
      for (size_t k = 1 + gen() % 3; k > 0; --k) {
        cands.push_back(RandomWord(gen, 1, 6));
      }
    } else if (r < 8 && !IsDefiniteArticle(w)) {
      c.entities.insert(w);
    }
  }
  const size_t sentences = 1 + gen() % 4;
  for (size_t s = 0; s < sentences; ++s) {
    if (s > 0) c.text += ' ';
    const size_t n = 1 + gen() % 15;
    for (size_t t = 0; t < n; ++t) {
      if (t > 0) c.text += ' ';
      const uint64_t r = gen() % 20;
      if (r == 0) {
        c.text += std::to_string(gen() % 10000);
      } else if (r == 1) {
        c.text += kPunct[gen() % 9];
      } else if (r == 2) {
        c.text += vocab[gen() % vocab.size()] + "-" +
                  vocab[gen() % vocab.size()];
      } else {
        c.text += vocab[gen() % vocab.size()];
        if (r == 3) c.text += ',';
      }
    }
    c.text += (gen() % 2) ? "." : " !";
  }
  return c;
}

}  // namespace spdg::testing
