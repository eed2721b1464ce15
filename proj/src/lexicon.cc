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

#include "spdg/lexicon.h"

#include <algorithm>
#include <fstream>
#include <utility>

#include <spdlog/spdlog.h>

#include "spdg/errors.h"
#include "spdg/text_kernels.h"

namespace spdg {
namespace {

bool NeedsLowercasing(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || static_cast<unsigned char>(c) >= 0x80;
  });
}

}  // namespace

Lexicon::Lexicon(const Lexicon& other)
    : src_(other.src_),
      tgt_(other.tgt_),
      entries_(other.entries_),
      malformed_lines_(other.malformed_lines_),
      lookups_(other.lookups()) {}

Lexicon::Lexicon(Lexicon&& other) noexcept
    : src_(other.src_),
      tgt_(other.tgt_),
      entries_(std::move(other.entries_)),
      malformed_lines_(other.malformed_lines_),
      lookups_(other.lookups()) {}

void Lexicon::Add(std::string_view source, std::string_view target) {
  if (source.empty() || target.empty()) return;
  std::string key = LowercaseUtf8(source);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::move(key), std::vector<std::string>{std::string(target)});
    return;
  }
  auto& list = it->second;
  if (std::find(list.begin(), list.end(), target) == list.end()) {
    list.emplace_back(target);
  }
}

std::span<const std::string> Lexicon::Lookup(std::string_view word) const {
  lookups_.fetch_add(1, std::memory_order_relaxed);
  if (word.empty()) return {};
  Entries::const_iterator it;
  if (NeedsLowercasing(word)) {
    it = entries_.find(LowercaseUtf8(word));
  } else {
    it = entries_.find(word);
  }
  if (it == entries_.end()) return {};
  return it->second;
}

Lexicon LoadLexicon(const std::filesystem::path& path, LanguageId src,
                    LanguageId tgt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw LexiconLoadError("cannot read lexicon " + path.string() + " (" +
                           src.str() + "-" + tgt.str() + ")");
  }
  const auto& k = kernels::ActiveKernels();
  Lexicon lex(src, tgt);
  uint64_t valid = 0;
  std::string line;
  while (std::getline(in, line)) {
    const char* d = line.data();
    const size_t n = line.size();
    const size_t a = k.skip_whitespace(d, n, 0);
    if (a == n) continue;
    const size_t a_end = k.find_whitespace(d, n, a);
    const size_t b = k.skip_whitespace(d, n, a_end);
    const size_t b_end = k.find_whitespace(d, n, b);
    if (b == n || k.skip_whitespace(d, n, b_end) != n) {
      ++lex.malformed_lines_;
      continue;
    }
    lex.Add(std::string_view(d + a, a_end - a),
            std::string_view(d + b, b_end - b));
    ++valid;
  }
  if (lex.malformed_lines_ > 0) {
    spdlog::warn("{}: skipped {} malformed line(s)", path.string(),
                 lex.malformed_lines_);
  }
  if (valid == 0) {
    throw LexiconLoadError("lexicon " + path.string() + " has no valid entries");
  }
  return lex;
}

void LexiconSet::Add(Lexicon lexicon) {
  const LanguagePair key{lexicon.src(), lexicon.tgt()};
  if (lexicons_.contains(key)) {
    throw ConfigError("duplicate lexicon for " + key.str());
  }
  lexicons_.emplace(key, std::make_unique<const Lexicon>(std::move(lexicon)));
}

const Lexicon* LexiconSet::Find(LanguageId src, LanguageId tgt) const {
  auto it = lexicons_.find(LanguagePair{src, tgt});
  return it == lexicons_.end() ? nullptr : it->second.get();
}

bool LexiconSet::Resolvable(LanguageId src, LanguageId tgt) const {
  if (Find(src, tgt) != nullptr) return true;
  return src != pivot_ && tgt != pivot_ && Find(src, pivot_) != nullptr &&
         Find(pivot_, tgt) != nullptr;
}

void LexiconSet::Require(LanguageId src, LanguageId tgt) const {
  if (!Resolvable(src, tgt)) {
    throw ConfigError("no lexicon for " + LanguagePair{src, tgt}.str() +
                      " (neither direct nor via pivot " + pivot_.str() + ")");
  }
}

Candidates LexiconSet::LookupWithPivot(LanguageId src, LanguageId tgt,
                                       std::string_view word) const {
  Candidates out;
  const Lexicon* direct = Find(src, tgt);
  if (direct != nullptr) {
    const auto hits = direct->Lookup(word);
    if (!hits.empty()) {
      out.assign(hits.begin(), hits.end());
      return out;
    }
  } else {
    Require(src, tgt);
  }
  if (src == pivot_ || tgt == pivot_) return out;
  const Lexicon* to_pivot = Find(src, pivot_);
  const Lexicon* from_pivot = Find(pivot_, tgt);
  if (to_pivot == nullptr || from_pivot == nullptr) return out;
  for (const std::string& mid : to_pivot->Lookup(word)) {
    for (const std::string& cand : from_pivot->Lookup(mid)) {
      if (std::find(out.begin(), out.end(), cand) == out.end()) {
        out.push_back(cand);
      }
    }
  }
  return out;
}

std::vector<LanguagePair> LexiconSet::directions() const {
  std::vector<LanguagePair> out;
  for (const auto& [key, _] : lexicons_) out.push_back(key);
  return out;
}

}  // namespace spdg
