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

#ifndef SPDG_LEXICON_H_
#define SPDG_LEXICON_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spdg/language.h"

namespace spdg {

struct StringHash {
  using is_transparent = void;
  size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>()(s);
  }
};

// Bilingual word table: lowercase source word -> distinct target candidates
// in first-seen order. Immutable once built; lookups are counted.
class Lexicon {
 public:
  using Entries = std::unordered_map<std::string, std::vector<std::string>,
                                     StringHash, std::equal_to<>>;

  Lexicon(LanguageId src, LanguageId tgt) : src_(src), tgt_(tgt) {}
  Lexicon(const Lexicon& other);
  Lexicon(Lexicon&& other) noexcept;
  Lexicon& operator=(const Lexicon&) = delete;

  // Adds one (source, target) entry. The source is lowercased; duplicate
  // targets are ignored.
  void Add(std::string_view source, std::string_view target);

  // Candidates for lowercase(word); empty when absent.
  std::span<const std::string> Lookup(std::string_view word) const;

  LanguageId src() const { return src_; }
  LanguageId tgt() const { return tgt_; }
  size_t size() const { return entries_.size(); }
  const Entries& entries() const { return entries_; }

  uint64_t lookups() const { return lookups_.load(std::memory_order_relaxed); }
  void ResetLookups() const { lookups_.store(0, std::memory_order_relaxed); }

  // Lines parsed from a file that were not exactly two fields.
  uint64_t malformed_lines() const { return malformed_lines_; }

 private:
  friend Lexicon LoadLexicon(const std::filesystem::path&, LanguageId,
                             LanguageId);

  LanguageId src_;
  LanguageId tgt_;
  Entries entries_;
  uint64_t malformed_lines_ = 0;
  mutable std::atomic<uint64_t> lookups_{0};
};

// MUSE-style dictionary: one "<source> <target>" pair per non-empty line.
// Malformed lines are counted and skipped. Throws LexiconLoadError if the file
// is unreadable or has no valid line.
Lexicon LoadLexicon(const std::filesystem::path& path, LanguageId src,
                    LanguageId tgt);

// Candidate list that references strings owned by lexicons in a LexiconSet.
using Candidates = std::vector<std::string_view>;

// Lexicons keyed by direction, plus the pivot used to chain two of them.
class LexiconSet {
 public:
  explicit LexiconSet(LanguageId pivot = LanguageId("en")) : pivot_(pivot) {}

  // Throws ConfigError if a lexicon for the same direction already exists.
  void Add(Lexicon lexicon);

  LanguageId pivot() const { return pivot_; }

  // nullptr when absent.
  const Lexicon* Find(LanguageId src, LanguageId tgt) const;

  // True if the direction can be served: directly, or via src->pivot and
  // pivot->tgt.
  bool Resolvable(LanguageId src, LanguageId tgt) const;

  // Throws ConfigError naming the pair unless Resolvable(src, tgt).
  void Require(LanguageId src, LanguageId tgt) const;

  // Direct candidates when non-empty (the pivot lexicons are not consulted).
  // Otherwise the deduplicated concatenation of pivot->tgt candidates over
  // every src->pivot candidate, in stored order. Throws ConfigError if the
  // direction is not resolvable.
  Candidates LookupWithPivot(LanguageId src, LanguageId tgt,
                             std::string_view word) const;

  std::vector<LanguagePair> directions() const;

 private:
  LanguageId pivot_;
  std::map<LanguagePair, std::unique_ptr<const Lexicon>> lexicons_;
};

}  // namespace spdg

#endif  // SPDG_LEXICON_H_
