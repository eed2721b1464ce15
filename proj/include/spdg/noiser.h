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

// Corruption of monolingual documents into (noisy, original) pairs for
// denoiser training, and calibration of the removal rate from word-by-word
// translation coverage.

#ifndef SPDG_NOISER_H_
#define SPDG_NOISER_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spdg/corpus.h"
#include "spdg/language.h"
#include "spdg/rng.h"
#include "spdg/wbw.h"

namespace spdg {

// Per-language corruption rates. Removal rate ~ Normal(mean, std) clamped to
// [0, 1]; addition and substitution rates ~ Uniform over their ranges.
struct NoiseProfile {
  LanguageId lang;
  double remove_mean = 0.0;
  double remove_std = 0.0;
  double add_min = 0.0;
  double add_max = 0.0;
  double sub_min = 0.0;
  double sub_max = 0.0;

  // Built-in rates for en, fr and de. nullopt for other languages.
  static std::optional<NoiseProfile> Default(LanguageId lang);

  // All rates zero: only shuffling is active.
  static NoiseProfile Zero(LanguageId lang) { return NoiseProfile{lang}; }

  // Throws ConfigError when a field is outside [0, 1] or a range is inverted.
  void Validate() const;

  friend bool operator==(const NoiseProfile&, const NoiseProfile&) = default;
};

struct CalibrationReport {
  LanguageId tgt;
  double mean = 0.0;
  double std = 0.0;
  uint64_t documents_seen = 0;
  uint64_t tokens_seen = 0;
};

// Counter shared by concurrent corruption calls.
struct NoiseCounters {
  std::atomic<uint64_t> empty_pool_warnings{0};
};

// Candidate replacement words for one document: the distinct token surfaces
// of the other documents in its batch.
class WordPool {
 public:
  WordPool() = default;
  // A plain list; duplicates are removed, first occurrence kept.
  explicit WordPool(std::vector<std::string> words);

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // min(k, size()) distinct words, uniformly without replacement.
  std::vector<std::string_view> Sample(size_t k, Rng& rng) const;

 private:
  friend class BatchVocabulary;

  // Words in first-occurrence order; an entry is excluded when its owner
  // equals `excluded_owner_` (words seen in exactly one document carry that
  // document's index as owner, others carry kShared).
  static constexpr size_t kShared = static_cast<size_t>(-1);
  static constexpr size_t kNone = static_cast<size_t>(-2);

  std::shared_ptr<const std::vector<std::string>> owned_;
  const std::vector<std::string>* words_ = nullptr;
  // nullptr: nothing excluded.
  const std::vector<size_t>* owners_ = nullptr;
  size_t excluded_owner_ = kNone;
  size_t size_ = 0;
};

// Distinct token surfaces of a batch, with which documents own them, so the
// per-document pool ("every other document") is O(1) to derive.
class BatchVocabulary {
 public:
  explicit BatchVocabulary(const DocumentBatch& batch);

  // Pool for document `doc_index`. The vocabulary must outlive the pool.
  WordPool PoolExcluding(size_t doc_index) const;

  size_t size() const { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::vector<size_t> owners_;
  std::vector<size_t> exclusive_counts_;
};

enum class CorruptionOp { kShuffle, kRemove, kAdd, kSubstitute };

const char* CorruptionOpName(CorruptionOp op);
CorruptionOp ParseCorruptionOp(std::string_view name);

using TokenList = std::vector<std::string>;

// Each sentence becomes a uniform random permutation of itself; the sentence
// sequence is unchanged.
void ShuffleSentences(std::span<TokenList> sentences, Rng& rng);

// r ~ Normal(remove_mean, remove_std) clamped to [0, 1]; removes round(m * r)
// uniformly chosen positions, survivors keep their order.
TokenList RemoveWords(const TokenList& tokens, const NoiseProfile& profile,
                      Rng& rng);

// c ~ Uniform(add_min, add_max); inserts min(round(m * c), |pool|) distinct
// pool words at uniformly chosen positions. An empty pool leaves the
// sentence unchanged and bumps the warning counter.
TokenList AddWords(const TokenList& tokens, const WordPool& pool,
                   const NoiseProfile& profile, Rng& rng,
                   NoiseCounters* counters = nullptr);

// c ~ Uniform(sub_min, sub_max); replaces min(round(m * c), |pool|) distinct
// positions with distinct pool words. Length is preserved.
TokenList SubstituteWords(const TokenList& tokens, const WordPool& pool,
                          const NoiseProfile& profile, Rng& rng,
                          NoiseCounters* counters = nullptr);

// round(m * rate) with halves away from zero; rate is clamped to [0, 1].
size_t CorruptionCount(size_t m, double rate);

struct CorruptOptions {
  std::vector<CorruptionOp> order = {CorruptionOp::kShuffle,
                                     CorruptionOp::kRemove, CorruptionOp::kAdd,
                                     CorruptionOp::kSubstitute};
  uint64_t seed = 0;
  size_t workers = 1;
};

// Corrupts one document. Random streams derive from (seed, doc id, sentence
// index, op), so the result is independent of scheduling.
std::string CorruptDocument(const Document& doc, const WordPool& pool,
                            const NoiseProfile& profile,
                            const CorruptOptions& options,
                            NoiseCounters* counters = nullptr);

// One denoise pair per document: input = corrupted text (space-joined tokens,
// sentence order kept), output = the original document text.
std::vector<ParallelPair> CorruptBatch(const DocumentBatch& batch,
                                       const NoiseProfile& profile,
                                       const CorruptOptions& options,
                                       NoiseCounters* counters = nullptr);

// Pulls the next batch; nullopt at end of stream.
using BatchSource = std::function<std::optional<DocumentBatch>()>;

inline constexpr uint64_t kCalibrationSeed = 0x5eed;

// Word-by-word translates every document of every source into `tgt` and
// reports the population mean / std of the per-document missing rates.
// ctx.seed is ignored in favour of kCalibrationSeed.
// Throws CalibrationError when no document was seen.
CalibrationReport Calibrate(std::span<BatchSource> sources, LanguageId tgt,
                            const WbwContext& ctx, size_t workers = 1);

// Mean and population standard deviation.
std::pair<double, double> MeanAndStd(std::span<const double> values);

}  // namespace spdg

#endif  // SPDG_NOISER_H_
