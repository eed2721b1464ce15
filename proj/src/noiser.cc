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
#include <cmath>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "spdg/errors.h"
#include "spdg/lexicon.h"
#include "spdg/parallel.h"

namespace spdg {
namespace {

enum StreamTag : uint64_t {
  kShuffleTag = 0x5f1,
  kRemoveTag = 0x5f2,
  kAddTag = 0x5f3,
  kSubstituteTag = 0x5f4,
};

uint64_t TagFor(CorruptionOp op) {
  switch (op) {
    case CorruptionOp::kShuffle:
      return kShuffleTag;
    case CorruptionOp::kRemove:
      return kRemoveTag;
    case CorruptionOp::kAdd:
      return kAddTag;
    case CorruptionOp::kSubstitute:
      return kSubstituteTag;
  }
  return 0;
}

void CheckUnit(double v, const char* field, LanguageId lang) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError("noise profile " + lang.str() + ": " + field +
                      " must lie in [0, 1]");
  }
}

void WarnEmptyPool(NoiseCounters* counters) {
  if (counters != nullptr) {
    counters->empty_pool_warnings.fetch_add(1, std::memory_order_relaxed);
  }
}

std::string JoinSentences(const std::vector<TokenList>& sentences) {
  std::string out;
  for (const TokenList& s : sentences) {
    for (const std::string& t : s) {
      if (!out.empty()) out.push_back(' ');
      out.append(t);
    }
  }
  return out;
}

}  // namespace

std::optional<NoiseProfile> NoiseProfile::Default(LanguageId lang) {
  const std::string_view code = lang.code();
  double mean = 0.0;
  double stddev = 0.0;
  if (code == "en") {
    mean = 0.066;
    stddev = 0.061;
  } else if (code == "fr") {
    mean = 0.152;
    stddev = 0.087;
  } else if (code == "de") {
    mean = 0.137;
    stddev = 0.085;
  } else {
    return std::nullopt;
  }
  return NoiseProfile{lang, mean, stddev, 0.01, 0.03, 0.05, 0.07};
}

void NoiseProfile::Validate() const {
  CheckUnit(remove_mean, "remove_mean", lang);
  CheckUnit(remove_std, "remove_std", lang);
  CheckUnit(add_min, "add_min", lang);
  CheckUnit(add_max, "add_max", lang);
  CheckUnit(sub_min, "sub_min", lang);
  CheckUnit(sub_max, "sub_max", lang);
  if (add_min > add_max) {
    throw ConfigError("noise profile " + lang.str() + ": add_min > add_max");
  }
  if (sub_min > sub_max) {
    throw ConfigError("noise profile " + lang.str() + ": sub_min > sub_max");
  }
}

WordPool::WordPool(std::vector<std::string> words) {
  auto unique = std::make_shared<std::vector<std::string>>();
  // Reserved up front so views into the stored strings stay valid.
  unique->reserve(words.size());
  std::unordered_set<std::string_view> seen;
  for (std::string& w : words) {
    if (seen.contains(w)) continue;
    unique->push_back(std::move(w));
    seen.insert(unique->back());
  }
  size_ = unique->size();
  words_ = unique.get();
  owned_ = std::move(unique);
}

std::vector<std::string_view> WordPool::Sample(size_t k, Rng& rng) const {
  std::vector<std::string_view> out;
  k = std::min(k, size_);
  if (k == 0) return out;
  const auto& words = *words_;
  const size_t n = words.size();
  out.reserve(k);
  if (owners_ == nullptr || size_ == n) {
    for (size_t i : rng.SampleDistinct(n, k)) out.push_back(words[i]);
    return out;
  }
  const auto eligible = [&](size_t i) {
    return (*owners_)[i] != excluded_owner_;
  };
  if (k * 2 >= size_) {
    std::vector<size_t> idx;
    idx.reserve(size_);
    for (size_t i = 0; i < n; ++i) {
      if (eligible(i)) idx.push_back(i);
    }
    for (size_t i : rng.SampleDistinct(idx.size(), k)) {
      out.push_back(words[idx[i]]);
    }
    return out;
  }
  // Sparse draw: rejection over the full vocabulary is uniform over the
  // eligible words, and at least half of them are still unchosen.
  std::unordered_set<size_t> chosen;
  chosen.reserve(k * 2);
  while (out.size() < k) {
    const size_t i = rng.Below(n);
    if (!eligible(i) || !chosen.insert(i).second) continue;
    out.push_back(words[i]);
  }
  return out;
}

BatchVocabulary::BatchVocabulary(const DocumentBatch& batch)
    : exclusive_counts_(batch.documents.size(), 0) {
  std::unordered_map<std::string_view, size_t> index;
  for (size_t d = 0; d < batch.documents.size(); ++d) {
    for (const Sentence& s : batch.documents[d].sentences) {
      for (const Token& t : s.tokens) {
        auto [it, inserted] = index.try_emplace(t.surface, words_.size());
        if (inserted) {
          words_.push_back(t.surface);
          owners_.push_back(d);
        } else if (owners_[it->second] != d) {
          owners_[it->second] = WordPool::kShared;
        }
      }
    }
  }
  for (size_t owner : owners_) {
    if (owner != WordPool::kShared) ++exclusive_counts_[owner];
  }
}

WordPool BatchVocabulary::PoolExcluding(size_t doc_index) const {
  WordPool pool;
  pool.words_ = &words_;
  pool.owners_ = &owners_;
  pool.excluded_owner_ = doc_index;
  pool.size_ = words_.size() - (doc_index < exclusive_counts_.size()
                                    ? exclusive_counts_[doc_index]
                                    : 0);
  return pool;
}

const char* CorruptionOpName(CorruptionOp op) {
  switch (op) {
    case CorruptionOp::kShuffle:
      return "shuffle";
    case CorruptionOp::kRemove:
      return "remove";
    case CorruptionOp::kAdd:
      return "add";
    case CorruptionOp::kSubstitute:
      return "substitute";
  }
  return "unknown";
}

CorruptionOp ParseCorruptionOp(std::string_view name) {
  for (CorruptionOp op : {CorruptionOp::kShuffle, CorruptionOp::kRemove,
                          CorruptionOp::kAdd, CorruptionOp::kSubstitute}) {
    if (name == CorruptionOpName(op)) return op;
  }
  throw ConfigError("unknown corruption op '" + std::string(name) + "'");
}

size_t CorruptionCount(size_t m, double rate) {
  rate = std::clamp(rate, 0.0, 1.0);
  return static_cast<size_t>(std::round(static_cast<double>(m) * rate));
}

void ShuffleSentences(std::span<TokenList> sentences, Rng& rng) {
  for (TokenList& s : sentences) rng.Shuffle(std::span<std::string>(s));
}

TokenList RemoveWords(const TokenList& tokens, const NoiseProfile& profile,
                      Rng& rng) {
  const size_t m = tokens.size();
  if (m == 0) return tokens;
  const double r = rng.Normal(profile.remove_mean, profile.remove_std);
  const size_t k = CorruptionCount(m, r);
  if (k == 0) return tokens;
  std::vector<bool> removed(m, false);
  for (size_t i : rng.SampleDistinct(m, k)) removed[i] = true;
  TokenList out;
  out.reserve(m - k);
  for (size_t i = 0; i < m; ++i) {
    if (!removed[i]) out.push_back(tokens[i]);
  }
  return out;
}

TokenList AddWords(const TokenList& tokens, const WordPool& pool,
                   const NoiseProfile& profile, Rng& rng,
                   NoiseCounters* counters) {
  if (pool.empty()) {
    WarnEmptyPool(counters);
    return tokens;
  }
  const double c = rng.Uniform(profile.add_min, profile.add_max);
  const size_t k = CorruptionCount(tokens.size(), c);
  if (k == 0) return tokens;
  TokenList out = tokens;
  for (std::string_view word : pool.Sample(k, rng)) {
    const size_t pos = rng.Below(out.size() + 1);
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos),
               std::string(word));
  }
  return out;
}

TokenList SubstituteWords(const TokenList& tokens, const WordPool& pool,
                          const NoiseProfile& profile, Rng& rng,
                          NoiseCounters* counters) {
  if (pool.empty()) {
    WarnEmptyPool(counters);
    return tokens;
  }
  const double c = rng.Uniform(profile.sub_min, profile.sub_max);
  size_t k = std::min(CorruptionCount(tokens.size(), c), pool.size());
  if (k == 0) return tokens;
  TokenList out = tokens;
  const std::vector<size_t> positions = rng.SampleDistinct(out.size(), k);
  const std::vector<std::string_view> words = pool.Sample(k, rng);
  for (size_t i = 0; i < k; ++i) out[positions[i]] = std::string(words[i]);
  return out;
}

std::string CorruptDocument(const Document& doc, const WordPool& pool,
                            const NoiseProfile& profile,
                            const CorruptOptions& options,
                            NoiseCounters* counters) {
  std::vector<TokenList> sentences;
  sentences.reserve(doc.sentences.size());
  for (const Sentence& s : doc.sentences) {
    TokenList tokens;
    tokens.reserve(s.tokens.size());
    for (const Token& t : s.tokens) tokens.push_back(t.surface);
    sentences.push_back(std::move(tokens));
  }
  for (size_t s = 0; s < sentences.size(); ++s) {
    for (CorruptionOp op : options.order) {
      Rng rng = Rng::Derive(options.seed, doc.id, {s, TagFor(op)});
      TokenList& tokens = sentences[s];
      switch (op) {
        case CorruptionOp::kShuffle:
          ShuffleSentences(std::span<TokenList>(&tokens, 1), rng);
          break;
        case CorruptionOp::kRemove:
          tokens = RemoveWords(tokens, profile, rng);
          break;
        case CorruptionOp::kAdd:
          tokens = AddWords(tokens, pool, profile, rng, counters);
          break;
        case CorruptionOp::kSubstitute:
          tokens = SubstituteWords(tokens, pool, profile, rng, counters);
          break;
      }
    }
  }
  return JoinSentences(sentences);
}

std::vector<ParallelPair> CorruptBatch(const DocumentBatch& batch,
                                       const NoiseProfile& profile,
                                       const CorruptOptions& options,
                                       NoiseCounters* counters) {
  profile.Validate();
  for (const Document& doc : batch.documents) {
    if (doc.lang != profile.lang) {
      throw std::invalid_argument("document " + doc.id + " is " +
                                  doc.lang.str() + ", profile is " +
                                  profile.lang.str());
    }
  }
  const BatchVocabulary vocab(batch);
  std::vector<ParallelPair> pairs(batch.documents.size());
  ParallelFor(batch.documents.size(), options.workers, [&](size_t d) {
    const Document& doc = batch.documents[d];
    ParallelPair& pair = pairs[d];
    pair.doc_id = doc.id;
    pair.src_lang = doc.lang;
    pair.tgt_lang = doc.lang;
    pair.objective = Objective::kDenoise;
    pair.input = CorruptDocument(doc, vocab.PoolExcluding(d), profile,
                                 options, counters);
    pair.output = doc.text;
  });
  std::erase_if(pairs, [](const ParallelPair& p) {
    if (p.input.empty()) {
      spdlog::warn("{}: corruption removed every token, pair skipped",
                   p.doc_id);
      return true;
    }
    return false;
  });
  return pairs;
}

std::pair<double, double> MeanAndStd(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

CalibrationReport Calibrate(std::span<BatchSource> sources, LanguageId tgt,
                            const WbwContext& ctx, size_t workers) {
  WbwContext calibration_ctx = ctx;
  calibration_ctx.seed = kCalibrationSeed;
  std::vector<double> rates;
  CalibrationReport report;
  report.tgt = tgt;
  for (BatchSource& next : sources) {
    while (auto batch = next()) {
      std::vector<double> batch_rates(batch->documents.size());
      std::vector<size_t> batch_tokens(batch->documents.size());
      ParallelFor(batch->documents.size(), workers, [&](size_t d) {
        const WbwResult r =
            TranslateDocument(batch->documents[d], tgt, calibration_ctx);
        batch_rates[d] = r.missing_rate;
        batch_tokens[d] = r.token_count;
      });
      rates.insert(rates.end(), batch_rates.begin(), batch_rates.end());
      for (size_t n : batch_tokens) report.tokens_seen += n;
    }
  }
  if (rates.empty()) {
    throw CalibrationError("calibration for " + tgt.str() +
                           " saw no documents");
  }
  report.documents_seen = rates.size();
  std::tie(report.mean, report.std) = MeanAndStd(rates);
  return report;
}

}  // namespace spdg
