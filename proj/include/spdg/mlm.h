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

// Baseline generators: span-masked language modelling (sentinel targets)
// and masking with sentence reordering (full-document target).

#ifndef SPDG_MLM_H_
#define SPDG_MLM_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spdg/corpus.h"
#include "spdg/rng.h"

namespace spdg {

struct MlmParams {
  double mask_ratio = 0.15;
  double mean_span_length = 3.0;
  std::string sentinel_format = "<extra_id_{i}>";
  std::string reorder_mask_token = "<mask>";

  // Throws ConfigError unless 0 < mask_ratio < 1, mean_span_length >= 1 and
  // sentinel_format contains "{i}".
  void Validate() const;

  std::string Sentinel(size_t index) const;
};

// Token-index range [begin, end).
struct MaskSpan {
  size_t begin = 0;
  size_t end = 0;

  friend bool operator==(const MaskSpan&, const MaskSpan&) = default;
};

// Chooses `num_spans` disjoint spans covering exactly `num_masked` of
// `num_tokens` positions. Span lengths and the gaps between them are uniform
// random compositions; consecutive spans are separated by at least one
// unmasked token. The caller guarantees num_spans <= num_masked and
// num_spans - 1 <= num_tokens - num_masked.
std::vector<MaskSpan> SampleMaskSpans(size_t num_tokens, size_t num_masked,
                                      size_t num_spans, Rng& rng);

// Number of tokens and spans mlm_pairs masks for a document of m tokens.
struct MaskPlan {
  size_t masked = 0;
  size_t spans = 0;
};
MaskPlan PlanMasking(size_t m, const MlmParams& params, bool allow_zero);

// input: the document text with every masked span replaced by its sentinel;
// output: "sentinel_0 span_0 sentinel_1 span_1 ...", where span_i is the
// original text of the span. Requires at least one token.
ParallelPair MlmPair(const Document& doc, const MlmParams& params, Rng& rng);

// input: the sentences in uniformly random order, joined by single spaces,
// with each masked span replaced by reorder_mask_token; output: the original
// document text.
ParallelPair MlmReorderPair(const Document& doc, const MlmParams& params,
                            Rng& rng);

// MlmPair or MlmReorderPair (by `objective`) with a stream derived from
// (seed, doc id), so the result is independent of scheduling.
ParallelPair MaskedPair(const Document& doc, Objective objective,
                        const MlmParams& params, uint64_t seed);

// MaskedPair for every document, computed on up to `workers` threads and
// returned in document order.
std::vector<ParallelPair> MaskedPairs(std::span<const Document> docs,
                                      Objective objective,
                                      const MlmParams& params, uint64_t seed,
                                      size_t workers = 1);

}  // namespace spdg

#endif  // SPDG_MLM_H_
