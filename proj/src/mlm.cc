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

#include "spdg/mlm.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string_view>

#include "spdg/errors.h"
#include "spdg/parallel.h"

namespace spdg {
namespace {

constexpr uint64_t kMlmStreamTag = 0x31a;
constexpr uint64_t kReorderStreamTag = 0x31b;

// Uniform composition of `total` into `parts` positive integers.
std::vector<size_t> PositiveComposition(size_t total, size_t parts, Rng& rng) {
  std::vector<size_t> cuts = rng.SampleDistinct(total - 1, parts - 1);
  for (size_t& c : cuts) ++c;
  std::sort(cuts.begin(), cuts.end());
  std::vector<size_t> out;
  out.reserve(parts);
  size_t prev = 0;
  for (size_t c : cuts) {
    out.push_back(c - prev);
    prev = c;
  }
  out.push_back(total - prev);
  return out;
}

// Uniform composition of `total` into `parts` non-negative integers.
std::vector<size_t> NonNegativeComposition(size_t total, size_t parts,
                                           Rng& rng) {
  std::vector<size_t> out = PositiveComposition(total + parts, parts, rng);
  for (size_t& v : out) --v;
  return out;
}

struct TokenBytes {
  size_t start;
  size_t end;
};

// Replaces each span with marker(i) inside `text`; returns the new text and
// fills `pieces` with the original text of each span.
template <typename Marker>
std::string ApplyMask(std::string_view text,
                      const std::vector<TokenBytes>& tokens,
                      const std::vector<MaskSpan>& spans, Marker&& marker,
                      std::vector<std::string_view>* pieces) {
  std::string out;
  out.reserve(text.size());
  size_t cursor = 0;
  for (size_t i = 0; i < spans.size(); ++i) {
    const size_t a = tokens[spans[i].begin].start;
    const size_t b = tokens[spans[i].end - 1].end;
    out.append(text.substr(cursor, a - cursor));
    out.append(marker(i));
    if (pieces != nullptr) pieces->push_back(text.substr(a, b - a));
    cursor = b;
  }
  out.append(text.substr(cursor));
  return out;
}

}  // namespace

void MlmParams::Validate() const {
  if (!(mask_ratio > 0.0 && mask_ratio < 1.0)) {
    throw ConfigError("mlm.mask_ratio must lie in (0, 1)");
  }
  if (!(mean_span_length >= 1.0)) {
    throw ConfigError("mlm.mean_span_length must be >= 1");
  }
  if (sentinel_format.find("{i}") == std::string::npos) {
    throw ConfigError("mlm.sentinel_format must contain {i}");
  }
  if (reorder_mask_token.empty()) {
    throw ConfigError("mlm.reorder_mask_token must not be empty");
  }
}

std::string MlmParams::Sentinel(size_t index) const {
  std::string out = sentinel_format;
  const size_t at = out.find("{i}");
  if (at != std::string::npos) out.replace(at, 3, std::to_string(index));
  return out;
}

std::vector<MaskSpan> SampleMaskSpans(size_t num_tokens, size_t num_masked,
                                      size_t num_spans, Rng& rng) {
  std::vector<MaskSpan> spans;
  if (num_spans == 0 || num_masked == 0) return spans;
  const size_t unmasked = num_tokens - num_masked;
  const std::vector<size_t> lengths =
      PositiveComposition(num_masked, num_spans, rng);
  // num_spans + 1 gaps; interior gaps get one guaranteed token.
  std::vector<size_t> gaps =
      NonNegativeComposition(unmasked - (num_spans - 1), num_spans + 1, rng);
  for (size_t i = 1; i < num_spans; ++i) ++gaps[i];
  size_t pos = gaps[0];
  spans.reserve(num_spans);
  for (size_t i = 0; i < num_spans; ++i) {
    spans.push_back({pos, pos + lengths[i]});
    pos += lengths[i] + gaps[i + 1];
  }
  return spans;
}

MaskPlan PlanMasking(size_t m, const MlmParams& params, bool allow_zero) {
  MaskPlan plan;
  if (m == 0) return plan;
  size_t masked = static_cast<size_t>(
      std::round(params.mask_ratio * static_cast<double>(m)));
  if (m >= 2) masked = std::min(masked, m - 1);
  if (!allow_zero) masked = std::max<size_t>(masked, 1);
  if (masked == 0) return plan;
  size_t spans = static_cast<size_t>(std::round(
      static_cast<double>(masked) / params.mean_span_length));
  spans = std::max<size_t>(spans, 1);
  spans = std::min({spans, masked, m - masked + 1});
  plan.masked = masked;
  plan.spans = spans;
  return plan;
}

ParallelPair MlmPair(const Document& doc, const MlmParams& params, Rng& rng) {
  std::vector<TokenBytes> tokens;
  for (const Sentence& s : doc.sentences) {
    for (const Token& t : s.tokens) {
      tokens.push_back({s.offset + t.span.start, s.offset + t.span.end});
    }
  }
  if (tokens.empty()) {
    throw std::invalid_argument("document " + doc.id + " has no tokens");
  }
  const MaskPlan plan = PlanMasking(tokens.size(), params, false);
  const std::vector<MaskSpan> spans =
      SampleMaskSpans(tokens.size(), plan.masked, plan.spans, rng);

  std::vector<std::string_view> pieces;
  ParallelPair pair;
  pair.doc_id = doc.id;
  pair.src_lang = doc.lang;
  pair.tgt_lang = doc.lang;
  pair.objective = Objective::kMlm;
  pair.input = ApplyMask(
      doc.text, tokens, spans, [&](size_t i) { return params.Sentinel(i); },
      &pieces);
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (i > 0) pair.output.push_back(' ');
    pair.output += params.Sentinel(i);
    pair.output.push_back(' ');
    pair.output.append(pieces[i]);
  }
  return pair;
}

ParallelPair MlmReorderPair(const Document& doc, const MlmParams& params,
                            Rng& rng) {
  if (doc.sentences.empty()) {
    throw std::invalid_argument("document " + doc.id + " has no sentences");
  }
  std::vector<size_t> order(doc.sentences.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span<size_t>(order));

  std::string permuted;
  std::vector<TokenBytes> tokens;
  for (size_t idx : order) {
    const Sentence& s = doc.sentences[idx];
    if (!permuted.empty()) permuted.push_back(' ');
    const size_t base = permuted.size();
    permuted += s.text;
    for (const Token& t : s.tokens) {
      tokens.push_back({base + t.span.start, base + t.span.end});
    }
  }
  const MaskPlan plan = PlanMasking(tokens.size(), params, true);
  const std::vector<MaskSpan> spans =
      SampleMaskSpans(tokens.size(), plan.masked, plan.spans, rng);

  ParallelPair pair;
  pair.doc_id = doc.id;
  pair.src_lang = doc.lang;
  pair.tgt_lang = doc.lang;
  pair.objective = Objective::kMlmReorder;
  pair.input = ApplyMask(
      permuted, tokens, spans,
      [&](size_t) -> const std::string& { return params.reorder_mask_token; },
      nullptr);
  pair.output = doc.text;
  return pair;
}

ParallelPair MaskedPair(const Document& doc, Objective objective,
                        const MlmParams& params, uint64_t seed) {
  switch (objective) {
    case Objective::kMlm: {
      Rng rng = Rng::Derive(seed, doc.id, {kMlmStreamTag});
      return MlmPair(doc, params, rng);
    }
    case Objective::kMlmReorder: {
      Rng rng = Rng::Derive(seed, doc.id, {kReorderStreamTag});
      return MlmReorderPair(doc, params, rng);
    }
    default:
      throw std::invalid_argument(std::string("not a masking objective: ") +
                                  ObjectiveName(objective));
  }
}

std::vector<ParallelPair> MaskedPairs(std::span<const Document> docs,
                                      Objective objective,
                                      const MlmParams& params, uint64_t seed,
                                      size_t workers) {
  std::vector<ParallelPair> pairs(docs.size());
  ParallelFor(docs.size(), workers, [&](size_t i) {
    pairs[i] = MaskedPair(docs[i], objective, params, seed);
  });
  return pairs;
}

}  // namespace spdg
