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

#include "spdg/corpus.h"

#include <utility>

#include <spdlog/spdlog.h>

#include "spdg/annotate.h"
#include "spdg/errors.h"
#include "spdg/text_kernels.h"

namespace spdg {

const char* TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord:
      return "word";
    case TokenKind::kPunctuation:
      return "punctuation";
    case TokenKind::kNumber:
      return "number";
    case TokenKind::kNamedEntity:
      return "named_entity";
    case TokenKind::kCompound:
      return "compound";
  }
  return "unknown";
}

size_t Document::TokenCount() const {
  size_t n = 0;
  for (const Sentence& s : sentences) n += s.tokens.size();
  return n;
}

const char* ObjectiveName(Objective objective) {
  switch (objective) {
    case Objective::kSpdg:
      return "spdg";
    case Objective::kDenoise:
      return "denoise";
    case Objective::kMlm:
      return "mlm";
    case Objective::kMlmReorder:
      return "mlm_reorder";
  }
  return "unknown";
}

Objective ParseObjective(std::string_view name) {
  for (Objective o : {Objective::kSpdg, Objective::kDenoise, Objective::kMlm,
                      Objective::kMlmReorder}) {
    if (name == ObjectiveName(o)) return o;
  }
  throw ConfigError("unknown objective '" + std::string(name) + "'");
}

std::string PairViolation(const ParallelPair& pair) {
  if (pair.input.empty()) return "empty input";
  if (pair.output.empty()) return "empty output";
  if (pair.objective == Objective::kSpdg) {
    if (pair.src_lang == pair.tgt_lang) return "spdg pair with src == tgt";
  } else if (pair.src_lang != pair.tgt_lang) {
    return std::string(ObjectiveName(pair.objective)) +
           " pair with src != tgt";
  }
  return {};
}

CorpusReader::CorpusReader(const std::filesystem::path& path, LanguageId lang,
                           IngestOptions options)
    : in_(path, std::ios::binary),
      name_(path.filename().string()),
      lang_(lang),
      options_(options) {
  if (!in_) throw IngestError("cannot read corpus " + path.string());
  if (options_.batch_capacity == 0) {
    throw ConfigError("batch capacity must be positive");
  }
}

std::optional<DocumentBatch> CorpusReader::Next() {
  DocumentBatch batch;
  batch.capacity = options_.batch_capacity;
  const auto lower = kernels::ActiveKernels().lowercase_utf8;
  while (batch.documents.size() < options_.batch_capacity) {
    if (options_.max_documents != 0 &&
        documents_read_ >= options_.max_documents) {
      break;
    }
    if (!std::getline(in_, line_)) break;
    ++lines_read_;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    lower(line_.data(), line_.size());
    Document doc = AnnotateDocument(name_ + ":" + std::to_string(lines_read_),
                                    lang_, line_);
    if (doc.sentences.empty()) {
      ++lines_skipped_;
      if (!line_.empty()) {
        spdlog::warn("{}:{}: no tokens, document skipped", name_,
                     lines_read_);
      }
      continue;
    }
    ++documents_read_;
    batch.documents.push_back(std::move(doc));
  }
  if (batch.documents.empty()) return std::nullopt;
  return batch;
}

std::vector<DocumentBatch> ReadCorpus(const std::filesystem::path& path,
                                      LanguageId lang, IngestOptions options) {
  CorpusReader reader(path, lang, options);
  std::vector<DocumentBatch> out;
  while (auto batch = reader.Next()) out.push_back(std::move(*batch));
  return out;
}

}  // namespace spdg
