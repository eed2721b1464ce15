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

// Annotated text model shared by every stage, the training-pair record, and
// the streaming corpus reader.

#ifndef SPDG_CORPUS_H_
#define SPDG_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spdg/language.h"

namespace spdg {

enum class TokenKind { kWord, kPunctuation, kNumber, kNamedEntity, kCompound };

const char* TokenKindName(TokenKind kind);

// Half-open byte range.
struct ByteSpan {
  size_t start = 0;
  size_t end = 0;

  size_t size() const { return end - start; }
  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::kWord;
  ByteSpan span;  // into the owning sentence's text
};

struct Sentence {
  std::string text;
  // Byte offset of `text` inside the owning document's text.
  size_t offset = 0;
  std::vector<Token> tokens;
};

struct Document {
  std::string id;
  LanguageId lang;
  std::string text;
  std::vector<Sentence> sentences;

  size_t TokenCount() const;
};

struct DocumentBatch {
  static constexpr size_t kDefaultCapacity = 1000;

  std::vector<Document> documents;
  size_t capacity = kDefaultCapacity;
};

enum class Objective { kSpdg, kDenoise, kMlm, kMlmReorder };

const char* ObjectiveName(Objective objective);
// Throws ConfigError for unknown names.
Objective ParseObjective(std::string_view name);

// One training example.
struct ParallelPair {
  std::string doc_id;
  LanguageId src_lang;
  LanguageId tgt_lang;
  std::string input;
  std::string output;
  Objective objective = Objective::kSpdg;

  friend bool operator==(const ParallelPair&, const ParallelPair&) = default;
};

// Empty string when `pair` satisfies the record invariants, otherwise a
// description of the first violation.
std::string PairViolation(const ParallelPair& pair);

struct IngestOptions {
  size_t batch_capacity = DocumentBatch::kDefaultCapacity;
  // Stop after this many documents; 0 means no cap.
  size_t max_documents = 0;
};

// Streams a one-document-per-line UTF-8 corpus as DocumentBatches. Lines are
// lowercased, split into sentences and tokenized; lines with no tokens are
// skipped with a warning. Document ids are "<filename>:<line-number>".
class CorpusReader {
 public:
  // Throws IngestError if the file cannot be opened.
  CorpusReader(const std::filesystem::path& path, LanguageId lang,
               IngestOptions options = {});

  // Next batch, or nullopt at end of corpus. Every batch except possibly the
  // last holds exactly batch_capacity documents.
  std::optional<DocumentBatch> Next();

  LanguageId lang() const { return lang_; }
  uint64_t lines_read() const { return lines_read_; }
  uint64_t documents_read() const { return documents_read_; }
  uint64_t lines_skipped() const { return lines_skipped_; }

 private:
  std::ifstream in_;
  std::string name_;
  LanguageId lang_;
  IngestOptions options_;
  uint64_t lines_read_ = 0;
  uint64_t documents_read_ = 0;
  uint64_t lines_skipped_ = 0;
  std::string line_;
};

// Convenience: reads every batch of a corpus.
std::vector<DocumentBatch> ReadCorpus(const std::filesystem::path& path,
                                      LanguageId lang,
                                      IngestOptions options = {});

}  // namespace spdg

#endif  // SPDG_CORPUS_H_
