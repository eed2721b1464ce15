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

// NER and transliteration served by external commands over the denoiser
// JSONL protocol (see denoiser.h). Both declare themselves single-use, so
// calls are serialized.

#ifndef SPDG_EXTERNAL_PROVIDERS_H_
#define SPDG_EXTERNAL_PROVIDERS_H_

#include <chrono>
#include <string>

#include "spdg/annotate.h"

namespace spdg {

// One record per sentence: text is the sentence's tokens joined by single
// spaces. The response text lists entity token ranges as space-separated
// "begin:end" pairs (half-open), e.g. "0:2 5:6"; empty for none.
class ExternalNer : public NerProvider {
 public:
  ExternalNer(std::string command, std::chrono::milliseconds timeout)
      : command_(std::move(command)), timeout_(timeout) {}

  bool concurrent_safe() const override { return false; }

 protected:
  std::vector<NeSpan> DoDetect(const Document& doc) const override;

 private:
  std::string command_;
  std::chrono::milliseconds timeout_;
};

// One record per word; the response text is the transliteration.
class ExternalTransliterator : public TransliterationProvider {
 public:
  ExternalTransliterator(std::string command, std::chrono::milliseconds timeout)
      : command_(std::move(command)), timeout_(timeout) {}

  bool concurrent_safe() const override { return false; }

 protected:
  std::string DoTransliterate(std::string_view word, LanguageId src,
                              LanguageId tgt) const override;

 private:
  std::string command_;
  std::chrono::milliseconds timeout_;
};

}  // namespace spdg

#endif  // SPDG_EXTERNAL_PROVIDERS_H_
