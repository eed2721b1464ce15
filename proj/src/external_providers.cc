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

#include "spdg/external_providers.h"

#include <charconv>
#include <sstream>

#include "spdg/denoiser.h"
#include "spdg/errors.h"

namespace spdg {

std::vector<NeSpan> ExternalNer::DoDetect(const Document& doc) const {
  std::vector<HookRecord> request;
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    std::string text;
    for (const Token& t : doc.sentences[s].tokens) {
      if (!text.empty()) text.push_back(' ');
      text += t.surface;
    }
    request.push_back({static_cast<int64_t>(s), std::move(text)});
  }
  std::vector<NeSpan> spans;
  for (const HookRecord& r : ExchangeJsonl(command_, request, timeout_)) {
    std::istringstream in(r.text);
    std::string range;
    while (in >> range) {
      const size_t colon = range.find(':');
      if (colon == std::string::npos) {
        throw HookError("bad entity range '" + range + "'");
      }
      NeSpan span{static_cast<size_t>(r.id), 0, 0};
      const char* mid = range.data() + colon;
      if (std::from_chars(range.data(), mid, span.begin).ec != std::errc() ||
          std::from_chars(mid + 1, range.data() + range.size(), span.end).ec !=
              std::errc()) {
        throw HookError("bad entity range '" + range + "'");
      }
      spans.push_back(span);
    }
  }
  return spans;
}

std::string ExternalTransliterator::DoTransliterate(std::string_view word,
                                                    LanguageId,
                                                    LanguageId) const {
  const auto out =
      ExchangeJsonl(command_, {HookRecord{0, std::string(word)}}, timeout_);
  return out.front().text;
}

}  // namespace spdg
