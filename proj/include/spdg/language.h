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

#ifndef SPDG_LANGUAGE_H_
#define SPDG_LANGUAGE_H_

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "spdg/errors.h"

namespace spdg {

// Two-letter lowercase ASCII language code ("en", "fr", "de").
class LanguageId {
 public:
  LanguageId() = default;

  // Throws ConfigError unless `code` is exactly two lowercase ASCII letters.
  explicit LanguageId(std::string_view code) {
    if (!IsValid(code)) {
      throw ConfigError("invalid language id '" + std::string(code) +
                        "': expected two lowercase ASCII letters");
    }
    code_ = {code[0], code[1]};
  }

  static bool IsValid(std::string_view code) {
    return code.size() == 2 && code[0] >= 'a' && code[0] <= 'z' &&
           code[1] >= 'a' && code[1] <= 'z';
  }

  std::string_view code() const { return {code_.data(), code_.size()}; }
  std::string str() const { return std::string(code()); }

  friend auto operator<=>(const LanguageId&, const LanguageId&) = default;

 private:
  std::array<char, 2> code_ = {'e', 'n'};
};

// Ordered (source, target) language pair, rendered as "src-tgt".
struct LanguagePair {
  LanguageId src;
  LanguageId tgt;

  std::string str() const { return src.str() + "-" + tgt.str(); }

  // Parses "en-fr". Throws ConfigError on malformed input.
  static LanguagePair Parse(std::string_view text) {
    if (text.size() != 5 || text[2] != '-') {
      throw ConfigError("invalid language pair '" + std::string(text) +
                        "': expected <src>-<tgt>, e.g. en-fr");
    }
    return {LanguageId(text.substr(0, 2)), LanguageId(text.substr(3, 2))};
  }

  friend auto operator<=>(const LanguagePair&, const LanguagePair&) = default;
};

}  // namespace spdg

template <>
struct std::hash<spdg::LanguageId> {
  size_t operator()(const spdg::LanguageId& id) const noexcept {
    return std::hash<std::string_view>()(id.code());
  }
};

#endif  // SPDG_LANGUAGE_H_
