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


#include "spdg/jsonl.h"

#include "json.hpp"
#include "spdg/errors.h"

namespace spdg {

using nlohmann::json;

std::string PairToJsonLine(const ParallelPair& pair) {
  // Ordered object so the key order is stable across library versions.
  nlohmann::ordered_json j;
  j["id"] = pair.doc_id;
  j["src_lang"] = pair.src_lang.str();
  j["tgt_lang"] = pair.tgt_lang.str();
  j["input"] = pair.input;
  j["output"] = pair.output;
  j["objective"] = ObjectiveName(pair.objective);
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

ParallelPair PairFromJsonLine(std::string_view line) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw DataError("malformed pair line");
  }
  auto field = [&](const char* key) -> std::string {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
      throw DataError(std::string("pair line lacks string field '") + key +
                      "'");
    }
    return it->get<std::string>();
  };
  ParallelPair pair;
  pair.doc_id = field("id");
  try {
    pair.src_lang = LanguageId(field("src_lang"));
    pair.tgt_lang = LanguageId(field("tgt_lang"));
    pair.objective = ParseObjective(field("objective"));
  } catch (const ConfigError& e) {
    throw DataError(std::string("bad pair line: ") + e.what());
  }
  pair.input = field("input");
  pair.output = field("output");
  return pair;
}

PairWriter::PairWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw DataError("cannot create " + path.string());
}

void PairWriter::Write(const ParallelPair& pair) {
  out_ << PairToJsonLine(pair) << '\n';
  ++lines_;
  ++per_objective_[static_cast<size_t>(pair.objective)];
}

void PairWriter::Close() {
  if (!out_.is_open()) return;
  out_.flush();
  bool ok = static_cast<bool>(out_);
  out_.close();
  if (!ok) throw DataError("write failed for " + path_.string());
}

}  // namespace spdg
