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


// JSONL serialization of training pairs.

#ifndef SPDG_JSONL_H_
#define SPDG_JSONL_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "spdg/corpus.h"

namespace spdg {

// {"id","src_lang","tgt_lang","input","output","objective"}, no trailing
// newline. Invalid UTF-8 is replaced with U+FFFD.
std::string PairToJsonLine(const ParallelPair& pair);

// Throws DataError on malformed JSON, missing keys, or bad language codes.
ParallelPair PairFromJsonLine(std::string_view line);

// Serialized, line-buffered pair output that tracks per-objective counts.
class PairWriter {
 public:
  // Throws DataError if the file cannot be created.
  explicit PairWriter(const std::filesystem::path& path);

  void Write(const ParallelPair& pair);
  // Flushes and closes; throws DataError on I/O failure.
  void Close();

  uint64_t lines() const { return lines_; }
  uint64_t count(Objective objective) const {
    return per_objective_[static_cast<size_t>(objective)];
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  uint64_t lines_ = 0;
  std::array<uint64_t, 4> per_objective_{};
};

}  // namespace spdg

#endif  // SPDG_JSONL_H_
