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


// Objective mixing: a run of training steps, each a block of pairs drawn
// from either the SPDG stream or the MLM stream.

#ifndef SPDG_MIX_H_
#define SPDG_MIX_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spdg/corpus.h"
#include "spdg/rng.h"

namespace spdg {

// A rewindable stream of pairs.
class PairSource {
 public:
  virtual ~PairSource() = default;
  virtual std::optional<ParallelPair> Next() = 0;
  virtual void Rewind() = 0;
};

class VectorPairSource : public PairSource {
 public:
  explicit VectorPairSource(std::vector<ParallelPair> pairs)
      : pairs_(std::move(pairs)) {}

  std::optional<ParallelPair> Next() override;
  void Rewind() override { pos_ = 0; }

 private:
  std::vector<ParallelPair> pairs_;
  size_t pos_ = 0;
};

// Reads pairs lazily from a JSONL file.
class JsonlPairSource : public PairSource {
 public:
  // Throws DataError if the file cannot be opened.
  explicit JsonlPairSource(std::filesystem::path path);

  std::optional<ParallelPair> Next() override;
  void Rewind() override;

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::string line_;
};

struct MixSchedule {
  double spdg_fraction = 0.75;
  size_t total_steps = 0;
  size_t batch_size = 1;
  // Per-block Bernoulli(spdg_fraction) instead of a phase split.
  bool interleaved = false;

  // Throws ConfigError unless 0 <= spdg_fraction <= 1 and batch_size >= 1.
  void Validate() const;

  // round(spdg_fraction * total_steps).
  size_t SpdgBlocks() const;
};

// Which stream each block draws from (true = SPDG). Phase split: the first
// SpdgBlocks() entries are true. `rng` is only consumed when interleaved.
std::vector<bool> PlanBlocks(const MixSchedule& schedule, Rng& rng);

struct PairBlock {
  size_t step = 0;
  bool spdg = true;
  std::vector<ParallelPair> pairs;
};

struct MixStats {
  uint64_t spdg_blocks = 0;
  uint64_t mlm_blocks = 0;
  // Number of times each stream wrapped around to its start.
  uint64_t spdg_epochs = 0;
  uint64_t mlm_epochs = 0;
};

// Emits total_steps blocks of batch_size pairs in step order. An exhausted
// stream is rewound (and the wrap logged); a stream that is empty even after
// rewinding throws DataError.
MixStats MixPairs(PairSource& spdg, PairSource& mlm,
                  const MixSchedule& schedule, Rng& rng,
                  const std::function<void(const PairBlock&)>& sink);

}  // namespace spdg

#endif  // SPDG_MIX_H_
