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


#include "spdg/mix.h"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "spdg/errors.h"
#include "spdg/jsonl.h"

namespace spdg {

std::optional<ParallelPair> VectorPairSource::Next() {
  if (pos_ >= pairs_.size()) return std::nullopt;
  return pairs_[pos_++];
}

JsonlPairSource::JsonlPairSource(std::filesystem::path path)
    : path_(std::move(path)), in_(path_, std::ios::binary) {
  if (!in_) throw DataError("cannot open " + path_.string());
}

std::optional<ParallelPair> JsonlPairSource::Next() {
  while (std::getline(in_, line_)) {
    if (line_.empty()) continue;
    return PairFromJsonLine(line_);
  }
  return std::nullopt;
}

void JsonlPairSource::Rewind() {
  in_.clear();
  in_.seekg(0);
}

void MixSchedule::Validate() const {
  if (!(spdg_fraction >= 0.0 && spdg_fraction <= 1.0)) {
    throw ConfigError("mix.spdg_fraction must lie in [0, 1]");
  }
  if (batch_size == 0) throw ConfigError("mix.batch_size must be positive");
}

size_t MixSchedule::SpdgBlocks() const {
  return static_cast<size_t>(
      std::llround(spdg_fraction * static_cast<double>(total_steps)));
}

std::vector<bool> PlanBlocks(const MixSchedule& schedule, Rng& rng) {
  schedule.Validate();
  std::vector<bool> plan(schedule.total_steps);
  if (schedule.interleaved) {
    for (size_t i = 0; i < plan.size(); ++i) {
      plan[i] = rng.Bernoulli(schedule.spdg_fraction);
    }
  } else {
    const size_t n = std::min(schedule.SpdgBlocks(), plan.size());
    for (size_t i = 0; i < n; ++i) plan[i] = true;
  }
  return plan;
}

namespace {

ParallelPair Draw(PairSource& source, const char* name, uint64_t& epochs) {
  if (auto pair = source.Next()) return std::move(*pair);
  source.Rewind();
  ++epochs;
  spdlog::info("{} stream exhausted, starting epoch {}", name, epochs + 1);
  if (auto pair = source.Next()) return std::move(*pair);
  throw DataError(std::string(name) + " stream is empty");
}

}  // namespace

MixStats MixPairs(PairSource& spdg, PairSource& mlm,
                  const MixSchedule& schedule, Rng& rng,
                  const std::function<void(const PairBlock&)>& sink) {
  MixStats stats;
  const std::vector<bool> plan = PlanBlocks(schedule, rng);
  PairBlock block;
  for (size_t step = 0; step < plan.size(); ++step) {
    block.step = step;
    block.spdg = plan[step];
    block.pairs.clear();
    for (size_t i = 0; i < schedule.batch_size; ++i) {
      block.pairs.push_back(plan[step] ? Draw(spdg, "spdg", stats.spdg_epochs)
                                       : Draw(mlm, "mlm", stats.mlm_epochs));
    }
    ++(plan[step] ? stats.spdg_blocks : stats.mlm_blocks);
    sink(block);
  }
  return stats;
}

}  // namespace spdg
