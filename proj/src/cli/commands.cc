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


#include "cli/commands.h"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "spdg/corpus.h"
#include "spdg/errors.h"
#include "spdg/jsonl.h"
#include "spdg/mix.h"
#include "spdg/mlm.h"
#include "spdg/noiser.h"
#include "spdg/parallel.h"
#include "spdg/spdg.h"
#include "spdg/wbw.h"

namespace spdg::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr Objective kAllObjectives[] = {Objective::kSpdg, Objective::kDenoise,
                                        Objective::kMlm, Objective::kMlmReorder};

std::set<LanguagePair> ParsePairs(const std::string& text) {
  std::set<LanguagePair> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(start, comma - start);
    if (!item.empty()) out.insert(LanguagePair::Parse(item));
    start = comma + 1;
  }
  return out;
}

IngestOptions Ingest(const PipelineConfig& config, size_t limit) {
  return IngestOptions{config.batch_capacity, limit};
}

BatchSource SourceFor(const PipelineConfig& config, LanguageId lang,
                      size_t limit) {
  auto reader = std::make_shared<CorpusReader>(config.corpora.at(lang), lang,
                                               Ingest(config, limit));
  return [reader] { return reader->Next(); };
}

void RecordPairs(const PairWriter& writer, RunStats& stats) {
  for (Objective o : kAllObjectives) {
    stats.pairs[ObjectiveName(o)] = writer.count(o);
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw DataError("cannot write " + path.string());
}

fs::path StatsPath(const fs::path& output) {
  return fs::path(output.string() + ".stats.json");
}

void Finish(RunStats& stats, Clock::time_point start, const fs::path& output) {
  stats.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  WriteText(StatsPath(output), stats.ToJson() + "\n");
  spdlog::info("done in {:.2f}s: {} documents, {} tokens", stats.wall_seconds,
               stats.documents, stats.tokens);
}

void EnsureParent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

// Documents of several languages, alternating one document per language
// until every corpus is exhausted.
class RoundRobinDocuments {
 public:
  RoundRobinDocuments(const PipelineConfig& config,
                      const std::vector<LanguageId>& langs, size_t limit) {
    for (LanguageId lang : langs) {
      streams_.push_back({SourceFor(config, lang, limit), {}, 0, false});
    }
  }

  std::optional<Document> Next() {
    for (size_t tries = 0; tries < streams_.size(); ++tries) {
      Stream& s = streams_[turn_];
      turn_ = (turn_ + 1) % streams_.size();
      if (s.done) continue;
      if (s.pos == s.batch.documents.size()) {
        auto batch = s.source();
        if (!batch) {
          s.done = true;
          continue;
        }
        s.batch = std::move(*batch);
        s.pos = 0;
      }
      return std::move(s.batch.documents[s.pos++]);
    }
    return std::nullopt;
  }

 private:
  struct Stream {
    BatchSource source;
    DocumentBatch batch;
    size_t pos;
    bool done;
  };
  std::vector<Stream> streams_;
  size_t turn_ = 0;
};

// Writes masking pairs for the round-robin document stream, in chunks of
// `chunk` documents processed in parallel. Returns documents and tokens.
std::pair<uint64_t, uint64_t> WriteMaskedPairs(
    RoundRobinDocuments& docs, Objective objective, const PipelineConfig& c,
    PairWriter& writer) {
  uint64_t n_docs = 0, n_tokens = 0;
  std::vector<Document> chunk;
  auto flush = [&] {
    for (const ParallelPair& pair :
         MaskedPairs(chunk, objective, c.mlm, c.seed, c.workers)) {
      writer.Write(pair);
    }
    chunk.clear();
  };
  while (auto doc = docs.Next()) {
    ++n_docs;
    n_tokens += doc->TokenCount();
    chunk.push_back(std::move(*doc));
    if (chunk.size() == c.batch_capacity) flush();
  }
  flush();
  return {n_docs, n_tokens};
}

std::set<LanguagePair> NeededLexicons(
    const PipelineConfig& config,
    const std::vector<LanguagePair>& directions) {
  std::set<LanguagePair> needed;
  for (const LanguagePair& d : directions) {
    needed.merge(LexiconsFor(config, d.src, d.tgt));
  }
  return needed;
}

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("spdg");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("SPDG_LOG"); env != nullptr && *env) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

std::string RunStats::ToJson() const {
  ordered_json j;
  j["documents"] = documents;
  j["tokens"] = tokens;
  j["dropped_tokens"] = dropped_tokens;
  j["dropped_token_rate"] =
      lookup_tokens == 0 ? 0.0
                         : static_cast<double>(dropped_tokens) /
                               static_cast<double>(lookup_tokens);
  ordered_json p = ordered_json::object();
  for (const auto& [name, n] : pairs) p[name] = n;
  j["pairs"] = p;
  if (!blocks.empty()) {
    ordered_json b = ordered_json::object();
    for (const auto& [name, n] : blocks) b[name] = n;
    j["blocks"] = b;
  }
  j["hook_failures"] = hook_failures;
  j["empty_pool_warnings"] = empty_pool_warnings;
  j["wall_seconds"] = wall_seconds;
  j["tokens_per_second"] =
      wall_seconds > 0 ? static_cast<double>(tokens) / wall_seconds : 0.0;
  return j.dump(2);
}

PipelineConfig ResolveConfig(const CommonFlags& flags) {
  PipelineConfig config = LoadConfig(flags.config);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.workers) config.workers = *flags.workers;
  if (flags.output) config.output = *flags.output;
  ValidateConfig(config);
  return config;
}

void RunCalibrate(const CommonFlags& flags,
                  const std::optional<std::string>& tgt) {
  const PipelineConfig config = ResolveConfig(flags);
  const std::set<LanguagePair> filter = ParsePairs(flags.pairs);
  std::vector<LanguageId> targets;
  if (tgt) {
    targets.push_back(LanguageId(*tgt));
  } else {
    targets = config.languages;
  }
  auto allowed = [&](LanguageId s, LanguageId t) {
    return s != t && (filter.empty() || filter.contains({s, t}));
  };
  std::vector<LanguagePair> directions;
  for (LanguageId t : targets) {
    for (const auto& [s, path] : config.corpora) {
      if (allowed(s, t)) directions.push_back({s, t});
    }
  }
  Resources res = LoadResources(config, NeededLexicons(config, directions));
  for (const LanguagePair& d : directions) res.lexicons->Require(d.src, d.tgt);

  // --output names a directory here.
  const fs::path dir =
      flags.output ? *flags.output : config.output.parent_path();
  if (!dir.empty()) fs::create_directories(dir);

  std::vector<CalibrationReport> reports;
  for (LanguageId t : targets) {
    std::vector<BatchSource> sources;
    for (const auto& [s, path] : config.corpora) {
      if (allowed(s, t)) sources.push_back(SourceFor(config, s, flags.limit));
    }
    if (sources.empty()) {
      throw ConfigError("no source corpus can be translated into " + t.str());
    }
    CalibrationReport report =
        Calibrate(sources, t, res.Context(config.seed), config.workers);
    ordered_json j;
    j["lang"] = t.str();
    j["mean"] = report.mean;
    j["std"] = report.std;
    j["documents_seen"] = report.documents_seen;
    j["tokens_seen"] = report.tokens_seen;
    WriteText(dir / ("calibration_" + t.str() + ".json"), j.dump(2) + "\n");
    reports.push_back(report);
  }
  std::printf("%-6s %10s %10s %12s %12s\n", "lang", "mean", "std", "documents",
              "tokens");
  for (const CalibrationReport& r : reports) {
    std::printf("%-6s %10.6f %10.6f %12llu %12llu\n", r.tgt.str().c_str(),
                r.mean, r.std, static_cast<unsigned long long>(r.documents_seen),
                static_cast<unsigned long long>(r.tokens_seen));
  }
}

RunStats RunWbw(const CommonFlags& flags, const std::string& src_code,
                const std::string& tgt_code) {
  const auto start = Clock::now();
  const PipelineConfig config = ResolveConfig(flags);
  const LanguageId src(src_code), tgt(tgt_code);
  if (src == tgt) throw ConfigError("--src and --tgt must differ");
  if (!config.corpora.contains(src)) {
    throw ConfigError("no corpus configured for language " + src.str());
  }
  Resources res = LoadResources(config, LexiconsFor(config, src, tgt));
  res.lexicons->Require(src, tgt);
  const WbwContext ctx = res.Context(config.seed);

  EnsureParent(config.output);
  std::ofstream out(config.output, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot create " + config.output.string());

  RunStats stats;
  BatchSource source = SourceFor(config, src, flags.limit);
  std::vector<WbwResult> results;
  while (auto batch = source()) {
    const auto& docs = batch->documents;
    results.assign(docs.size(), WbwResult{});
    ParallelFor(docs.size(), config.workers, [&](size_t i) {
      results[i] = TranslateDocument(docs[i], tgt, ctx);
    });
    for (size_t i = 0; i < docs.size(); ++i) {
      ordered_json j;
      j["id"] = docs[i].id;
      j["input"] = docs[i].text;
      j["wbw"] = results[i].text;
      j["missing_rate"] = results[i].missing_rate;
      out << j.dump(-1, ' ', false, ordered_json::error_handler_t::replace)
          << '\n';
      stats.tokens += results[i].token_count;
      stats.dropped_tokens += results[i].dropped;
      stats.lookup_tokens += results[i].lookup_denominator;
    }
    stats.documents += docs.size();
    spdlog::info("wbw {}: {} documents", LanguagePair{src, tgt}.str(),
                 stats.documents);
  }
  out.close();
  if (!out) throw DataError("write failed for " + config.output.string());
  Finish(stats, start, config.output);
  return stats;
}

RunStats RunDenoiseData(const CommonFlags& flags, const std::string& code) {
  const auto start = Clock::now();
  const PipelineConfig config = ResolveConfig(flags);
  const LanguageId lang(code);
  if (!config.corpora.contains(lang)) {
    throw ConfigError("no corpus configured for language " + lang.str());
  }
  const NoiseProfile profile = config.ProfileFor(lang);
  CorruptOptions options;
  options.order = config.corruption_order;
  options.seed = config.seed;
  options.workers = config.workers;

  EnsureParent(config.output);
  PairWriter writer(config.output);
  NoiseCounters counters;
  RunStats stats;
  BatchSource source = SourceFor(config, lang, flags.limit);
  while (auto batch = source()) {
    for (const Document& doc : batch->documents) stats.tokens += doc.TokenCount();
    stats.documents += batch->documents.size();
    for (const ParallelPair& pair :
         CorruptBatch(*batch, profile, options, &counters)) {
      writer.Write(pair);
    }
    spdlog::info("denoise {}: {} documents", lang.str(), stats.documents);
  }
  writer.Close();
  RecordPairs(writer, stats);
  stats.empty_pool_warnings = counters.empty_pool_warnings.load();
  Finish(stats, start, config.output);
  return stats;
}

RunStats RunSpdgData(const CommonFlags& flags, bool force_mix) {
  const auto start = Clock::now();
  const PipelineConfig config = ResolveConfig(flags);
  const bool mix = force_mix || config.mix_enabled;
  if (mix && config.mix.total_steps == 0) {
    throw ConfigError("mix.total_steps must be positive when mixing");
  }
  SpdgOptions options;
  options.workers = config.workers;
  options.directions = ParsePairs(flags.pairs);

  std::vector<LanguagePair> directions;
  for (LanguageId s : config.languages) {
    for (LanguageId t : config.languages) {
      if (s != t && options.Allows(s, t)) directions.push_back({s, t});
    }
  }
  Resources res = LoadResources(config, NeededLexicons(config, directions));
  const WbwContext ctx = res.Context(config.seed);

  std::vector<CorpusInput> corpora;
  for (LanguageId lang : config.languages) {
    corpora.push_back({lang, SourceFor(config, lang, flags.limit)});
  }
  // Fail on unresolvable directions before creating any output.
  ValidateMultilingual(corpora, config.languages, *res.lexicons, options);

  EnsureParent(config.output);
  const fs::path spdg_path =
      mix ? fs::path(config.output.string() + ".spdg.part") : config.output;
  SpdgCounters counters;
  RunStats stats;
  {
    PairWriter writer(spdg_path);
    MultilingualSpdg(
        corpora, config.languages, ctx, config.denoiser, options,
        [&](const ParallelPair& pair) {
          writer.Write(pair);
          if (writer.lines() % 10000 == 0) {
            spdlog::info("spdg: {} pairs", writer.lines());
          }
        },
        &counters);
    writer.Close();
    if (!mix) RecordPairs(writer, stats);
  }
  stats.documents = counters.documents.load();
  stats.tokens = counters.tokens.load();
  stats.dropped_tokens = counters.dropped_tokens.load();
  stats.lookup_tokens = counters.lookup_tokens.load();
  stats.hook_failures = counters.hook_failures.load();

  if (mix) {
    const fs::path mlm_path = config.output.string() + ".mlm.part";
    {
      PairWriter mlm_writer(mlm_path);
      RoundRobinDocuments docs(config, config.languages, flags.limit);
      WriteMaskedPairs(docs, config.mix_mlm_objective, config, mlm_writer);
      mlm_writer.Close();
    }
    PairWriter writer(config.output);
    {
      JsonlPairSource spdg_source(spdg_path);
      JsonlPairSource mlm_source(mlm_path);
      Rng rng = Rng::Derive(config.seed, "mix", {});
      MixStats mixed = MixPairs(spdg_source, mlm_source, config.mix, rng,
                                [&](const PairBlock& block) {
                                  for (const ParallelPair& p : block.pairs) {
                                    writer.Write(p);
                                  }
                                });
      stats.blocks["spdg"] = mixed.spdg_blocks;
      stats.blocks["mlm"] = mixed.mlm_blocks;
    }
    writer.Close();
    RecordPairs(writer, stats);
    fs::remove(spdg_path);
    fs::remove(mlm_path);
  }
  Finish(stats, start, config.output);
  return stats;
}

RunStats RunMlmData(const CommonFlags& flags, const std::string& objective_name,
                    const std::optional<std::string>& lang) {
  const auto start = Clock::now();
  const PipelineConfig config = ResolveConfig(flags);
  const Objective objective = ParseObjective(objective_name);
  if (objective != Objective::kMlm && objective != Objective::kMlmReorder) {
    throw ConfigError("--objective must be mlm or mlm_reorder");
  }
  std::vector<LanguageId> langs = config.languages;
  if (lang) {
    LanguageId id(*lang);
    if (!config.corpora.contains(id)) {
      throw ConfigError("no corpus configured for language " + id.str());
    }
    langs = {id};
  }
  EnsureParent(config.output);
  PairWriter writer(config.output);
  RoundRobinDocuments docs(config, langs, flags.limit);
  RunStats stats;
  std::tie(stats.documents, stats.tokens) =
      WriteMaskedPairs(docs, objective, config, writer);
  writer.Close();
  RecordPairs(writer, stats);
  Finish(stats, start, config.output);
  return stats;
}

std::string PairFileSummary(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::map<std::string, uint64_t> per_objective, per_direction;
  for (Objective o : kAllObjectives) per_objective[ObjectiveName(o)] = 0;
  uint64_t lines = 0, input_bytes = 0, output_bytes = 0, violations = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ParallelPair pair = PairFromJsonLine(line);
    ++lines;
    ++per_objective[ObjectiveName(pair.objective)];
    ++per_direction[LanguagePair{pair.src_lang, pair.tgt_lang}.str()];
    input_bytes += pair.input.size();
    output_bytes += pair.output.size();
    if (!PairViolation(pair).empty()) ++violations;
  }
  ordered_json j;
  j["file"] = path.string();
  j["pairs"] = lines;
  j["per_objective"] = per_objective;
  j["per_direction"] = per_direction;
  j["mean_input_bytes"] =
      lines ? static_cast<double>(input_bytes) / lines : 0.0;
  j["mean_output_bytes"] =
      lines ? static_cast<double>(output_bytes) / lines : 0.0;
  j["invariant_violations"] = violations;
  return j.dump(2);
}

int Main(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Pseudo-parallel training data generation"};
  app.require_subcommand(1);

  CommonFlags flags;
  uint64_t seed = 0;
  size_t workers = 0;
  std::string output;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", flags.config, "JSON run configuration")
        ->required();
    cmd->add_option("--seed", seed, "random seed (overrides config)");
    cmd->add_option("--workers", workers, "worker threads (overrides config)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--output", output, "output path (overrides config)");
    cmd->add_option("--pairs", flags.pairs,
                    "comma-separated directions to generate, e.g. en-fr,fr-en");
    cmd->add_option("--limit", flags.limit, "max documents per corpus");
  };

  std::optional<std::string> calib_tgt;
  auto* calibrate = app.add_subcommand(
      "calibrate", "measure word-by-word missing rates per target language");
  add_common(calibrate);
  calibrate->add_option("--tgt", calib_tgt, "only this target language");

  std::string wbw_src, wbw_tgt;
  auto* wbw = app.add_subcommand("wbw", "word-by-word translate a corpus");
  add_common(wbw);
  wbw->add_option("--src", wbw_src)->required();
  wbw->add_option("--tgt", wbw_tgt)->required();

  std::string denoise_lang;
  auto* denoise = app.add_subcommand("denoise-data",
                                     "corrupt a corpus into denoising pairs");
  add_common(denoise);
  denoise->add_option("--lang", denoise_lang)->required();

  bool force_mix = false;
  auto* spdg_cmd = app.add_subcommand(
      "spdg-data", "generate pseudo-parallel pairs for every language pair");
  add_common(spdg_cmd);
  spdg_cmd->add_flag("--mix", force_mix,
                     "mix with masking pairs per the mix schedule");

  std::string mlm_objective = "mlm";
  std::optional<std::string> mlm_lang;
  auto* mlm = app.add_subcommand("mlm-data", "generate span-masking pairs");
  add_common(mlm);
  mlm->add_option("--objective", mlm_objective, "mlm or mlm_reorder");
  mlm->add_option("--lang", mlm_lang, "only this language");

  std::string stats_file;
  auto* stats = app.add_subcommand("stats", "summarize a pair file");
  stats->add_option("file", stats_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (app.get_subcommand_ptr("stats")->parsed() == false) {
    for (CLI::App* cmd : app.get_subcommands()) {
      if (cmd->count("--seed")) flags.seed = seed;
      if (cmd->count("--workers")) flags.workers = workers;
      if (cmd->count("--output")) flags.output = output;
    }
  }

  try {
    if (calibrate->parsed()) {
      RunCalibrate(flags, calib_tgt);
    } else if (wbw->parsed()) {
      RunWbw(flags, wbw_src, wbw_tgt);
    } else if (denoise->parsed()) {
      RunDenoiseData(flags, denoise_lang);
    } else if (spdg_cmd->parsed()) {
      RunSpdgData(flags, force_mix);
    } else if (mlm->parsed()) {
      RunMlmData(flags, mlm_objective, mlm_lang);
    } else if (stats->parsed()) {
      std::cout << PairFileSummary(stats_file) << '\n';
    }
  } catch (const ConfigError& e) {
    spdlog::error("configuration error: {}", e.what());
    return 2;
  } catch (const DataError& e) {
    spdlog::error("data error: {}", e.what());
    return 3;
  } catch (const HookError& e) {
    spdlog::error("hook error: {}", e.what());
    return 3;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("i/o error: {}", e.what());
    return 3;
  }
  return 0;
}

}  // namespace spdg::cli
