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


#include "cli/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "spdg/errors.h"
#include "spdg/external_providers.h"

namespace spdg::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::set<std::string> kTopLevelKeys = {
    "languages",  "corpora",         "lexicons",   "pivot",
    "batch_capacity", "seed",        "workers",    "gazetteer",
    "ner",        "transliteration", "noise_profiles", "corruption_order",
    "denoiser",   "mlm",             "mix",        "output"};

void CheckKeys(const json& j, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::chrono::milliseconds Seconds(double secs, const std::string& where) {
  if (!(secs > 0)) throw ConfigError(where + ".timeout_secs must be positive");
  return std::chrono::milliseconds(std::llround(secs * 1000.0));
}

ExternalCommand ParseCommand(const json& j, const std::string& where) {
  CheckKeys(j, {"command", "timeout_secs"}, where);
  ExternalCommand cmd;
  cmd.command = j.at("command").get<std::string>();
  if (cmd.command.empty()) throw ConfigError(where + ".command is empty");
  if (j.contains("timeout_secs")) {
    cmd.timeout = Seconds(j["timeout_secs"].get<double>(), where);
  }
  return cmd;
}

NoiseProfile ParseProfile(const json& j, LanguageId lang) {
  const std::string where = "noise_profiles." + lang.str();
  CheckKeys(j,
            {"remove_mean", "remove_std", "add_min", "add_max", "sub_min",
             "sub_max"},
            where);
  // Unspecified fields inherit the built-in profile (or zero).
  NoiseProfile p = NoiseProfile::Default(lang).value_or(NoiseProfile::Zero(lang));
  auto read = [&](const char* key, double& field) {
    if (j.contains(key)) field = j[key].get<double>();
  };
  read("remove_mean", p.remove_mean);
  read("remove_std", p.remove_std);
  read("add_min", p.add_min);
  read("add_max", p.add_max);
  read("sub_min", p.sub_min);
  read("sub_max", p.sub_max);
  p.Validate();
  return p;
}

PipelineConfig ParseJson(const json& j, const fs::path& base) {
  CheckKeys(j, kTopLevelKeys, "config");
  PipelineConfig c;
  for (const auto& lang : j.at("languages")) {
    LanguageId id(lang.get<std::string>());
    if (std::find(c.languages.begin(), c.languages.end(), id) !=
        c.languages.end()) {
      throw ConfigError("language " + id.str() + " listed twice");
    }
    c.languages.push_back(id);
  }
  if (j.contains("corpora")) {
    for (const auto& [lang, path] : j["corpora"].items()) {
      c.corpora[LanguageId(lang)] = Resolve(base, path.get<std::string>());
    }
  }
  if (j.contains("lexicons")) {
    for (const auto& [pair, path] : j["lexicons"].items()) {
      c.lexicons[LanguagePair::Parse(pair)] =
          Resolve(base, path.get<std::string>());
    }
  }
  if (j.contains("pivot")) c.pivot = LanguageId(j["pivot"].get<std::string>());
  if (j.contains("batch_capacity")) {
    c.batch_capacity = j["batch_capacity"].get<size_t>();
  }
  if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
  if (j.contains("workers")) c.workers = j["workers"].get<size_t>();
  if (j.contains("gazetteer")) {
    c.gazetteer = Resolve(base, j["gazetteer"].get<std::string>());
  }
  if (j.contains("ner")) c.ner = ParseCommand(j["ner"], "ner");
  if (j.contains("transliteration")) {
    c.transliteration = ParseCommand(j["transliteration"], "transliteration");
  }
  if (j.contains("noise_profiles")) {
    for (const auto& [lang, profile] : j["noise_profiles"].items()) {
      LanguageId id(lang);
      c.noise_profiles.emplace(id, ParseProfile(profile, id));
    }
  }
  if (j.contains("corruption_order")) {
    c.corruption_order.clear();
    for (const auto& op : j["corruption_order"]) {
      c.corruption_order.push_back(ParseCorruptionOp(op.get<std::string>()));
    }
  }
  if (j.contains("denoiser") && !j["denoiser"].is_null()) {
    const json& d = j["denoiser"];
    CheckKeys(d, {"command", "timeout_secs"}, "denoiser");
    std::string command = d.value("command", std::string());
    if (!command.empty()) {
      ExternalCommand cmd = ParseCommand(d, "denoiser");
      c.denoiser = DenoiserHook::External(cmd.command, cmd.timeout);
    }
  }
  if (j.contains("mlm")) {
    const json& m = j["mlm"];
    CheckKeys(m,
              {"mask_ratio", "mean_span_length", "sentinel_format",
               "reorder_mask_token"},
              "mlm");
    c.mlm.mask_ratio = m.value("mask_ratio", c.mlm.mask_ratio);
    c.mlm.mean_span_length = m.value("mean_span_length", c.mlm.mean_span_length);
    c.mlm.sentinel_format = m.value("sentinel_format", c.mlm.sentinel_format);
    c.mlm.reorder_mask_token =
        m.value("reorder_mask_token", c.mlm.reorder_mask_token);
  }
  if (j.contains("mix")) {
    const json& m = j["mix"];
    CheckKeys(m,
              {"enabled", "spdg_fraction", "total_steps", "batch_size",
               "interleaved", "mlm_objective"},
              "mix");
    c.mix_enabled = m.value("enabled", false);
    c.mix.spdg_fraction = m.value("spdg_fraction", c.mix.spdg_fraction);
    c.mix.total_steps = m.value("total_steps", c.mix.total_steps);
    c.mix.batch_size = m.value("batch_size", c.mix.batch_size);
    c.mix.interleaved = m.value("interleaved", c.mix.interleaved);
    if (m.contains("mlm_objective")) {
      c.mix_mlm_objective =
          ParseObjective(m["mlm_objective"].get<std::string>());
    }
  }
  if (j.contains("output")) {
    c.output = Resolve(base, j["output"].get<std::string>());
  }
  return c;
}

}  // namespace

NoiseProfile PipelineConfig::ProfileFor(LanguageId lang) const {
  if (auto it = noise_profiles.find(lang); it != noise_profiles.end()) {
    return it->second;
  }
  if (auto p = NoiseProfile::Default(lang)) return *p;
  throw ConfigError("no noise profile for language " + lang.str());
}

PipelineConfig ParseConfig(const std::string& json_text,
                           const fs::path& base_dir) {
  json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  try {
    return ParseJson(j, base_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
}

PipelineConfig LoadConfig(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str(), path.parent_path());
}

void ValidateConfig(const PipelineConfig& c) {
  if (c.languages.empty()) throw ConfigError("languages is empty");
  if (c.batch_capacity == 0) throw ConfigError("batch_capacity must be >= 1");
  if (c.workers == 0) throw ConfigError("workers must be >= 1");
  for (LanguageId lang : c.languages) {
    auto it = c.corpora.find(lang);
    if (it == c.corpora.end()) {
      throw ConfigError("no corpus configured for language " + lang.str());
    }
  }
  for (const auto& [lang, path] : c.corpora) {
    if (!fs::is_regular_file(path)) {
      throw ConfigError("corpus for " + lang.str() + " not found: " +
                        path.string());
    }
  }
  for (const auto& [pair, path] : c.lexicons) {
    if (!fs::is_regular_file(path)) {
      throw ConfigError("lexicon for " + pair.str() + " not found: " +
                        path.string());
    }
  }
  if (c.gazetteer && !fs::is_regular_file(*c.gazetteer)) {
    throw ConfigError("gazetteer not found: " + c.gazetteer->string());
  }
  for (const auto& [lang, profile] : c.noise_profiles) profile.Validate();
  c.mlm.Validate();
  c.mix.Validate();
  if (c.mix_enabled && c.mix.total_steps == 0) {
    throw ConfigError("mix.total_steps must be positive when mixing");
  }
  if (c.mix_mlm_objective != Objective::kMlm &&
      c.mix_mlm_objective != Objective::kMlmReorder) {
    throw ConfigError("mix.mlm_objective must be mlm or mlm_reorder");
  }
}

std::set<LanguagePair> LexiconsFor(const PipelineConfig& config,
                                   LanguageId src, LanguageId tgt) {
  if (config.lexicons.contains({src, tgt})) return {{src, tgt}};
  std::set<LanguagePair> out;
  if (src != config.pivot && tgt != config.pivot &&
      config.lexicons.contains({src, config.pivot}) &&
      config.lexicons.contains({config.pivot, tgt})) {
    out.insert({src, config.pivot});
    out.insert({config.pivot, tgt});
  }
  return out;
}

Resources LoadResources(const PipelineConfig& config,
                        const std::set<LanguagePair>& needed) {
  Resources r;
  r.lexicons = std::make_unique<LexiconSet>(config.pivot);
  for (const auto& [pair, path] : config.lexicons) {
    if (!needed.empty() && !needed.contains(pair)) continue;
    Lexicon lexicon = LoadLexicon(path, pair.src, pair.tgt);
    spdlog::info("lexicon {}: {} entries ({} malformed lines)", pair.str(),
                 lexicon.size(), lexicon.malformed_lines());
    r.lexicons->Add(std::move(lexicon));
  }
  if (config.ner) {
    r.ner = std::make_unique<ExternalNer>(config.ner->command,
                                          config.ner->timeout);
  } else if (config.gazetteer) {
    r.ner = GazetteerNer::Load(*config.gazetteer);
  } else {
    r.ner = std::make_unique<NullNer>();
  }
  if (config.transliteration) {
    r.transliterator = std::make_unique<ExternalTransliterator>(
        config.transliteration->command, config.transliteration->timeout);
  } else {
    r.transliterator = std::make_unique<DefaultTransliterator>();
  }
  return r;
}

}  // namespace spdg::cli
