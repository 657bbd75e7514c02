// Copyright 2026 The Castellan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "report/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace castellan {

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  if (Trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (item.empty()) Fail(ErrorCode::kParse, "empty list item in '" + text + "'");
    out.push_back(item);
  }
  return out;
}

const std::map<std::string, std::vector<std::string>>& KeyTable() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"folner",
       {"group.d", "group.kind", "params.k", "params.epsilon", "params.cap"}},
      {"castle-l33",
       {"group.d", "group.states", "group.random", "params.s",
        "params.epsilon", "params.y", "params.z"}},
      {"castle-t34",
       {"group.d", "group.states", "params.k", "params.epsilon",
        "params.delta", "params.folner_cap", "params.ladder_cap",
        "params.essfree_g", "params.essfree_eps"}},
      {"joseph-build",
       {"group.d", "params.gammas", "params.prime_floor",
        "params.product_floor", "params.state_cap", "params.label_trials"}},
      {"fixed-fractions",
       {"group.d", "params.gammas", "params.probes", "params.prime_floor",
        "params.product_floor", "params.state_cap"}},
      {"zstab-witness",
       {"group.d", "params.n", "params.epsilon", "params.f_gammas",
        "params.f_prime_floor", "params.lambda0", "params.s0_states",
        "params.a_states", "params.state_cap", "params.max_gammas",
        "params.prime_cap", "params.defect_m"}},
  };
  return table;
}

}  // namespace

std::int64_t ParseInt(const std::string& text) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    Fail(ErrorCode::kParse, "malformed integer '" + text + "'");
  }
  return v;
}

const std::vector<std::string>& PipelineNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, keys] : KeyTable()) out.push_back(name);
    return out;
  }();
  return names;
}

const std::vector<std::string>& AllowedKeys(const std::string& pipeline) {
  const auto it = KeyTable().find(pipeline);
  if (it == KeyTable().end()) {
    Fail(ErrorCode::kParse, "unknown pipeline '" + pipeline + "'");
  }
  return it->second;
}

ExperimentConfig ExperimentConfig::Parse(const std::string& text) {
  ExperimentConfig cfg;
  std::map<std::string, std::string> raw;
  std::stringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    line = Trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        Fail(ErrorCode::kParse, where + "malformed section header");
      }
      section = Trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) Fail(ErrorCode::kParse, where + "expected key = value");
    if (section.empty()) Fail(ErrorCode::kParse, where + "entry outside a section");
    const std::string key = section + "." + Trim(line.substr(0, eq));
    if (!raw.emplace(key, Trim(line.substr(eq + 1))).second) {
      Fail(ErrorCode::kParse, where + "duplicate key " + key);
    }
  }
  const auto pipe = raw.find("run.pipeline");
  if (pipe == raw.end()) Fail(ErrorCode::kParse, "missing run.pipeline");
  cfg.pipeline_ = pipe->second;
  const auto& allowed = AllowedKeys(cfg.pipeline_);
  for (const auto& [key, value] : raw) {
    if (key == "run.pipeline") continue;
    if (key == "run.rng_seed") {
      const std::int64_t seed = ParseInt(value);
      if (seed < 0) Fail(ErrorCode::kParse, "rng_seed must be nonnegative");
      cfg.rng_seed_ = static_cast<std::uint64_t>(seed);
      continue;
    }
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Fail(ErrorCode::kParse,
           "unknown key " + key + " for pipeline " + cfg.pipeline_);
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

const std::string* ExperimentConfig::Find(const std::string& key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

namespace {

[[noreturn]] void Missing(const std::string& key) {
  Fail(ErrorCode::kParse, "missing required key " + key);
}

}  // namespace

std::string ExperimentConfig::GetString(
    const std::string& key, const std::optional<std::string>& fallback) const {
  if (const auto* v = Find(key)) return *v;
  if (!fallback) Missing(key);
  return *fallback;
}

std::int64_t ExperimentConfig::GetInt(const std::string& key,
                                      std::optional<std::int64_t> fallback) const {
  if (const auto* v = Find(key)) return ParseInt(*v);
  if (!fallback) Missing(key);
  return *fallback;
}

bool ExperimentConfig::GetBool(const std::string& key,
                               std::optional<bool> fallback) const {
  if (const auto* v = Find(key)) {
    if (*v == "true") return true;
    if (*v == "false") return false;
    Fail(ErrorCode::kParse, "expected true or false for " + key);
  }
  if (!fallback) Missing(key);
  return *fallback;
}

Rational ExperimentConfig::GetRational(
    const std::string& key, const std::optional<Rational>& fallback) const {
  if (const auto* v = Find(key)) return ParseRational(*v);
  if (!fallback) Missing(key);
  return *fallback;
}

std::vector<std::int64_t> ExperimentConfig::GetIntList(
    const std::string& key,
    const std::optional<std::vector<std::int64_t>>& fallback) const {
  if (const auto* v = Find(key)) {
    std::vector<std::int64_t> out;
    for (const auto& item : SplitList(*v)) out.push_back(ParseInt(item));
    return out;
  }
  if (!fallback) Missing(key);
  return *fallback;
}

std::vector<WreathElem> ExperimentConfig::GetElemList(
    const std::string& key, std::size_t d,
    const std::optional<std::vector<WreathElem>>& fallback) const {
  if (const auto* v = Find(key)) {
    std::vector<WreathElem> out;
    for (const auto& item : SplitList(*v)) {
      try {
        out.push_back(ParseElem(item, d));
      } catch (const Error& e) {
        Fail(ErrorCode::kParse, key + ": " + e.what());
      }
    }
    return out;
  }
  if (!fallback) Missing(key);
  return *fallback;
}

}  // namespace castellan
