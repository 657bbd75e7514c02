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

#ifndef CASTELLAN_REPORT_CONFIG_HPP_
#define CASTELLAN_REPORT_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common/rational.hpp"
#include "group_core/wreath.hpp"

namespace castellan {

// Experiment configuration. Grammar, one item per line:
//
//   line    := blank | comment | section | entry
//   comment := ('#' | ';') any*
//   section := '[' name ']'
//   entry   := key '=' value
//
// Keys are addressed as "section.key". Values stay text until a typed
// getter reads them; lists are comma separated. Duplicate keys, entries
// before the first section and keys the pipeline does not know are parse
// errors.
class ExperimentConfig {
 public:
  static ExperimentConfig Parse(const std::string& text);
  static ExperimentConfig Load(const std::string& path);

  const std::string& pipeline() const { return pipeline_; }
  std::optional<std::uint64_t> rng_seed() const { return rng_seed_; }

  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  std::string GetString(const std::string& key,
                        const std::optional<std::string>& fallback = {}) const;
  std::int64_t GetInt(const std::string& key,
                      std::optional<std::int64_t> fallback = {}) const;
  bool GetBool(const std::string& key, std::optional<bool> fallback = {}) const;
  Rational GetRational(const std::string& key,
                       const std::optional<Rational>& fallback = {}) const;
  std::vector<std::int64_t> GetIntList(
      const std::string& key,
      const std::optional<std::vector<std::int64_t>>& fallback = {}) const;
  std::vector<WreathElem> GetElemList(
      const std::string& key, std::size_t d,
      const std::optional<std::vector<WreathElem>>& fallback = {}) const;

 private:
  const std::string* Find(const std::string& key) const;

  std::string pipeline_;
  std::optional<std::uint64_t> rng_seed_;
  std::map<std::string, std::string> values_;
};

// Keys accepted for a pipeline, run.* included.
const std::vector<std::string>& AllowedKeys(const std::string& pipeline);
const std::vector<std::string>& PipelineNames();

std::int64_t ParseInt(const std::string& text);

}  // namespace castellan

#endif  // CASTELLAN_REPORT_CONFIG_HPP_
