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

#ifndef CASTELLAN_REPORT_INPUTS_HPP_
#define CASTELLAN_REPORT_INPUTS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "castles/multiscale.hpp"
#include "dynamics/folner.hpp"
#include "report/config.hpp"
#include "report/serialize.hpp"
#include "zstab/witness.hpp"

namespace castellan {

// Typed views of the certificate "inputs" object. Both run and verify go
// through FromJson, so the two paths read inputs identically.
struct FolnerInputs {
  std::size_t d = 1;
  GroupKind kind = GroupKind::kIntegers;
  ElemSet k;
  Rational eps;
  std::int64_t cap = 4096;
  static FolnerInputs FromJson(const Json& j);
};

struct L33Inputs {
  std::size_t states = 0;
  bool random = false;
  std::optional<std::uint64_t> seed;
  ElemSet s;
  Rational eps;
  std::vector<State> y;
  bool z_nonfree = true;
  std::vector<State> z;
  FinAction Action() const;
  static L33Inputs FromJson(const Json& j);
};

struct T34Inputs {
  std::size_t states = 0;
  MultiscaleParams params;
  std::optional<WreathElem> essfree_g;
  Rational essfree_eps;
  FinAction Action() const;
  static T34Inputs FromJson(const Json& j);
};

struct JosephInputs {
  std::size_t d = 1;
  std::vector<WreathElem> gammas;
  std::int64_t prime_floor = 1;
  Rational product_floor;
  std::uint64_t state_cap = 1000000;
  std::int64_t label_trials = 0;
  std::optional<std::uint64_t> seed;
  static JosephInputs FromJson(const Json& j);
};

struct FixedFractionInputs {
  std::size_t d = 1;
  std::vector<WreathElem> gammas;
  std::vector<WreathElem> probes;
  std::int64_t prime_floor = 1;
  Rational product_floor;
  std::uint64_t state_cap = 1000000;
  static FixedFractionInputs FromJson(const Json& j);
};

struct ZstabInputs {
  WitnessSpec spec;
  std::vector<std::int64_t> defect_m;
  static ZstabInputs FromJson(const Json& j);
};

// Reads the config, applies defaults and returns the canonical inputs
// object (which is then parsed back through FromJson).
Json InputsFromConfig(const ExperimentConfig& cfg);

// Keys that only bound resources; they carry no mathematical claim.
bool IsResourceKey(const std::string& key);

}  // namespace castellan

#endif  // CASTELLAN_REPORT_INPUTS_HPP_
