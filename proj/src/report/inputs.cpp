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

#include "report/inputs.hpp"

#include <set>

#include "common/error.hpp"
#include "dynamics/action_json.hpp"
#include "group_core/elem_json.hpp"

namespace castellan {

namespace {

constexpr std::int64_t kMaxStates = std::int64_t{1} << 22;

void ExactKeys(const Json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) Fail(ErrorCode::kSchema, "inputs must be an object");
  std::set<std::string> want(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    if (!want.count(key)) Fail(ErrorCode::kSchema, "unexpected input '" + key + "'");
  }
  for (const auto& key : want) Field(j, key);
}

std::size_t Dim(const Json& j) {
  const std::int64_t d = IntField(j, "d");
  if (d < 1 || d > 8) Fail(ErrorCode::kSchema, "d must lie in 1..8");
  return static_cast<std::size_t>(d);
}

std::size_t States(const Json& j) {
  const std::int64_t n = IntField(j, "states");
  if (n < 1 || n > kMaxStates) Fail(ErrorCode::kSchema, "states out of range");
  return static_cast<std::size_t>(n);
}

std::optional<std::uint64_t> Seed(const Json& j) {
  const Json& v = Field(j, "rng_seed");
  if (v.is_null()) return std::nullopt;
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    Fail(ErrorCode::kSchema, "rng_seed must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

Rational PositiveBelowOne(const Json& j, const std::string& key) {
  const Rational r = RationalField(j, key);
  if (!(r > 0 && r < 1)) Fail(ErrorCode::kSchema, key + " must lie in (0, 1)");
  return r;
}

std::int64_t Positive(const Json& j, const std::string& key) {
  const std::int64_t v = IntField(j, key);
  if (v < 1) Fail(ErrorCode::kSchema, key + " must be positive");
  return v;
}

std::vector<WreathElem> Elems(const Json& j, const std::string& key,
                              std::size_t d) {
  return ElemSetFromJson(Field(j, key), d);
}

Json ElemsJson(const std::vector<WreathElem>& v) { return ElemSetToJson(v); }

void RequireIntegerAction(const Json& j) {
  if (IntField(j, "d") != 1) {
    Fail(ErrorCode::kSchema, "castle pipelines act through Z; d must be 1");
  }
}

}  // namespace

bool IsResourceKey(const std::string& key) {
  static const std::set<std::string> keys = {
      "cap", "folner_cap", "ladder_cap", "state_cap", "max_gammas", "prime_cap"};
  return keys.count(key) > 0;
}

FolnerInputs FolnerInputs::FromJson(const Json& j) {
  ExactKeys(j, {"d", "kind", "k", "epsilon", "cap"});
  FolnerInputs in;
  in.d = Dim(j);
  try {
    in.kind = ParseGroupKind(StringField(j, "kind"));
  } catch (const Error& e) {
    Fail(ErrorCode::kSchema, e.what());
  }
  in.k = MakeElemSet(Elems(j, "k", in.d));
  if (in.k.empty()) Fail(ErrorCode::kSchema, "K is empty");
  if (in.k.size() > 16) Fail(ErrorCode::kSchema, "K has more than 16 elements");
  in.eps = PositiveBelowOne(j, "epsilon");
  in.cap = Positive(j, "cap");
  return in;
}

FinAction L33Inputs::Action() const {
  return random ? RandomIntegerAction(states, *seed) : FinAction::Cyclic(states);
}

L33Inputs L33Inputs::FromJson(const Json& j) {
  ExactKeys(j, {"d", "states", "random", "rng_seed", "s", "epsilon", "y", "z"});
  RequireIntegerAction(j);
  L33Inputs in;
  in.states = States(j);
  in.random = BoolField(j, "random");
  in.seed = Seed(j);
  if (in.random && !in.seed) {
    Fail(ErrorCode::kSchema, "a random action needs run.rng_seed");
  }
  in.s = MakeElemSet(Elems(j, "s", 1));
  if (in.s.empty()) Fail(ErrorCode::kSchema, "S is empty");
  in.eps = PositiveBelowOne(j, "epsilon");
  in.y = StatesFromJson(Field(j, "y"), in.states);
  const Json& z = Field(j, "z");
  in.z_nonfree = z.is_string();
  if (in.z_nonfree) {
    if (z.get<std::string>() != "nonfree") {
      Fail(ErrorCode::kSchema, "z must be \"nonfree\" or a state list");
    }
  } else {
    in.z = StatesFromJson(z, in.states);
  }
  return in;
}

FinAction T34Inputs::Action() const { return FinAction::Cyclic(states); }

T34Inputs T34Inputs::FromJson(const Json& j) {
  ExactKeys(j, {"d", "states", "k", "epsilon", "delta", "folner_cap",
                "ladder_cap", "essfree_g", "essfree_eps"});
  RequireIntegerAction(j);
  T34Inputs in;
  in.states = States(j);
  in.params.k = MakeElemSet(Elems(j, "k", 1));
  if (in.params.k.empty()) Fail(ErrorCode::kSchema, "K is empty");
  in.params.eps = PositiveBelowOne(j, "epsilon");
  in.params.delta = PositiveBelowOne(j, "delta");
  in.params.folner_cap = Positive(j, "folner_cap");
  in.params.ladder_cap = Positive(j, "ladder_cap");
  const Json& g = Field(j, "essfree_g");
  if (!g.is_null()) in.essfree_g = ElemFromJson(g, 1);
  in.essfree_eps = RationalField(j, "essfree_eps");
  if (in.essfree_eps < 0 || in.essfree_eps >= 1) {
    Fail(ErrorCode::kSchema, "essfree_eps must lie in [0, 1)");
  }
  return in;
}

JosephInputs JosephInputs::FromJson(const Json& j) {
  ExactKeys(j, {"d", "gammas", "prime_floor", "product_floor", "state_cap",
                "label_trials", "rng_seed"});
  JosephInputs in;
  in.d = Dim(j);
  in.gammas = Elems(j, "gammas", in.d);
  if (in.gammas.empty()) Fail(ErrorCode::kSchema, "no gammas given");
  in.prime_floor = Positive(j, "prime_floor");
  in.product_floor = PositiveBelowOne(j, "product_floor");
  in.state_cap = static_cast<std::uint64_t>(Positive(j, "state_cap"));
  in.label_trials = IntField(j, "label_trials");
  if (in.label_trials < 0 || in.label_trials > 1000000) {
    Fail(ErrorCode::kSchema, "label_trials out of range");
  }
  in.seed = Seed(j);
  if (in.label_trials > 0 && !in.seed) {
    Fail(ErrorCode::kSchema, "label trials need run.rng_seed");
  }
  return in;
}

FixedFractionInputs FixedFractionInputs::FromJson(const Json& j) {
  ExactKeys(j, {"d", "gammas", "probes", "prime_floor", "product_floor",
                "state_cap"});
  FixedFractionInputs in;
  in.d = Dim(j);
  in.gammas = Elems(j, "gammas", in.d);
  if (in.gammas.empty()) Fail(ErrorCode::kSchema, "no gammas given");
  in.probes = Elems(j, "probes", in.d);
  in.prime_floor = Positive(j, "prime_floor");
  in.product_floor = PositiveBelowOne(j, "product_floor");
  in.state_cap = static_cast<std::uint64_t>(Positive(j, "state_cap"));
  return in;
}

ZstabInputs ZstabInputs::FromJson(const Json& j) {
  ExactKeys(j, {"d", "n", "epsilon", "f_gammas", "f_prime_floor", "lambda0",
                "s0_states", "a_states", "state_cap", "max_gammas",
                "prime_cap", "defect_m"});
  ZstabInputs in;
  WitnessSpec& s = in.spec;
  s.d = Dim(j);
  s.n = IntField(j, "n");
  if (s.n < 2 || s.n > 16) Fail(ErrorCode::kSchema, "n must lie in 2..16");
  s.eps = PositiveBelowOne(j, "epsilon");
  s.f_gammas = Elems(j, "f_gammas", s.d);
  if (s.f_gammas.empty()) Fail(ErrorCode::kSchema, "f_gammas is empty");
  s.f_prime_floor = Positive(j, "f_prime_floor");
  s.lambda0 = IntsFromJson(Field(j, "lambda0"));
  for (auto x : IntsFromJson(Field(j, "s0_states"))) {
    if (x < 0) Fail(ErrorCode::kSchema, "negative state in s0_states");
    s.s0_states.push_back(static_cast<State>(x));
  }
  for (auto x : IntsFromJson(Field(j, "a_states"))) {
    if (x < 0) Fail(ErrorCode::kSchema, "negative state in a_states");
    s.a_states.push_back(static_cast<State>(x));
  }
  s.state_cap = static_cast<std::uint64_t>(Positive(j, "state_cap"));
  s.max_gammas = static_cast<int>(Positive(j, "max_gammas"));
  if (s.max_gammas > 4) Fail(ErrorCode::kSchema, "max_gammas must be at most 4");
  s.prime_cap = Positive(j, "prime_cap");
  in.defect_m = IntsFromJson(Field(j, "defect_m"));
  for (auto m : in.defect_m) {
    if (m < 1 || m > 100000) Fail(ErrorCode::kSchema, "defect_m entry out of range");
  }
  return in;
}

Json InputsFromConfig(const ExperimentConfig& cfg) {
  const std::string& p = cfg.pipeline();
  const std::int64_t d = cfg.GetInt("group.d", 1);
  if (d < 1 || d > 8) Fail(ErrorCode::kParse, "group.d must lie in 1..8");
  const auto dim = static_cast<std::size_t>(d);
  const Json seed = cfg.rng_seed() ? Json(*cfg.rng_seed()) : Json(nullptr);
  Json j;
  if (p == "folner") {
    j = {{"d", d},
         {"kind", cfg.GetString("group.kind", "integers")},
         {"k", ElemsJson(MakeElemSet(cfg.GetElemList("params.k", dim)))},
         {"epsilon", RationalToJson(cfg.GetRational("params.epsilon"))},
         {"cap", cfg.GetInt("params.cap", 4096)}};
  } else if (p == "castle-l33") {
    Json z = "nonfree";
    if (cfg.Has("params.z") && cfg.GetString("params.z") != "nonfree") {
      z = IntsToJson(cfg.GetIntList("params.z"));
    }
    j = {{"d", d},
         {"states", cfg.GetInt("group.states")},
         {"random", cfg.GetBool("group.random", false)},
         {"rng_seed", seed},
         {"s", ElemsJson(MakeElemSet(cfg.GetElemList("params.s", dim)))},
         {"epsilon", RationalToJson(cfg.GetRational("params.epsilon"))},
         {"y", IntsToJson(cfg.GetIntList("params.y", std::vector<std::int64_t>{}))},
         {"z", z}};
  } else if (p == "castle-t34") {
    const Rational eps = cfg.GetRational("params.epsilon");
    Json g = nullptr;
    if (cfg.Has("params.essfree_g")) {
      const auto gs = cfg.GetElemList("params.essfree_g", dim);
      if (gs.size() != 1) Fail(ErrorCode::kParse, "essfree_g takes one element");
      g = ElemToJson(gs[0]);
    }
    j = {{"d", d},
         {"states", cfg.GetInt("group.states")},
         {"k", ElemsJson(MakeElemSet(cfg.GetElemList("params.k", dim)))},
         {"epsilon", RationalToJson(eps)},
         {"delta", RationalToJson(cfg.GetRational("params.delta", eps))},
         {"folner_cap", cfg.GetInt("params.folner_cap", 4096)},
         {"ladder_cap", cfg.GetInt("params.ladder_cap", 16384)},
         {"essfree_g", g},
         {"essfree_eps",
          RationalToJson(cfg.GetRational("params.essfree_eps", eps))}};
  } else if (p == "joseph-build") {
    j = {{"d", d},
         {"gammas", ElemsJson(cfg.GetElemList("params.gammas", dim))},
         {"prime_floor", cfg.GetInt("params.prime_floor", 1)},
         {"product_floor",
          RationalToJson(cfg.GetRational("params.product_floor",
                                         MakeRational(1, 4)))},
         {"state_cap", cfg.GetInt("params.state_cap", 1000000)},
         {"label_trials", cfg.GetInt("params.label_trials", 0)},
         {"rng_seed", seed}};
  } else if (p == "fixed-fractions") {
    j = {{"d", d},
         {"gammas", ElemsJson(cfg.GetElemList("params.gammas", dim))},
         {"probes", ElemsJson(cfg.GetElemList("params.probes", dim))},
         {"prime_floor", cfg.GetInt("params.prime_floor", 1)},
         {"product_floor",
          RationalToJson(cfg.GetRational("params.product_floor",
                                         MakeRational(1, 4)))},
         {"state_cap", cfg.GetInt("params.state_cap", 1000000)}};
  } else if (p == "zstab-witness") {
    const WitnessSpec def;
    j = {{"d", d},
         {"n", cfg.GetInt("params.n", def.n)},
         {"epsilon", RationalToJson(cfg.GetRational("params.epsilon", def.eps))},
         {"f_gammas",
          ElemsJson(cfg.GetElemList("params.f_gammas", dim, def.f_gammas))},
         {"f_prime_floor", cfg.GetInt("params.f_prime_floor", def.f_prime_floor)},
         {"lambda0", IntsToJson(cfg.GetIntList("params.lambda0", def.lambda0))},
         {"s0_states",
          IntsToJson(cfg.GetIntList("params.s0_states", std::vector<std::int64_t>{0}))},
         {"a_states",
          IntsToJson(cfg.GetIntList("params.a_states", std::vector<std::int64_t>{}))},
         {"state_cap", cfg.GetInt("params.state_cap", 1000000)},
         {"max_gammas", cfg.GetInt("params.max_gammas", def.max_gammas)},
         {"prime_cap", cfg.GetInt("params.prime_cap", def.prime_cap)},
         {"defect_m",
          IntsToJson(cfg.GetIntList("params.defect_m",
                                    std::vector<std::int64_t>{5, 10, 20}))}};
  } else {
    Fail(ErrorCode::kParse, "unknown pipeline '" + p + "'");
  }
  return j;
}

}  // namespace castellan
