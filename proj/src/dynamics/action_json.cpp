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

#include "dynamics/action_json.hpp"

#include <algorithm>
#include <random>

#include "common/error.hpp"
#include "group_core/elem_json.hpp"

namespace castellan {

nlohmann::json ActionToJson(const FinAction& act) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& [g, perm] : act.Generators()) {
    gens.push_back({{"element", ElemToJson(g)}, {"perm", perm}});
  }
  nlohmann::json j = {{"states", act.size()},
                      {"dim", act.dim()},
                      {"generators", gens}};
  if (act.num_cells() != act.size()) j["resolution"] = act.Cells();
  return j;
}

FinAction ActionFromJson(const nlohmann::json& j) {
  auto need = [&](bool ok, const std::string& what) {
    Require(ok, ErrorCode::kSchema, "action: " + what);
  };
  need(j.is_object(), "expected an object");
  for (const auto& [key, value] : j.items()) {
    need(key == "states" || key == "dim" || key == "generators" ||
             key == "resolution",
         "unknown key '" + key + "'");
  }
  need(j.contains("states") && j["states"].is_number_unsigned(),
       "missing state count");
  const std::size_t n = j["states"].get<std::size_t>();
  const std::size_t d =
      j.contains("dim") ? j["dim"].get<std::size_t>() : std::size_t{1};
  need(j.contains("generators") && j["generators"].is_array(),
       "missing generators");
  Perm shift;
  std::vector<Perm> lamps(d);
  std::size_t lamp_count = 0;
  for (const auto& g : j["generators"]) {
    need(g.is_object() && g.contains("element") && g.contains("perm"),
         "generator needs element and perm");
    const WreathElem e = ElemFromJson(g["element"], d);
    Perm p = g["perm"].get<Perm>();
    need(p.size() == n, "permutation size mismatch");
    if (e == ShiftElem(1)) {
      need(shift.empty(), "duplicate shift generator");
      shift = std::move(p);
      continue;
    }
    bool matched = false;
    for (std::size_t k = 1; k <= d; ++k) {
      if (e == XiGenerator(d, k, 0)) {
        need(lamps[k - 1].empty(), "duplicate lamp generator");
        lamps[k - 1] = std::move(p);
        ++lamp_count;
        matched = true;
        break;
      }
    }
    need(matched, "unsupported generator element");
  }
  need(!shift.empty(), "missing shift generator");
  need(lamp_count == 0 || lamp_count == d, "incomplete lamp generators");
  if (lamp_count == 0) lamps.clear();
  std::vector<std::vector<State>> resolution;
  if (j.contains("resolution")) {
    resolution = j["resolution"].get<std::vector<std::vector<State>>>();
  }
  return FinAction(d, std::move(shift), std::move(lamps),
                   std::move(resolution));
}

FinAction RandomIntegerAction(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<State>(i);
  std::shuffle(p.begin(), p.end(), rng);
  return FinAction(1, std::move(p));
}

}  // namespace castellan
