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

#include "group_core/elem_json.hpp"

#include <string>

#include "common/error.hpp"

namespace castellan {

nlohmann::json ElemToJson(const WreathElem& g) {
  nlohmann::json lamps = nlohmann::json::array();
  for (const auto& [pos, vec] : g.lamps.entries()) {
    lamps.push_back({pos, vec.coords()});
  }
  return {{"lamps", lamps}, {"shift", g.shift}};
}

WreathElem ElemFromJson(const nlohmann::json& j, std::size_t d) {
  if (j.is_number_integer()) return ShiftElem(j.get<std::int64_t>());
  auto bad = [&]() {
    Fail(ErrorCode::kSchema, "malformed group element " + j.dump());
  };
  if (!j.is_object() || !j.contains("lamps") || !j.contains("shift") ||
      j.size() != 2 || !j["shift"].is_number_integer() ||
      !j["lamps"].is_array()) {
    bad();
  }
  std::vector<LampConfig::Entry> entries;
  for (const auto& e : j["lamps"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_array() || e[1].size() != d) {
      bad();
    }
    std::vector<std::int64_t> coords;
    for (const auto& c : e[1]) {
      if (!c.is_number_integer()) bad();
      coords.push_back(c.get<std::int64_t>());
    }
    entries.emplace_back(e[0].get<std::int64_t>(), ZdVector(std::move(coords)));
  }
  WreathElem g{LampConfig(std::move(entries)), j["shift"].get<std::int64_t>()};
  // Canonical input only: the stored form must round-trip.
  if (ElemToJson(g) != j) bad();
  return g;
}

nlohmann::json ElemSetToJson(const ElemSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : s) out.push_back(ElemToJson(g));
  return out;
}

ElemSet ElemSetFromJson(const nlohmann::json& j, std::size_t d) {
  if (!j.is_array()) Fail(ErrorCode::kSchema, "expected an element list");
  std::vector<WreathElem> out;
  for (const auto& e : j) out.push_back(ElemFromJson(e, d));
  return out;
}

}  // namespace castellan
