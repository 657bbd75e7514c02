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

#ifndef CASTELLAN_GROUP_CORE_ELEM_JSON_HPP_
#define CASTELLAN_GROUP_CORE_ELEM_JSON_HPP_

#include <cstddef>

#include "group_core/wreath.hpp"
#include "json.hpp"

namespace castellan {

// {"lamps": [[λ, [v_1, …, v_d]], …], "shift": δ}. A bare integer is read
// as a pure shift.
nlohmann::json ElemToJson(const WreathElem& g);
WreathElem ElemFromJson(const nlohmann::json& j, std::size_t d);

nlohmann::json ElemSetToJson(const ElemSet& s);
ElemSet ElemSetFromJson(const nlohmann::json& j, std::size_t d);

}  // namespace castellan

#endif  // CASTELLAN_GROUP_CORE_ELEM_JSON_HPP_
