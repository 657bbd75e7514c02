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

#ifndef CASTELLAN_REPORT_SERIALIZE_HPP_
#define CASTELLAN_REPORT_SERIALIZE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "castles/castle.hpp"
#include "common/rational.hpp"
#include "dynamics/action.hpp"
#include "joseph/joseph.hpp"
#include "json.hpp"

namespace castellan {

using Json = nlohmann::json;

// Strict accessors; every failure is a kSchema error naming the key.
const Json& Field(const Json& j, const std::string& key);
std::int64_t IntField(const Json& j, const std::string& key);
bool BoolField(const Json& j, const std::string& key);
std::string StringField(const Json& j, const std::string& key);
Rational RationalField(const Json& j, const std::string& key);

Json RationalToJson(const Rational& r);
Rational RationalFromJson(const Json& j);
Json RationalsToJson(const std::vector<Rational>& rs);

Json IntsToJson(const std::vector<std::int64_t>& v);
std::vector<std::int64_t> IntsFromJson(const Json& j);
Json StatesToJson(const std::vector<State>& v);
// Range-checked against a state space of size n.
std::vector<State> StatesFromJson(const Json& j, std::size_t n);

Json CastleToJson(const Castle& c);
Castle CastleFromJson(const Json& j, std::size_t d);

// {gamma, p, eps, l, a, subgroup_index, e_cosets}
Json ParamTableToJson(const ParamTable& t);
ParamTable ParamTableFromJson(const Json& j, std::size_t d);

// Lowercase hex SHA-256.
std::string Sha256Hex(const std::string& bytes);
// Hash of the generator permutations of a finite action.
std::string ActionDigest(const FinAction& act);

}  // namespace castellan

#endif  // CASTELLAN_REPORT_SERIALIZE_HPP_
