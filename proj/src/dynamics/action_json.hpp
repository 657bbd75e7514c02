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

#ifndef CASTELLAN_DYNAMICS_ACTION_JSON_HPP_
#define CASTELLAN_DYNAMICS_ACTION_JSON_HPP_

#include <cstdint>

#include "dynamics/action.hpp"
#include "json.hpp"

namespace castellan {

// {"states": N, "dim": d, "generators": [{"element", "perm"}], "resolution"}.
// Generators must be the shift 1 and optionally the lamp generators ξ_k^0.
nlohmann::json ActionToJson(const FinAction& act);
FinAction ActionFromJson(const nlohmann::json& j);

// ℤ acting on N points through a uniformly random permutation.
FinAction RandomIntegerAction(std::size_t n, std::uint64_t seed);

}  // namespace castellan

#endif  // CASTELLAN_DYNAMICS_ACTION_JSON_HPP_
