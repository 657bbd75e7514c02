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

#ifndef CASTELLAN_DYNAMICS_DISJOINT_HPP_
#define CASTELLAN_DYNAMICS_DISJOINT_HPP_

#include <cstdint>
#include <vector>

#include "common/rational.hpp"

namespace castellan {

struct EpsDisjointResult {
  bool disjoint = false;
  // A_i′ ⊆ A_i, pairwise disjoint, |A_i′| ≥ (1−ε)|A_i|; empty when false.
  std::vector<std::vector<std::uint32_t>> witness;
};

// Decides ε-disjointness exactly: set i must keep ⌈(1−ε)|A_i|⌉ points, and
// each point goes to at most one set, which is a bipartite b-matching.
EpsDisjointResult EpsDisjointCheck(
    const std::vector<std::vector<std::uint32_t>>& family, const Rational& eps);

// ⌈(1−ε)·size⌉.
std::int64_t RequiredKeep(std::int64_t size, const Rational& eps);

}  // namespace castellan

#endif  // CASTELLAN_DYNAMICS_DISJOINT_HPP_
