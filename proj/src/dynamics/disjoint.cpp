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

#include "dynamics/disjoint.hpp"

#include <algorithm>
#include <map>

#include "dynamics/matching.hpp"

namespace castellan {

std::int64_t RequiredKeep(std::int64_t size, const Rational& eps) {
  const Rational need = (1 - eps) * size;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
  return std::max<std::int64_t>(0, q.get_si());
}

EpsDisjointResult EpsDisjointCheck(
    const std::vector<std::vector<std::uint32_t>>& family,
    const Rational& eps) {
  std::vector<std::vector<std::uint32_t>> sets = family;
  std::map<std::uint32_t, std::size_t> index;
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (auto x : s) index.emplace(x, index.size());
  }
  std::vector<std::size_t> owner;  // left copy -> set
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto keep =
        RequiredKeep(static_cast<std::int64_t>(sets[i].size()), eps);
    for (std::int64_t c = 0; c < keep; ++c) owner.push_back(i);
  }
  BipartiteMatcher matcher(owner.size(), index.size());
  for (std::size_t l = 0; l < owner.size(); ++l) {
    for (auto x : sets[owner[l]]) matcher.AddEdge(l, index.at(x));
  }
  EpsDisjointResult result;
  if (matcher.Solve() != owner.size()) return result;
  std::vector<std::uint32_t> point_of(index.size());
  for (const auto& [x, i] : index) point_of[i] = x;
  result.disjoint = true;
  result.witness.assign(sets.size(), {});
  std::vector<std::uint8_t> used(index.size(), 0);
  for (std::size_t l = 0; l < owner.size(); ++l) {
    const auto r = static_cast<std::size_t>(matcher.match_left()[l]);
    used[r] = 1;
    result.witness[owner[l]].push_back(point_of[r]);
  }
  // Unclaimed points go back to the first set holding them, so a family
  // that is already disjoint is returned unchanged.
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (auto x : sets[i]) {
      const std::size_t r = index.at(x);
      if (!used[r]) {
        used[r] = 1;
        result.witness[i].push_back(x);
      }
    }
  }
  for (auto& w : result.witness) std::sort(w.begin(), w.end());
  return result;
}

}  // namespace castellan
