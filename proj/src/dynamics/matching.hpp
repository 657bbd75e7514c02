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

#ifndef CASTELLAN_DYNAMICS_MATCHING_HPP_
#define CASTELLAN_DYNAMICS_MATCHING_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace castellan {

// Hopcroft–Karp maximum matching on a bipartite graph.
class BipartiteMatcher {
 public:
  static constexpr std::int64_t kUnmatched = -1;

  BipartiteMatcher(std::size_t left, std::size_t right);

  void AddEdge(std::size_t l, std::size_t r);
  // Pre-matches an existing edge; both endpoints must be free.
  void Seed(std::size_t l, std::size_t r);
  // Returns the matching size.
  std::size_t Solve();

  const std::vector<std::int64_t>& match_left() const { return match_l_; }
  const std::vector<std::int64_t>& match_right() const { return match_r_; }

 private:
  bool Bfs();
  bool Dfs(std::size_t l);

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::int64_t> match_l_, match_r_;
  std::vector<std::int64_t> dist_;
  std::vector<std::size_t> iter_;
};

}  // namespace castellan

#endif  // CASTELLAN_DYNAMICS_MATCHING_HPP_
