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

#include "dynamics/matching.hpp"

#include <limits>

#include "common/error.hpp"

namespace castellan {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
}

BipartiteMatcher::BipartiteMatcher(std::size_t left, std::size_t right)
    : adj_(left),
      match_l_(left, kUnmatched),
      match_r_(right, kUnmatched),
      dist_(left),
      iter_(left) {}

void BipartiteMatcher::AddEdge(std::size_t l, std::size_t r) {
  Require(l < adj_.size() && r < match_r_.size(), ErrorCode::kInvalidArgument,
          "matching edge out of range");
  adj_[l].push_back(r);
}

void BipartiteMatcher::Seed(std::size_t l, std::size_t r) {
  Require(match_l_[l] == kUnmatched && match_r_[r] == kUnmatched,
          ErrorCode::kInvalidArgument, "seeded vertex already matched");
  match_l_[l] = static_cast<std::int64_t>(r);
  match_r_[r] = static_cast<std::int64_t>(l);
}

bool BipartiteMatcher::Bfs() {
  std::vector<std::size_t> queue;
  for (std::size_t l = 0; l < adj_.size(); ++l) {
    if (match_l_[l] == kUnmatched) {
      dist_[l] = 0;
      queue.push_back(l);
    } else {
      dist_[l] = kInf;
    }
  }
  bool found = false;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t l = queue[head];
    for (std::size_t r : adj_[l]) {
      const std::int64_t next = match_r_[r];
      if (next == kUnmatched) {
        found = true;
      } else if (dist_[next] == kInf) {
        dist_[next] = dist_[l] + 1;
        queue.push_back(static_cast<std::size_t>(next));
      }
    }
  }
  return found;
}

bool BipartiteMatcher::Dfs(std::size_t l) {
  // Iterative augmentation along the layered graph.
  struct Frame {
    std::size_t l;
  };
  std::vector<Frame> stack = {{l}};
  std::vector<std::size_t> via;  // right vertex taken at each level
  while (!stack.empty()) {
    const std::size_t u = stack.back().l;
    bool advanced = false;
    while (iter_[u] < adj_[u].size()) {
      const std::size_t r = adj_[u][iter_[u]];
      const std::int64_t next = match_r_[r];
      if (next == kUnmatched) {
        // Augment along the stack.
        via.push_back(r);
        for (std::size_t i = 0; i < stack.size(); ++i) {
          match_l_[stack[i].l] = static_cast<std::int64_t>(via[i]);
          match_r_[via[i]] = static_cast<std::int64_t>(stack[i].l);
        }
        return true;
      }
      const auto nu = static_cast<std::size_t>(next);
      if (dist_[nu] == dist_[u] + 1) {
        via.push_back(r);
        stack.push_back({nu});
        advanced = true;
        break;
      }
      ++iter_[u];
    }
    if (advanced) continue;
    dist_[u] = kInf;
    stack.pop_back();
    if (!via.empty()) {
      via.pop_back();
      ++iter_[stack.back().l];
    }
  }
  return false;
}

std::size_t BipartiteMatcher::Solve() {
  while (Bfs()) {
    std::fill(iter_.begin(), iter_.end(), 0);
    for (std::size_t l = 0; l < adj_.size(); ++l) {
      if (match_l_[l] == kUnmatched) Dfs(l);
    }
  }
  std::size_t size = 0;
  for (auto m : match_l_) size += m != kUnmatched ? 1 : 0;
  return size;
}

}  // namespace castellan
