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

#include "dynamics/schreier.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace castellan {

SchreierGraph::SchreierGraph(const FinAction& act, ElemSet labels)
    : size_(act.size()), labels_(MakeElemSet(std::move(labels))) {
  for (const auto& l : labels_) {
    Require(std::binary_search(labels_.begin(), labels_.end(), WreathInv(l)),
            ErrorCode::kInvalidArgument, "label set must be symmetric");
    perms_.push_back(act.PermOf(l));
  }
}

std::vector<std::int64_t> SchreierGraph::DistanceTo(
    const StateSubset& y0) const {
  std::vector<std::int64_t> dist(size_, kInfinite);
  std::vector<State> queue;
  for (State x = 0; x < size_; ++x) {
    if (y0.Contains(x)) {
      dist[x] = 0;
      queue.push_back(x);
    }
  }
  // Labels are symmetric, so distance to Y_0 is distance from Y_0.
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const State x = queue[head];
    for (const auto& p : perms_) {
      const State y = p[x];
      if (dist[y] == kInfinite) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

std::size_t WeddingCakeFn::CountNotOne() const {
  return static_cast<std::size_t>(
      std::count_if(level.begin(), level.end(),
                    [this](std::int64_t v) { return v != n; }));
}

WeddingCakeFn WeddingCake(const SchreierGraph& graph, const StateSubset& y0,
                          std::int64_t n) {
  Require(n >= 1, ErrorCode::kInvalidArgument, "cake height must be >= 1");
  WeddingCakeFn f;
  f.n = n;
  const auto dist = graph.DistanceTo(y0);
  f.level.resize(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    f.level[i] =
        dist[i] == SchreierGraph::kInfinite ? n : std::min(dist[i], n);
  }
  return f;
}

BigInt WeddingCakeBound(std::size_t labels, std::int64_t n,
                        std::size_t y0_size) {
  BigInt sum = 0, power = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    sum += power;
    power *= static_cast<unsigned long>(labels);
  }
  return sum * static_cast<unsigned long>(y0_size);
}

SectionData CanonicalSection(std::int64_t n,
                             const std::vector<LambdaElem>& k) {
  Require(n >= 1, ErrorCode::kInvalidArgument, "quotient must be nonempty");
  SectionData s;
  s.quotient_size = n;
  s.k = k;
  s.phi.resize(static_cast<std::size_t>(n));
  for (std::int64_t t = 0; t < n; ++t) s.phi[static_cast<std::size_t>(t)] = t;
  for (std::int64_t t = 0; t < n; ++t) {
    for (LambdaElem lam : k) {
      if (lam + s.phi[static_cast<std::size_t>(t)] !=
          s.phi[static_cast<std::size_t>(Mod(lam + t, n))]) {
        s.defect.push_back(t);
        break;
      }
    }
  }
  return s;
}

SectionData EquivariantSection(std::int64_t n,
                               const std::vector<LambdaElem>& k,
                               const Rational& eps) {
  Require(eps > 0, ErrorCode::kInvalidArgument, "epsilon must be positive");
  SectionData s = CanonicalSection(n, k);
  s.eps = eps;
  Require(s.DefectFraction() < eps, ErrorCode::kPrecondition,
          "quotient of size " + std::to_string(n) +
              " too small for the requested epsilon");
  return s;
}

bool CheckSection(const SectionData& s) {
  const std::int64_t n = s.quotient_size;
  if (static_cast<std::int64_t>(s.phi.size()) != n) return false;
  for (std::int64_t t = 0; t < n; ++t) {
    if (Mod(s.phi[static_cast<std::size_t>(t)], n) != t) return false;
  }
  for (std::int64_t t = 0; t < n; ++t) {
    for (LambdaElem lam : s.k) {
      const bool bad = lam + s.phi[static_cast<std::size_t>(t)] !=
                       s.phi[static_cast<std::size_t>(Mod(lam + t, n))];
      if (bad && !std::binary_search(s.defect.begin(), s.defect.end(), t)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace castellan
