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

#include "dynamics/action.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "common/error.hpp"

namespace castellan {

StateSubset StateSubset::FromStates(std::size_t n,
                                    const std::vector<State>& xs) {
  StateSubset s(n);
  for (State x : xs) {
    Require(x < n, ErrorCode::kInvalidArgument,
            "state " + std::to_string(x) + " out of range");
    s.Insert(x);
  }
  return s;
}

std::size_t StateSubset::Count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<State> StateSubset::Members() const {
  std::vector<State> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<State>(i));
  }
  return out;
}

StateSubset StateSubset::Complement() const {
  StateSubset out = *this;
  for (auto& b : out.bits_) b ^= 1;
  return out;
}

StateSubset& StateSubset::operator|=(const StateSubset& other) {
  Require(universe() == other.universe(), ErrorCode::kInvalidArgument,
          "subset universe mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

StateSubset& StateSubset::operator&=(const StateSubset& other) {
  Require(universe() == other.universe(), ErrorCode::kInvalidArgument,
          "subset universe mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  return *this;
}

StateSubset StateSubset::Minus(const StateSubset& other) const {
  return *this & other.Complement();
}

bool StateSubset::IsSubsetOf(const StateSubset& other) const {
  Require(universe() == other.universe(), ErrorCode::kInvalidArgument,
          "subset universe mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

CyclicPerm::CyclicPerm(Perm image)
    : image_(std::move(image)),
      cycle_of_(image_.size()),
      index_in_cycle_(image_.size()) {
  const std::size_t n = image_.size();
  std::vector<std::uint8_t> seen(n, 0);
  for (State x : image_) {
    Require(x < n && !seen[x], ErrorCode::kInvalidArgument,
            "generator image is not a permutation");
    seen[x] = 1;
  }
  std::fill(seen.begin(), seen.end(), 0);
  for (State start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<State> cycle;
    for (State x = start; !seen[x]; x = image_[x]) {
      seen[x] = 1;
      cycle_of_[x] = static_cast<std::uint32_t>(cycles_.size());
      index_in_cycle_[x] = static_cast<std::uint32_t>(cycle.size());
      cycle.push_back(x);
    }
    cycles_.push_back(std::move(cycle));
  }
}

State CyclicPerm::Apply(State x, std::int64_t power) const {
  if (power == 1) return image_[x];
  const auto& cycle = cycles_[cycle_of_[x]];
  const std::int64_t len = static_cast<std::int64_t>(cycle.size());
  return cycle[static_cast<std::size_t>(
      Mod(static_cast<std::int64_t>(index_in_cycle_[x]) + power % len, len))];
}

bool CyclicPerm::IsIdentity() const {
  return cycles_.size() == image_.size();
}

FinAction::FinAction(std::size_t d, Perm shift, std::vector<Perm> lamps,
                     std::vector<std::vector<State>> resolution)
    : d_(d), shift_(std::move(shift)) {
  const std::size_t n = shift_.size();
  Require(n > 0, ErrorCode::kInvalidArgument, "action needs states");
  Require(d >= 1, ErrorCode::kInvalidArgument, "lattice dimension must be >= 1");
  Require(lamps.empty() || lamps.size() == d, ErrorCode::kInvalidArgument,
          "expected one lamp permutation per lattice coordinate");
  for (auto& p : lamps) {
    Require(p.size() == n, ErrorCode::kInvalidArgument,
            "lamp permutation size mismatch");
    lamps_.emplace_back(std::move(p));
  }
  cell_of_.assign(n, n);
  if (resolution.empty()) {
    for (std::size_t i = 0; i < n; ++i) cell_of_[i] = i;
    num_cells_ = n;
  } else {
    for (std::size_t c = 0; c < resolution.size(); ++c) {
      Require(!resolution[c].empty(), ErrorCode::kInvalidArgument,
              "empty resolution cell");
      for (State x : resolution[c]) {
        Require(x < n && cell_of_[x] == n, ErrorCode::kInvalidArgument,
                "resolution cells do not partition the states");
        cell_of_[x] = c;
      }
    }
    Require(std::find(cell_of_.begin(), cell_of_.end(), n) == cell_of_.end(),
            ErrorCode::kInvalidArgument,
            "resolution cells do not cover the states");
    num_cells_ = resolution.size();
  }
  ComputeOrbits();
}

FinAction FinAction::Cyclic(std::size_t n, std::size_t d) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<State>((i + 1) % n);
  return FinAction(d, std::move(p));
}

void FinAction::ComputeOrbits() {
  const std::size_t n = size();
  const std::size_t unset = n;
  orbit_of_.assign(n, unset);
  for (State start = 0; start < n; ++start) {
    if (orbit_of_[start] != unset) continue;
    const std::size_t id = orbits_.size();
    std::vector<State> orbit = {start};
    orbit_of_[start] = id;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      const State x = orbit[head];
      auto visit = [&](State y) {
        if (orbit_of_[y] == unset) {
          orbit_of_[y] = id;
          orbit.push_back(y);
        }
      };
      visit(shift_.Apply(x, 1));
      visit(shift_.Apply(x, -1));
      for (const auto& l : lamps_) {
        visit(l.Apply(x, 1));
        visit(l.Apply(x, -1));
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits_.push_back(std::move(orbit));
  }
}

State FinAction::Act(const WreathElem& g, State x) const {
  State y = shift_.Apply(x, g.shift);
  if (lamps_.empty()) return y;
  for (const auto& [pos, vec] : g.lamps.entries()) {
    Require(vec.dim() == d_, ErrorCode::kInvalidArgument,
            "element dimension does not match the action");
    y = shift_.Apply(y, -pos);
    for (std::size_t k = 0; k < d_; ++k) {
      if (vec[k] != 0) y = lamps_[k].Apply(y, vec[k]);
    }
    y = shift_.Apply(y, pos);
  }
  return y;
}

Perm FinAction::PermOf(const WreathElem& g) const {
  Perm p(size());
  for (State x = 0; x < size(); ++x) p[x] = Act(g, x);
  return p;
}

StateSubset FinAction::Translate(const WreathElem& g,
                                 const StateSubset& a) const {
  StateSubset out(size());
  for (State x = 0; x < size(); ++x) {
    if (a.Contains(x)) out.Insert(Act(g, x));
  }
  return out;
}

std::vector<std::vector<State>> FinAction::Cells() const {
  std::vector<std::vector<State>> cells(num_cells_);
  for (State x = 0; x < size(); ++x) cells[cell_of_[x]].push_back(x);
  return cells;
}

std::vector<std::pair<WreathElem, Perm>> FinAction::Generators() const {
  std::vector<std::pair<WreathElem, Perm>> out;
  out.emplace_back(ShiftElem(1), shift_.image());
  for (std::size_t k = 0; k < lamps_.size(); ++k) {
    out.emplace_back(XiGenerator(d_, k + 1, 0), lamps_[k].image());
  }
  return out;
}

bool FinAction::CheckLampRelations(std::uint64_t seed, int trials,
                                   std::int64_t window) const {
  if (lamps_.empty()) return true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<State> state(0, static_cast<State>(size() - 1));
  std::uniform_int_distribution<std::int64_t> pos(-window, window);
  std::uniform_int_distribution<std::size_t> coord(1, d_);
  for (int t = 0; t < trials; ++t) {
    const State x = state(rng);
    const WreathElem a = XiGenerator(d_, coord(rng), pos(rng));
    const WreathElem b = XiGenerator(d_, coord(rng), pos(rng));
    if (Act(a, Act(b, x)) != Act(b, Act(a, x))) return false;
  }
  return true;
}

StateSubset FixSet(const WreathElem& g, const FinAction& act) {
  StateSubset out(act.size());
  for (State x = 0; x < act.size(); ++x) {
    if (act.Act(g, x) == x) out.Insert(x);
  }
  return out;
}

StateSubset NonfreePart(const ElemSet& f, const FinAction& act) {
  StateSubset out(act.size());
  std::vector<State> images(f.size());
  for (State x = 0; x < act.size(); ++x) {
    for (std::size_t i = 0; i < f.size(); ++i) images[i] = act.Act(f[i], x);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
      out.Insert(x);
    }
  }
  return out;
}

}  // namespace castellan
