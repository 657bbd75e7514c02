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

#include "castles/subequivalence.hpp"

#include <deque>
#include <map>

#include "dynamics/matching.hpp"

namespace castellan {

namespace {

// Shortest word (over the generators and their inverses) taking `from` to
// `to`, as a group element.
WreathElem ShortestMover(const FinAction& act, State from, State to) {
  if (from == to) return WreathIdentity();
  std::vector<std::pair<WreathElem, Perm>> steps;
  for (const auto& [g, perm] : act.Generators()) {
    steps.emplace_back(g, perm);
    Perm inv(perm.size());
    for (State x = 0; x < perm.size(); ++x) inv[perm[x]] = x;
    steps.emplace_back(WreathInv(g), std::move(inv));
  }
  constexpr std::int64_t kNone = -1;
  std::vector<std::int64_t> parent(act.size(), kNone);
  std::vector<std::size_t> via(act.size(), 0);
  std::deque<State> queue{from};
  parent[from] = from;
  while (!queue.empty() && parent[to] == kNone) {
    const State x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const State y = steps[i].second[x];
      if (parent[y] != kNone) continue;
      parent[y] = x;
      via[y] = i;
      queue.push_back(y);
    }
  }
  // Walk back: mover = g_m ⋯ g_1.
  WreathElem mover = WreathIdentity();
  for (State y = to; y != from; y = static_cast<State>(parent[y])) {
    mover = WreathMul(mover, steps[via[y]].first);
  }
  return mover;
}

}  // namespace

SubequivalenceResult FindSubequivalence(const StateSubset& a,
                                        const StateSubset& b,
                                        const FinAction& act,
                                        std::size_t edge_cap) {
  SubequivalenceResult res;
  const auto a_pts = a.Members();
  const auto b_pts = b.Members();
  // Counting obstruction per orbit.
  std::vector<std::size_t> need(act.orbits().size(), 0),
      have(act.orbits().size(), 0);
  for (State x : a_pts) ++need[act.orbit_of(x)];
  for (State y : b_pts) ++have[act.orbit_of(y)];
  for (std::size_t o = 0; o < need.size(); ++o) {
    if (need[o] > have[o]) {
      res.reason = "orbit " + std::to_string(o) + " has " +
                   std::to_string(need[o]) + " points of A but only " +
                   std::to_string(have[o]) + " of B";
      return res;
    }
  }
  std::vector<std::vector<std::size_t>> b_by_orbit(act.orbits().size());
  std::map<State, std::size_t> b_index;
  for (std::size_t j = 0; j < b_pts.size(); ++j) {
    b_by_orbit[act.orbit_of(b_pts[j])].push_back(j);
    b_index[b_pts[j]] = j;
  }
  std::size_t edges = 0;
  for (State x : a_pts) edges += b_by_orbit[act.orbit_of(x)].size();
  if (edges > edge_cap) {
    res.cap_exceeded = true;
    res.reason = "matching needs " + std::to_string(edges) +
                 " edges, cap is " + std::to_string(edge_cap);
    return res;
  }
  BipartiteMatcher matcher(a_pts.size(), b_pts.size());
  for (std::size_t i = 0; i < a_pts.size(); ++i) {
    for (std::size_t j : b_by_orbit[act.orbit_of(a_pts[i])]) {
      matcher.AddEdge(i, j);
    }
  }
  for (std::size_t i = 0; i < a_pts.size(); ++i) {
    const auto it = b_index.find(a_pts[i]);
    if (it != b_index.end()) matcher.Seed(i, it->second);
  }
  if (matcher.Solve() < a_pts.size()) {
    res.reason = "no complete matching of A into B";
    return res;
  }
  std::map<WreathElem, std::vector<State>> pieces;
  for (std::size_t i = 0; i < a_pts.size(); ++i) {
    const State target =
        b_pts[static_cast<std::size_t>(matcher.match_left()[i])];
    pieces[ShortestMover(act, a_pts[i], target)].push_back(a_pts[i]);
  }
  for (auto& [mover, piece] : pieces) {
    res.witness.movers.push_back(mover);
    res.witness.pieces.push_back(std::move(piece));
  }
  res.found = true;
  return res;
}

CheckOutcome CheckSubequivalence(const SubequivalenceWitness& w,
                                 const StateSubset& a, const StateSubset& b,
                                 const FinAction& act) {
  CheckOutcome out;
  if (w.pieces.size() != w.movers.size()) {
    out.Fail("pieces and movers differ in number");
    return out;
  }
  StateSubset covered(act.size()), image(act.size());
  for (std::size_t p = 0; p < w.pieces.size(); ++p) {
    for (State x : w.pieces[p]) {
      if (x >= act.size() || !a.Contains(x)) {
        out.Fail("piece " + std::to_string(p) + " leaves A");
        return out;
      }
      if (covered.Contains(x)) {
        out.Fail("state " + std::to_string(x) + " lies in two pieces");
      }
      covered.Insert(x);
      const State y = act.Act(w.movers[p], x);
      if (!b.Contains(y)) {
        out.Fail("moved piece " + std::to_string(p) + " leaves B");
      }
      if (image.Contains(y)) {
        out.Fail("moved pieces overlap at " + std::to_string(y));
      }
      image.Insert(y);
    }
  }
  if (!(covered == a)) out.Fail("pieces do not cover A");
  return out;
}

}  // namespace castellan
