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

#include "castles/castle.hpp"

#include <algorithm>
#include <map>

#include "common/error.hpp"
#include "dynamics/disjoint.hpp"

namespace castellan {

StateSubset Castle::Footprint(const FinAction& act) const {
  StateSubset out(act.size());
  for (const auto& t : towers) {
    for (const auto& s : t.shape) {
      for (State v : t.base) out.Insert(act.Act(s, v));
    }
  }
  return out;
}

std::size_t Castle::LevelPointCount() const {
  std::size_t total = 0;
  for (const auto& t : towers) total += t.shape.size() * t.base.size();
  return total;
}

CastleReport ValidateCastle(const Castle& castle, const FinAction& act) {
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner_tower(act.size(), kFree);
  std::vector<std::size_t> owner_level(act.size(), kFree);
  CastleReport report;
  for (std::size_t ti = 0; ti < castle.towers.size(); ++ti) {
    const Tower& t = castle.towers[ti];
    for (State v : t.base) {
      if (v >= act.size()) {
        report.valid = false;
        report.message = "base point " + std::to_string(v) + " out of range";
        return report;
      }
    }
    for (std::size_t li = 0; li < t.shape.size(); ++li) {
      for (State v : t.base) {
        const State x = act.Act(t.shape[li], v);
        if (owner_tower[x] != kFree) {
          report.valid = false;
          report.point = x;
          report.first_tower = owner_tower[x];
          report.first_level = owner_level[x];
          report.second_tower = ti;
          report.second_level = li;
          report.message = "state " + std::to_string(x) +
                           " lies in level " +
                           std::to_string(owner_level[x]) + " of tower " +
                           std::to_string(owner_tower[x]) + " and level " +
                           std::to_string(li) + " of tower " +
                           std::to_string(ti);
          return report;
        }
        owner_tower[x] = ti;
        owner_level[x] = li;
      }
    }
  }
  return report;
}

namespace {

// Greedy coloring of X∖Z in index order for the conflict graph
// x ∼ y iff Sx ∩ Sy ≠ ∅. Returns color per state (-1 on Z).
std::vector<std::int64_t> ConflictColoring(const FinAction& act,
                                           const ElemSet& s,
                                           const StateSubset& z) {
  const std::size_t n = act.size();
  // hits[w] = states x ∉ Z with w ∈ Sx.
  std::vector<std::vector<State>> hits(n);
  for (State x = 0; x < n; ++x) {
    if (z.Contains(x)) continue;
    for (const auto& g : s) hits[act.Act(g, x)].push_back(x);
  }
  std::vector<std::int64_t> color(n, -1);
  std::vector<std::size_t> stamp(n + 1, 0);  // color -> last x that blocked it
  for (State x = 0; x < n; ++x) {
    if (z.Contains(x)) continue;
    for (const auto& g : s) {
      for (State y : hits[act.Act(g, x)]) {
        if (color[y] >= 0) stamp[static_cast<std::size_t>(color[y])] = x + 1;
      }
    }
    std::int64_t c = 0;
    while (stamp[static_cast<std::size_t>(c)] == x + 1) ++c;
    color[x] = c;
  }
  return color;
}

}  // namespace

Castle BuildCastleL33(const FinAction& act, const ElemSet& s_in,
                      const Rational& eps, const StateSubset& y,
                      const StateSubset& z) {
  Require(eps > 0 && eps < MakeRational(1, 2), ErrorCode::kInvalidArgument,
          "castle epsilon must lie in (0, 1/2)");
  Require(!s_in.empty(), ErrorCode::kInvalidArgument, "empty shape set");
  Require(y.universe() == act.size() && z.universe() == act.size(),
          ErrorCode::kInvalidArgument, "subset universe mismatch");
  const ElemSet s = MakeElemSet(s_in);
  Require(NonfreePart(s, act).IsSubsetOf(z), ErrorCode::kPrecondition,
          "Z does not contain the non-free part of S");
  const std::size_t n = act.size();
  const std::int64_t keep =
      RequiredKeep(static_cast<std::int64_t>(s.size()), eps);

  // Refine each color class by the resolution-cell signature of Sx so that
  // every level sV_{i,T} stays inside one cell.
  const auto color = ConflictColoring(act, s, z);
  std::map<std::pair<std::int64_t, std::vector<std::size_t>>,
           std::vector<State>>
      classes;
  for (State x = 0; x < n; ++x) {
    if (color[x] < 0) continue;
    std::vector<std::size_t> sig;
    sig.reserve(s.size());
    for (const auto& g : s) sig.push_back(act.cell_of(act.Act(g, x)));
    classes[{color[x], std::move(sig)}].push_back(x);
  }

  Castle castle;
  StateSubset a = y;  // A_{i-1}
  std::vector<State> images(s.size());
  for (const auto& [key, members] : classes) {
    // Towers of this class, keyed by T as a bitmask over S (sorted order).
    std::map<std::vector<bool>, std::vector<State>> by_shape;
    for (State x : members) {
      std::vector<bool> t(s.size());
      std::int64_t size = 0;
      for (std::size_t j = 0; j < s.size(); ++j) {
        images[j] = act.Act(s[j], x);
        t[j] = !a.Contains(images[j]);
        size += t[j] ? 1 : 0;
      }
      if (size >= keep) by_shape[t].push_back(x);
    }
    // Footprints are added only after the whole class is processed: every
    // V_{i,T} is defined relative to A_{i-1}.
    std::vector<std::pair<std::vector<bool>, std::vector<State>>> ordered(
        by_shape.begin(), by_shape.end());
    // Larger shapes first, then lexicographic in S order.
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& l, const auto& r) {
                       const auto cl = std::count(l.first.begin(), l.first.end(), true);
                       const auto cr = std::count(r.first.begin(), r.first.end(), true);
                       if (cl != cr) return cl > cr;
                       return l.first > r.first;
                     });
    for (auto& [mask, base] : ordered) {
      Tower tower;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (mask[j]) tower.shape.push_back(s[j]);
      }
      tower.base = std::move(base);
      castle.towers.push_back(std::move(tower));
    }
    for (auto it = castle.towers.end() - static_cast<std::ptrdiff_t>(ordered.size());
         it != castle.towers.end(); ++it) {
      for (const auto& g : it->shape) {
        for (State v : it->base) a.Insert(act.Act(g, v));
      }
    }
  }
  return castle;
}

L33Postconditions CheckL33(const Castle& castle, const FinAction& act,
                           const ElemSet& s_in, const Rational& eps,
                           const StateSubset& y, const StateSubset& z) {
  const ElemSet s = MakeElemSet(s_in);
  L33Postconditions r;
  auto note = [&r](const std::string& what) {
    if (r.detail.empty()) r.detail = what;
  };
  const CastleReport valid = ValidateCastle(castle, act);
  r.castle_valid = valid.valid;
  if (!valid.valid) {
    note(valid.message);
    return r;
  }

  // (i)
  r.bases_disjoint_outside_z = true;
  StateSubset seen(act.size());
  for (const auto& t : castle.towers) {
    for (State v : t.base) {
      if (z.Contains(v) || seen.Contains(v)) {
        r.bases_disjoint_outside_z = false;
        note("base point " + std::to_string(v) + " in Z or repeated");
      }
      seen.Insert(v);
    }
  }
  // (ii)
  r.levels_in_cells = true;
  for (const auto& t : castle.towers) {
    for (const auto& g : t.shape) {
      for (State v : t.base) {
        if (act.cell_of(act.Act(g, v)) !=
            act.cell_of(act.Act(g, t.base.front()))) {
          r.levels_in_cells = false;
          note("level " + FormatElem(g) + " spans two resolution cells");
        }
      }
    }
  }
  // (iii)
  r.shapes_large = true;
  for (const auto& t : castle.towers) {
    const ElemSet shape = MakeElemSet(t.shape);
    const bool subset =
        shape.size() == t.shape.size() &&
        std::includes(s.begin(), s.end(), shape.begin(), shape.end());
    if (!subset || Rational(static_cast<long>(shape.size())) <
                       (1 - eps) * static_cast<long>(s.size())) {
      r.shapes_large = false;
      note("shape not a large subset of S");
    }
  }
  // (iv)
  const StateSubset c = castle.Footprint(act);
  r.avoids_y = (c & y).Empty();
  if (!r.avoids_y) note("footprint meets Y");
  StateSubset full_span = y;
  for (const auto& t : castle.towers) {
    for (const auto& g : s) {
      for (State v : t.base) full_span.Insert(act.Act(g, v));
    }
  }
  r.union_identity = (y | c) == full_span;
  if (!r.union_identity) note("Y ⊔ C differs from Y ∪ S·V");
  r.s_orbit_coverage = true;
  const StateSubset yc = y | c;
  for (State x = 0; x < act.size(); ++x) {
    if (z.Contains(x)) continue;
    std::vector<State> piece;
    for (const auto& g : s) piece.push_back(act.Act(g, x));
    std::sort(piece.begin(), piece.end());
    piece.erase(std::unique(piece.begin(), piece.end()), piece.end());
    const auto hits = static_cast<long>(std::count_if(
        piece.begin(), piece.end(), [&](State w) { return yc.Contains(w); }));
    if (Rational(hits) < eps * static_cast<long>(s.size())) {
      r.s_orbit_coverage = false;
      note("coverage below ε|S| at state " + std::to_string(x));
      break;
    }
  }
  return r;
}

}  // namespace castellan
