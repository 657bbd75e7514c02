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

#ifndef CASTELLAN_CASTLES_CASTLE_HPP_
#define CASTELLAN_CASTLES_CASTLE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "common/rational.hpp"
#include "dynamics/action.hpp"

namespace castellan {

// A shape S with a base V; the levels are the sets sV.
struct Tower {
  std::vector<WreathElem> shape;
  std::vector<State> base;

  friend bool operator==(const Tower&, const Tower&) = default;
};

struct Castle {
  std::vector<Tower> towers;

  StateSubset Footprint(const FinAction& act) const;
  // Total number of (level, base point) incidences, i.e. Σ|S_i||V_i|.
  std::size_t LevelPointCount() const;

  friend bool operator==(const Castle&, const Castle&) = default;
};

struct CastleReport {
  bool valid = true;
  std::string message;
  // First point covered twice, with the two (tower, shape index) owners.
  std::optional<State> point;
  std::size_t first_tower = 0, first_level = 0;
  std::size_t second_tower = 0, second_level = 0;
};

// Checks that all levels of all towers are pairwise disjoint.
CastleReport ValidateCastle(const Castle& castle, const FinAction& act);

// Single-scale castle: shapes T ⊆ S with
// |T| ≥ (1−ε)|S|, bases inside X∖Z, footprint disjoint from Y.
Castle BuildCastleL33(const FinAction& act, const ElemSet& s,
                      const Rational& eps, const StateSubset& y,
                      const StateSubset& z);

struct L33Postconditions {
  bool bases_disjoint_outside_z = false;  // (i)
  bool levels_in_cells = false;           // (ii)
  bool shapes_large = false;              // (iii)
  bool avoids_y = false;                  // (iv)(a)
  bool union_identity = false;            // (iv)(b)
  bool s_orbit_coverage = false;          // (iv)(c)
  bool castle_valid = false;
  std::string detail;

  bool all() const {
    return bases_disjoint_outside_z && levels_in_cells && shapes_large &&
           avoids_y && union_identity && s_orbit_coverage && castle_valid;
  }
};

// Re-checks every postcondition from scratch by brute force.
L33Postconditions CheckL33(const Castle& castle, const FinAction& act,
                           const ElemSet& s, const Rational& eps,
                           const StateSubset& y, const StateSubset& z);

}  // namespace castellan

#endif  // CASTELLAN_CASTLES_CASTLE_HPP_
