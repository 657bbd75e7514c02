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

#ifndef CASTELLAN_CASTLES_SUBEQUIVALENCE_HPP_
#define CASTELLAN_CASTLES_SUBEQUIVALENCE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "castles/multiscale.hpp"
#include "dynamics/action.hpp"

namespace castellan {

// A partition of A into pieces, each moved by one group element.
struct SubequivalenceWitness {
  std::vector<std::vector<State>> pieces;
  std::vector<WreathElem> movers;
};

struct SubequivalenceResult {
  bool found = false;
  bool cap_exceeded = false;
  std::string reason;
  SubequivalenceWitness witness;
};

// Matches every point of A to a distinct point of B in its orbit. Movers
// are shortest generator words, so their length is at most the orbit
// diameter. Points already in B stay put. Failure is inconclusive beyond
// finite pieces.
SubequivalenceResult FindSubequivalence(const StateSubset& a,
                                        const StateSubset& b,
                                        const FinAction& act,
                                        std::size_t edge_cap = 1u << 24);

// Pieces partition A; moved pieces are pairwise disjoint and inside B.
CheckOutcome CheckSubequivalence(const SubequivalenceWitness& w,
                                 const StateSubset& a, const StateSubset& b,
                                 const FinAction& act);

}  // namespace castellan

#endif  // CASTELLAN_CASTLES_SUBEQUIVALENCE_HPP_
