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

#ifndef CASTELLAN_DYNAMICS_DENSITY_HPP_
#define CASTELLAN_DYNAMICS_DENSITY_HPP_

#include <vector>

#include "common/rational.hpp"
#include "dynamics/action.hpp"

namespace castellan {

// min_x |{t ∈ F : tx ∈ A}| / |F|.
Rational LowerDensityF(const ElemSet& f, const StateSubset& a,
                       const FinAction& act);
// max_x |{t ∈ F : tx ∈ A}| / |F|.
Rational UpperDensityF(const ElemSet& f, const StateSubset& a,
                       const FinAction& act);

// Orbit-fraction form of the Banach densities. Every subset of a finite
// space is clopen, so these equal the inf and sup of μ(A) over invariant
// probability measures.
Rational BanachLower(const StateSubset& a, const FinAction& act);
Rational BanachUpper(const StateSubset& a, const FinAction& act);

// |A ∩ O| / |O| for every orbit O, in orbit order.
std::vector<Rational> OrbitFractions(const StateSubset& a,
                                     const FinAction& act);

// A convex combination of the orbit-uniform measures.
struct InvariantMeasure {
  std::vector<Rational> weights;  // one per orbit

  Rational Measure(const StateSubset& a, const FinAction& act) const;
};

// The extreme points: one uniform measure per orbit.
std::vector<InvariantMeasure> InvariantMeasures(const FinAction& act);

// The η-interior approximation of an open set. In a finite space every set
// is clopen and the approximation is exact, so this returns A unchanged.
inline StateSubset InnerApproximation(const StateSubset& a,
                                      const Rational& /*eta*/) {
  return a;
}

}  // namespace castellan

#endif  // CASTELLAN_DYNAMICS_DENSITY_HPP_
