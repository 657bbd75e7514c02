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

#include "dynamics/density.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace castellan {

namespace {

std::pair<std::size_t, std::size_t> HitRange(const ElemSet& f,
                                             const StateSubset& a,
                                             const FinAction& act) {
  Require(!f.empty(), ErrorCode::kInvalidArgument,
          "density needs a nonempty set F");
  std::size_t lo = f.size(), hi = 0;
  for (State x = 0; x < act.size(); ++x) {
    std::size_t hits = 0;
    for (const auto& t : f) hits += a.Contains(act.Act(t, x)) ? 1 : 0;
    lo = std::min(lo, hits);
    hi = std::max(hi, hits);
  }
  return {lo, hi};
}

}  // namespace

Rational LowerDensityF(const ElemSet& f, const StateSubset& a,
                       const FinAction& act) {
  const auto [lo, hi] = HitRange(f, a, act);
  return MakeRational(static_cast<std::int64_t>(lo),
                      static_cast<std::int64_t>(f.size()));
}

Rational UpperDensityF(const ElemSet& f, const StateSubset& a,
                       const FinAction& act) {
  const auto [lo, hi] = HitRange(f, a, act);
  return MakeRational(static_cast<std::int64_t>(hi),
                      static_cast<std::int64_t>(f.size()));
}

std::vector<Rational> OrbitFractions(const StateSubset& a,
                                     const FinAction& act) {
  std::vector<Rational> out;
  for (const auto& orbit : act.orbits()) {
    std::int64_t hits = 0;
    for (State x : orbit) hits += a.Contains(x) ? 1 : 0;
    out.push_back(MakeRational(hits, static_cast<std::int64_t>(orbit.size())));
  }
  return out;
}

Rational BanachLower(const StateSubset& a, const FinAction& act) {
  const auto fr = OrbitFractions(a, act);
  return *std::min_element(fr.begin(), fr.end());
}

Rational BanachUpper(const StateSubset& a, const FinAction& act) {
  const auto fr = OrbitFractions(a, act);
  return *std::max_element(fr.begin(), fr.end());
}

Rational InvariantMeasure::Measure(const StateSubset& a,
                                   const FinAction& act) const {
  Require(weights.size() == act.orbits().size(), ErrorCode::kInvalidArgument,
          "measure does not match the orbit count");
  const auto fr = OrbitFractions(a, act);
  Rational total = 0;
  for (std::size_t i = 0; i < fr.size(); ++i) total += weights[i] * fr[i];
  return total;
}

std::vector<InvariantMeasure> InvariantMeasures(const FinAction& act) {
  const std::size_t k = act.orbits().size();
  std::vector<InvariantMeasure> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i].weights.assign(k, Rational(0));
    out[i].weights[i] = 1;
  }
  return out;
}

}  // namespace castellan
