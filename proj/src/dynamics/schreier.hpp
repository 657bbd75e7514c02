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

#ifndef CASTELLAN_DYNAMICS_SCHREIER_HPP_
#define CASTELLAN_DYNAMICS_SCHREIER_HPP_

#include <cstdint>
#include <vector>

#include "common/rational.hpp"
#include "dynamics/action.hpp"

namespace castellan {

// Vertices are the states of an action; edges x → λx for λ in a finite
// symmetric label set Λ_0.
class SchreierGraph {
 public:
  static constexpr std::int64_t kInfinite = -1;

  SchreierGraph(const FinAction& act, ElemSet labels);

  std::size_t size() const { return size_; }
  const ElemSet& labels() const { return labels_; }
  State Neighbor(State x, std::size_t label) const {
    return perms_[label][x];
  }
  // ρ(x, Y_0) for every x by multi-source BFS; kInfinite when unreachable.
  std::vector<std::int64_t> DistanceTo(const StateSubset& y0) const;

 private:
  std::size_t size_;
  ElemSet labels_;
  std::vector<Perm> perms_;
};

// f(y) = min(ρ(y, Y_0), n) / n, stored as the integer numerator.
struct WeddingCakeFn {
  std::int64_t n = 1;
  std::vector<std::int64_t> level;

  Rational Value(State y) const { return MakeRational(level[y], n); }
  bool IsOne(State y) const { return level[y] == n; }
  std::size_t CountNotOne() const;
};

WeddingCakeFn WeddingCake(const SchreierGraph& graph, const StateSubset& y0,
                          std::int64_t n);

// (1 + |Λ_0| + … + |Λ_0|^{n−1})·|Y_0|.
BigInt WeddingCakeBound(std::size_t labels, std::int64_t n,
                        std::size_t y0_size);

// A section φ of ℤ → ℤ/N together with its defect set
// Y_0 ⊇ {t : λφ(t) ≠ φ(λ + t) for some λ ∈ K}.
struct SectionData {
  std::int64_t quotient_size = 0;
  std::vector<LambdaElem> phi;
  std::vector<LambdaElem> k;
  Rational eps;
  std::vector<std::int64_t> defect;  // sorted residues

  Rational DefectFraction() const {
    return MakeRational(static_cast<std::int64_t>(defect.size()),
                        quotient_size);
  }
};

// Canonical representatives φ(t) = t ∈ [0, N); the defect is computed
// exactly. No bound is enforced.
SectionData CanonicalSection(std::int64_t n, const std::vector<LambdaElem>& k);

// As above, but throws kPrecondition when the defect fraction is not below
// ε, which tells the caller to enlarge the quotient.
SectionData EquivariantSection(std::int64_t n,
                               const std::vector<LambdaElem>& k,
                               const Rational& eps);

// Re-derives π∘φ = id and the defect containment from scratch.
bool CheckSection(const SectionData& s);

}  // namespace castellan

#endif  // CASTELLAN_DYNAMICS_SCHREIER_HPP_
