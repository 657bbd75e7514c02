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

#ifndef CASTELLAN_DYNAMICS_FOLNER_HPP_
#define CASTELLAN_DYNAMICS_FOLNER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "common/rational.hpp"
#include "group_core/wreath.hpp"

namespace castellan {

// |KF △ F| / |F| with KF = {kf : k ∈ K, f ∈ F}.
Rational FolnerInvariance(const ElemSet& f, const ElemSet& k);

// The shifts [lo, hi).
ElemSet IntervalSet(std::int64_t lo, std::int64_t hi);

// A product of lamp-value ranges: positions listed carry a closed range per
// coordinate, every other position is pinned to 0.
class LampBox {
 public:
  using Range = std::pair<std::int64_t, std::int64_t>;

  explicit LampBox(std::size_t d = 1) : d_(d) {}

  void SetRange(std::int64_t pos, std::vector<Range> ranges);
  LampBox Translate(const WreathElem& g) const;
  std::optional<LampBox> Intersect(const LampBox& other) const;
  BigInt Count() const;
  bool Contains(const LampConfig& f) const;
  const std::map<std::int64_t, std::vector<Range>>& ranges() const {
    return ranges_;
  }

 private:
  std::vector<Range> RangeAt(std::int64_t pos) const;
  void Canonicalize();

  std::size_t d_;
  std::map<std::int64_t, std::vector<Range>> ranges_;
};

// A finite subset of ℤ^d ≀ ℤ given as one lamp box per shift value. Closed
// under left translation and intersection, so Følner ratios of very large
// sets can be counted exactly.
class FiberedBoxSet {
 public:
  explicit FiberedBoxSet(std::size_t d = 1) : d_(d) {}

  // Shifts lo..hi-1 with trivial lamps.
  static FiberedBoxSet Interval(std::size_t d, std::int64_t lo,
                                std::int64_t hi);
  // Lamps at position 0 with values in [0, n)^d.
  static FiberedBoxSet LatticeBox(std::size_t d, std::int64_t n);
  // {(h, μ) : |μ| ≤ R, supp h ⊆ [μ−R, μ+R], ‖h‖∞ ≤ M}.
  static FiberedBoxSet WreathBall(std::size_t d, std::int64_t r,
                                  std::int64_t m);

  std::size_t dim() const { return d_; }
  FiberedBoxSet LeftTranslate(const WreathElem& g) const;
  FiberedBoxSet Intersect(const FiberedBoxSet& other) const;
  BigInt Count() const;
  bool Contains(const WreathElem& g) const;
  // Explicit element list; throws kCapExceeded above `cap` elements.
  ElemSet Enumerate(std::size_t cap) const;

 private:
  std::size_t d_;
  std::map<std::int64_t, LampBox> fibers_;
};

// Same ratio as FolnerInvariance, counted by inclusion–exclusion over the
// subsets of K (|K| ≤ 16).
Rational FolnerInvariance(const FiberedBoxSet& f, const ElemSet& k);

enum class GroupKind { kIntegers, kLattice, kWreath };

const char* GroupKindName(GroupKind kind);
GroupKind ParseGroupKind(const std::string& name);

struct FolnerResult {
  GroupKind kind = GroupKind::kIntegers;
  std::int64_t size = 0;   // N for intervals and boxes, R for wreath balls
  std::int64_t lamp_bound = 0;  // M for wreath balls
  FiberedBoxSet set;
  BigInt cardinality;
  Rational ratio;
};

// Grows the canonical family of the group kind until the ratio drops below
// ε. ℤ: [0,N); ℤ^d: [0,N)^d at position 0; wreath: WreathBall(R, R²).
// Throws kCapExceeded once the size parameter passes `cap`.
FolnerResult FolnerSupplier(GroupKind kind, std::size_t d, const ElemSet& k,
                            const Rational& eps, std::int64_t cap = 4096);

// Largest ε for which every (K, ε)-invariant F and every F′ ⊆ F with
// |F′| ≥ (1−ε)|F| leave F′ (K, δ)-invariant: δ / (2 + |K| + δ).
Rational ShrinkEpsilon(std::size_t k_size, const Rational& delta);

// True iff F′ (required to be a subset of F) is (K, δ)-invariant.
bool ShrinkPreservesInvariance(const ElemSet& f, const ElemSet& f_sub,
                               const ElemSet& k, const Rational& delta);

}  // namespace castellan

#endif  // CASTELLAN_DYNAMICS_FOLNER_HPP_
