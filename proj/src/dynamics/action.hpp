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

#ifndef CASTELLAN_DYNAMICS_ACTION_HPP_
#define CASTELLAN_DYNAMICS_ACTION_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "group_core/wreath.hpp"

namespace castellan {

using State = std::uint32_t;
using Perm = std::vector<State>;

// Membership bitmask over the states of a finite action.
class StateSubset {
 public:
  StateSubset() = default;
  explicit StateSubset(std::size_t n, bool full = false)
      : bits_(n, full ? 1 : 0) {}
  static StateSubset FromStates(std::size_t n, const std::vector<State>& xs);

  std::size_t universe() const { return bits_.size(); }
  bool Contains(State x) const { return bits_[x] != 0; }
  void Insert(State x) { bits_[x] = 1; }
  void Erase(State x) { bits_[x] = 0; }
  std::size_t Count() const;
  bool Empty() const { return Count() == 0; }
  std::vector<State> Members() const;

  StateSubset Complement() const;
  StateSubset& operator|=(const StateSubset& other);
  StateSubset& operator&=(const StateSubset& other);
  friend StateSubset operator|(StateSubset a, const StateSubset& b) {
    return a |= b;
  }
  friend StateSubset operator&(StateSubset a, const StateSubset& b) {
    return a &= b;
  }
  StateSubset Minus(const StateSubset& other) const;
  bool IsSubsetOf(const StateSubset& other) const;

  friend bool operator==(const StateSubset&, const StateSubset&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// A permutation with its cycle decomposition, so any power is O(1).
class CyclicPerm {
 public:
  CyclicPerm() = default;
  explicit CyclicPerm(Perm image);

  std::size_t size() const { return image_.size(); }
  const Perm& image() const { return image_; }
  State Apply(State x, std::int64_t power = 1) const;
  bool IsIdentity() const;

 private:
  Perm image_;
  std::vector<std::uint32_t> cycle_of_;
  std::vector<std::uint32_t> index_in_cycle_;
  std::vector<std::vector<State>> cycles_;
};

// A finite Γ-space for Γ = ℤ^d ≀ ℤ, given by the permutation of the shift
// generator and, optionally, of the lamp generators ξ_k^0. Lamps at other
// positions act through the conjugates shift^λ ξ_k^0 shift^{-λ}. Actions
// with no lamp permutations let the lamp subgroup act trivially.
class FinAction {
 public:
  FinAction(std::size_t d, Perm shift, std::vector<Perm> lamps = {},
            std::vector<std::vector<State>> resolution = {});

  // ℤ acting on ℤ/n by +1.
  static FinAction Cyclic(std::size_t n, std::size_t d = 1);

  std::size_t size() const { return shift_.size(); }
  std::size_t dim() const { return d_; }
  bool has_lamps() const { return !lamps_.empty(); }
  const CyclicPerm& shift_perm() const { return shift_; }
  const std::vector<CyclicPerm>& lamp_perms() const { return lamps_; }

  State Act(const WreathElem& g, State x) const;
  // Image of x under shift^δ.
  State Shift(State x, std::int64_t delta) const {
    return shift_.Apply(x, delta);
  }
  // Permutation of the whole state set induced by g.
  Perm PermOf(const WreathElem& g) const;
  // {gx : x ∈ A}.
  StateSubset Translate(const WreathElem& g, const StateSubset& a) const;

  std::size_t cell_of(State x) const { return cell_of_[x]; }
  std::size_t num_cells() const { return num_cells_; }
  std::vector<std::vector<State>> Cells() const;

  const std::vector<std::vector<State>>& orbits() const { return orbits_; }
  std::size_t orbit_of(State x) const { return orbit_of_[x]; }

  // Generators as (element, permutation) pairs: the shift, then ξ_k^0.
  std::vector<std::pair<WreathElem, Perm>> Generators() const;

  // Checks commutation of lamp generators at positions in [-window, window]
  // on `trials` states drawn with the given seed.
  bool CheckLampRelations(std::uint64_t seed, int trials,
                          std::int64_t window) const;

 private:
  void ComputeOrbits();

  std::size_t d_;
  CyclicPerm shift_;
  std::vector<CyclicPerm> lamps_;
  std::vector<std::size_t> cell_of_;
  std::size_t num_cells_ = 0;
  std::vector<std::vector<State>> orbits_;
  std::vector<std::size_t> orbit_of_;
};

// Fix(g) = {x : gx = x}.
StateSubset FixSet(const WreathElem& g, const FinAction& act);

// ∪_{g ∈ F^{-1}F, g ≠ 1} Fix(g): the states where t ↦ tx is not injective
// on F.
StateSubset NonfreePart(const ElemSet& f, const FinAction& act);

}  // namespace castellan

#endif  // CASTELLAN_DYNAMICS_ACTION_HPP_
