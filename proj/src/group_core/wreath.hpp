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

#ifndef CASTELLAN_GROUP_CORE_WREATH_HPP_
#define CASTELLAN_GROUP_CORE_WREATH_HPP_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace castellan {

// The base group Λ. Version 1 ships the integers only; the concept below is
// what the rest of the library needs from a base group.
template <typename G>
concept BaseGroup = requires(typename G::Elem a, typename G::Elem b,
                             std::int64_t n) {
  { G::Identity() } -> std::same_as<typename G::Elem>;
  { G::Mul(a, b) } -> std::same_as<typename G::Elem>;
  { G::Inv(a) } -> std::same_as<typename G::Elem>;
  { G::Generators() } -> std::same_as<std::vector<typename G::Elem>>;
  // Image in the finite quotient by the n-th supplied normal subgroup.
  { G::Quotient(a, n) } -> std::same_as<std::int64_t>;
};

struct IntegerGroup {
  using Elem = std::int64_t;
  static Elem Identity() { return 0; }
  static Elem Mul(Elem a, Elem b) { return a + b; }
  static Elem Inv(Elem a) { return -a; }
  static std::vector<Elem> Generators() { return {1, -1}; }
  // Reduction modulo the subgroup nℤ, as the representative in [0, n).
  static std::int64_t Quotient(Elem a, std::int64_t n) {
    const std::int64_t r = a % n;
    return r < 0 ? r + n : r;
  }
};

static_assert(BaseGroup<IntegerGroup>);

using LambdaElem = IntegerGroup::Elem;

inline std::int64_t Mod(std::int64_t a, std::int64_t n) {
  return IntegerGroup::Quotient(a, n);
}

// A point of ℤ^d.
class ZdVector {
 public:
  ZdVector() = default;
  ZdVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}
  static ZdVector Zero(std::size_t dim) {
    return ZdVector(std::vector<std::int64_t>(dim, 0));
  }
  explicit ZdVector(std::vector<std::int64_t> coords)
      : coords_(std::move(coords)) {}

  // e_j for j in 1..dim.
  static ZdVector Unit(std::size_t dim, std::size_t j, std::int64_t n = 1);

  std::size_t dim() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::int64_t first() const { return coords_.empty() ? 0 : coords_[0]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  bool IsZero() const;

  ZdVector& operator+=(const ZdVector& other);
  friend ZdVector operator+(ZdVector a, const ZdVector& b) { return a += b; }
  ZdVector operator-() const;
  friend ZdVector operator-(ZdVector a, const ZdVector& b) { return a += -b; }

  friend bool operator==(const ZdVector&, const ZdVector&) = default;
  friend auto operator<=>(const ZdVector&, const ZdVector&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

// Finitely supported map Λ → ℤ^d, kept sorted by position with no zero
// values stored, so structural equality is map equality.
class LampConfig {
 public:
  using Entry = std::pair<LambdaElem, ZdVector>;

  LampConfig() = default;
  // Entries may be unsorted, repeated or zero; they are summed.
  explicit LampConfig(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  std::vector<LambdaElem> Support() const;
  // f(λ), or the zero vector of dimension `dim` off the support.
  ZdVector At(LambdaElem pos, std::size_t dim) const;

  LampConfig& operator+=(const LampConfig& other);
  friend LampConfig operator+(LampConfig a, const LampConfig& b) {
    return a += b;
  }
  LampConfig operator-() const;

  friend bool operator==(const LampConfig&, const LampConfig&) = default;
  friend auto operator<=>(const LampConfig&, const LampConfig&) = default;

 private:
  std::vector<Entry> entries_;
};

// β_λ(f)(λ′) = f(λ^{-1}λ′).
LampConfig BetaShift(LambdaElem lambda, const LampConfig& f);

// An element (f, λ) of ℤ^d ≀ Λ.
struct WreathElem {
  LampConfig lamps;
  LambdaElem shift = 0;

  bool IsIdentity() const { return shift == 0 && lamps.empty(); }

  friend bool operator==(const WreathElem&, const WreathElem&) = default;
  friend auto operator<=>(const WreathElem&, const WreathElem&) = default;
};

WreathElem WreathIdentity();
WreathElem WreathMul(const WreathElem& a, const WreathElem& b);
WreathElem WreathInv(const WreathElem& a);
// a^n for any integer n.
WreathElem WreathPow(const WreathElem& a, std::int64_t n);

// Pure shift by δ.
WreathElem ShiftElem(LambdaElem delta);
// n·ξ_j^λ in dimension d, j in 1..d.
WreathElem XiGenerator(std::size_t d, std::size_t j, LambdaElem lambda,
                       std::int64_t n = 1);

struct WreathHash {
  std::size_t operator()(const WreathElem& g) const;
};

// Text syntax: "e" | INT (shift) | "x<j>@<λ>[^<n>]", joined with '*'.
std::string FormatElem(const WreathElem& g);
WreathElem ParseElem(const std::string& text, std::size_t d);

// Finite sets of group elements as sorted, duplicate-free vectors.
using ElemSet = std::vector<WreathElem>;
ElemSet MakeElemSet(std::vector<WreathElem> elems);
ElemSet ShiftSet(const std::vector<LambdaElem>& shifts);
// {st : s ∈ S, t ∈ T}.
ElemSet SetProduct(const ElemSet& s, const ElemSet& t);
ElemSet InverseSet(const ElemSet& s);

}  // namespace castellan

#endif  // CASTELLAN_GROUP_CORE_WREATH_HPP_
