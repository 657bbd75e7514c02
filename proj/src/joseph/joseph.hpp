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

#ifndef CASTELLAN_JOSEPH_JOSEPH_HPP_
#define CASTELLAN_JOSEPH_JOSEPH_HPP_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "common/rational.hpp"
#include "dynamics/action.hpp"
#include "dynamics/schreier.hpp"

namespace castellan {

// Parameters attached to one γ = (g, δ) ≠ 1. The base is Λ = ℤ, so
// Λ_γ = p^a ℤ and a coset of Λ_γ is given by its residue mod p^a.
struct GammaParams {
  WreathElem gamma;
  std::int64_t p = 0;
  Rational eps;
  std::int64_t l = 0;
  std::int64_t a = 0;
  std::vector<std::int64_t> e_cosets;  // residues mod p^a, trivial first

  std::int64_t index() const;  // [Λ : Λ_γ] = p^a

  friend bool operator==(const GammaParams&, const GammaParams&) = default;
};

using ParamTable = std::vector<GammaParams>;

bool IsPrime(std::int64_t n);

// h ∈ A_γ: Σ_{λ ∈ q} h(λ) ∈ (pℤ)^d for all q ∈ E_γ.
bool AGammaContains(const LampConfig& h, const GammaParams& params,
                    std::size_t d);

// x ∈ Γ_E = (∩ A_γ) ⋊ (∩ Λ_γ).
bool GammaEContains(const WreathElem& x, const ParamTable& table,
                    std::size_t d);

struct ConditionReport {
  std::array<bool, 8> holds{};
  std::int64_t failing_index = -1;  // first table row violating something
  std::string detail;

  bool all() const {
    for (bool b : holds) {
      if (!b) return false;
    }
    return true;
  }
};

// Re-checks conditions (1)–(8) row by row. `product_floor` is the positive
// constant that Π(1 − ε_γ) must exceed.
ConditionReport CheckConditions(const ParamTable& table, std::size_t d,
                                const Rational& product_floor);

// Deterministic selector. Primes increase from above `prime_floor`, skipping
// primes already used or dividing a lamp value of g. ε_γ = 2^{-(i+1)} unless
// overridden; a is minimal for (5)–(7); E_γ is the trivial coset, then
// π(supp g), then the smallest residues, up to l = |supp g| + 1. Primes in
// `excluded` are never chosen (they belong to another table).
ParamTable ChooseParams(const std::vector<WreathElem>& gammas, std::size_t d,
                        std::int64_t prime_floor,
                        const Rational& product_floor = MakeRational(1, 4),
                        const std::vector<Rational>& eps_override = {},
                        const std::vector<std::int64_t>& excluded = {});

// (t mod N_E, residues) with residues laid out row-major over
// (table row, E_γ entry, coordinate).
struct CosetLabel {
  std::int64_t t = 0;
  std::vector<std::int64_t> residues;

  friend bool operator==(const CosetLabel&, const CosetLabel&) = default;
};

class QuotientSpace {
 public:
  QuotientSpace(ParamTable table, std::size_t d,
                std::uint64_t state_cap = 1000000);

  const ParamTable& table() const { return table_; }
  std::size_t dim() const { return d_; }
  std::int64_t lambda_index() const { return n_e_; }  // [Λ : Λ_E]
  std::int64_t prime_product() const;                 // Q = Π p_γ
  std::size_t size() const { return action_.size(); }
  const FinAction& action() const { return action_; }

  CosetLabel LabelOf(const WreathElem& x) const;
  State Encode(const CosetLabel& label) const;
  CosetLabel Decode(State s) const;
  State StateOf(const WreathElem& x) const { return Encode(LabelOf(x)); }

  // Offset of residue (row, E_γ entry, coordinate) in CosetLabel::residues.
  std::size_t ResidueSlot(std::size_t row, std::size_t entry,
                          std::size_t coord) const;

 private:
  FinAction BuildAction() const;

  ParamTable table_;
  std::size_t d_;
  std::int64_t n_e_ = 1;
  std::vector<std::int64_t> radix_;  // modulus per residue slot
  std::vector<std::size_t> row_offset_;
  FinAction action_;
};

// Seeded probe of label_of: for random x, a random z ∈ Γ_E and a random y,
// LabelOf(x) = LabelOf(xz), and LabelOf(x) = LabelOf(y) iff x^{-1}y ∈ Γ_E.
struct LabelTrialReport {
  std::int64_t trials = 0;
  std::int64_t constant_violations = 0;
  std::int64_t separation_violations = 0;
  std::int64_t separated = 0;  // pairs in different cosets
  std::vector<WreathElem> samples;  // x, z, y per trial
};
LabelTrialReport LabelTrials(const QuotientSpace& q, std::int64_t trials,
                             std::uint64_t seed);

// A uniformly seeded element of Γ_E: lamps corrected coset by coset to lie
// in every A_γ, shift a multiple of [Λ : Λ_E].
WreathElem RandomGammaEElement(const QuotientSpace& q, std::mt19937_64& rng);

// X_{E′} → X_E for E a sub-table of E′ (every row of E appears in E′).
// Throws kInvalidArgument when the tables are not nested.
std::vector<State> RefinementMap(const QuotientSpace& fine,
                                 const QuotientSpace& coarse);

Rational FixedFraction(const WreathElem& g, const QuotientSpace& q);

// Labels with t = 0 whose first residue coordinate at the trivial coset of
// every row is zero.
StateSubset WSet(const QuotientSpace& q);

struct PartitionReport {
  bool partition = false;
  std::size_t pieces = 0;
  std::size_t covered = 0;
  std::size_t overlaps = 0;
  std::string detail;
};

// The sets (jP ξ_1^{φ(t)})(φ(t)·W), t ∈ Λ/Λ_E, 0 ≤ j < Q, against X_E.
PartitionReport PartitionCheck(const QuotientSpace& q,
                               const SectionData& section, std::int64_t p_mult);

// ξ_k^{0} φ(t)W = φ(t)W for every k and every t with φ(t) outside all Λ_γ.
bool LampFixesTranslatedW(const QuotientSpace& q, const SectionData& section);

}  // namespace castellan

#endif  // CASTELLAN_JOSEPH_JOSEPH_HPP_
