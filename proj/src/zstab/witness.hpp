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

#ifndef CASTELLAN_ZSTAB_WITNESS_HPP_
#define CASTELLAN_ZSTAB_WITNESS_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "common/rational.hpp"
#include "dynamics/schreier.hpp"
#include "joseph/joseph.hpp"
#include "zstab/formal.hpp"

namespace castellan {

struct WitnessSpec {
  std::int64_t n = 2;
  std::size_t d = 1;
  Rational eps = MakeRational(1, 2);
  // The base level X_F.
  std::vector<WreathElem> f_gammas = {ShiftElem(1)};
  std::int64_t f_prime_floor = 1;
  std::vector<LambdaElem> lambda0 = {1, -1};
  // S_0: indicator of these X_F states.
  std::vector<State> s0_states = {0};
  // a: indicator of these X_F states; empty means a = 1.
  std::vector<State> a_states;
  std::uint64_t state_cap = 1000000;
  int max_gammas = 3;
  std::int64_t prime_cap = 100000;
};

// Every component of the order-zero map ρ : M_n → C(X_E) ⋊ Γ.
struct OrderZeroWitness {
  WitnessSpec spec;
  std::vector<LambdaElem> lambda0;  // symmetrized
  ParamTable f_table;
  std::int64_t p_mult = 1;          // P = Π_{κ∈F} p_κ
  ParamTable e_table;
  std::int64_t q = 1;               // Q = Π_{γ∈E} p_γ
  std::int64_t m = 0;
  Rational eta;
  SectionData section;
  std::vector<std::int64_t> y0;     // sorted residues
  WeddingCakeFn cake;
  std::int64_t c = 0, r = 0;        // Q = nc + r
  std::shared_ptr<const QuotientSpace> x_e;
  std::shared_ptr<const QuotientSpace> x_f;
  std::size_t w_size = 0;
  // Per state of X_E: the (t, l) with x ∈ lPξ_1^{φ(t)}φ(t)W.
  std::vector<std::int64_t> piece_t, piece_l;
  StateSubset x_r;
  std::vector<std::vector<FormalElement>> rho, psi;

  // j with x ∈ X_{E,j,t}, or -1 on X_R.
  std::int64_t RowOf(State x) const;
};

// Searches E (primes above 2n/ε and outside F, more γ's only after a
// larger prime floor fails) and assembles ρ and ψ.
OrderZeroWitness BuildWitness(const WitnessSpec& spec);

// The choices BuildWitness makes; everything else follows from the spec.
struct WitnessChoice {
  ParamTable e_table;
  std::vector<LambdaElem> phi;
  std::vector<std::int64_t> y0;
  std::vector<std::int64_t> cake_levels;
};

inline WitnessChoice ChoiceOf(const OrderZeroWitness& w) {
  return {w.e_table, w.section.phi, w.y0, w.cake.level};
}

// Rebuilds ψ and ρ from recorded choices without any search. The result is
// only as good as the choices; run the verifiers on it.
OrderZeroWitness AssembleWitness(const WitnessSpec& spec,
                                 const WitnessChoice& choice);

struct StructureReport {
  bool m_ok = false, eta_ok = false, section_ok = false, cake_ok = false,
       decomposition_ok = false, cut_small = false;
  std::string detail;
  bool all() const {
    return m_ok && eta_ok && section_ok && cake_ok && decomposition_ok &&
           cut_small;
  }
};
StructureReport CheckWitnessStructure(const OrderZeroWitness& w);

struct RelationReport {
  bool ok = false;
  std::size_t checked = 0;
  std::string detail;
};
// ψ(e_ij)ψ(e_kl) = δ_jk ψ(e_il), ψ(e_ij)* = ψ(e_ji).
RelationReport VerifyPsiHomomorphism(const OrderZeroWitness& w);
// ρ(e_ij) = ρ(1)ψ(e_ij) = ψ(e_ij)ρ(1), and 0 ≤ ρ(1) ≤ 1.
RelationReport VerifyOrderZero(const OrderZeroWitness& w);

struct TraceGapReport {
  Rational supp_a;       // μ(supp a) on X_F
  Rational gap;          // μ(supp(1 − ρ(1))) by counting
  Rational measure_xr;   // μ(X_R), counted
  Rational measure_cut;  // μ(⊔_{f(t)≠1, j} X_{E,j,t}), counted
  Rational formula_xr;   // r/Q
  Rational formula_cut;  // |{f≠1}|·n·c / (|Λ/Λ_E|·Q)
  Rational bound;        // n/Q + |{f≠1}|/|Λ/Λ_E|
  bool support_matches = false;  // supp(1−ρ(1)) is exactly X_R ∪ the cut
  bool certified = false;        // gap < ε ≤ μ(supp a), formulas agree
};
// Throws kPrecondition unless μ(supp a) > ε.
TraceGapReport VerifyTraceGap(const OrderZeroWitness& w);

enum class SpecKind { kIndicator, kLamp, kShift };

struct SpecElement {
  SpecKind kind = SpecKind::kIndicator;
  std::size_t lamp = 1;   // k for ξ_k^1
  LambdaElem shift = 1;   // λ ∈ Λ_0
  std::string Name() const;
};

// The elements of S: the S_0 indicator, ξ_k^1 for every k, Λ_0.
std::vector<SpecElement> SpecElements(const OrderZeroWitness& w);

struct DefectReport {
  SpecElement element;
  std::vector<NormBound> per_unit;  // row-major over (i, j)
  NormBound worst;
  Rational analytic_bound;  // 0, or 1/m + max_{t∈λY_0} f(t) for shifts
  bool within = false;      // worst ≤ analytic bound and ≤ ε, exact tier
};
// ‖s·ρ(e_ij) − ρ(e_ij)·s‖ for all i, j. The S_0 indicator lives on X_F, so
// it is compared on the joint level X_{E∪F}.
DefectReport CommutatorDefect(const OrderZeroWitness& w, const SpecElement& s);

}  // namespace castellan

#endif  // CASTELLAN_ZSTAB_WITNESS_HPP_
