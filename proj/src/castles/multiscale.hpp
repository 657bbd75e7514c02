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

#ifndef CASTELLAN_CASTLES_MULTISCALE_HPP_
#define CASTELLAN_CASTLES_MULTISCALE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "castles/castle.hpp"
#include "common/rational.hpp"
#include "dynamics/action.hpp"

namespace castellan {

// Almost finiteness in measure at a finite level: levels inside resolution
// cells, (K, δ)-invariant shapes, footprint lower Banach density ≥ 1−ε.
struct AfmCertificate {
  ElemSet k;
  std::size_t resolution_cells = 0;
  Rational eps;
  Rational delta;
  std::vector<Rational> per_tower_invariance;
  Rational density;
};

AfmCertificate MakeAfmCertificate(const Castle& castle, const FinAction& act,
                                  const ElemSet& k, const Rational& eps,
                                  const Rational& delta);

struct CheckOutcome {
  bool ok = true;
  std::string reason;

  void Fail(const std::string& why) {
    if (ok) reason = why;
    ok = false;
  }
};

// Recomputes every certificate field and every condition from scratch.
CheckOutcome AfmCheck(const Castle& castle, const AfmCertificate& cert,
                      const FinAction& act);

// Deterministic constants of the multi-scale algorithm.
struct MultiscaleConstants {
  Rational eps_in;  // min(ε, δ/(2+|K|+δ))
  std::int64_t n = 0;  // least n with (1−ε_in)^n < ε_in
  Rational beta;    // 2^{-k}, first feasible k
  Rational alpha;   // 1 − 2^{-j}, first feasible j for that β
};

MultiscaleConstants ChooseMultiscaleConstants(std::size_t k_size,
                                              const Rational& eps,
                                              const Rational& delta);

// α·(1−(1−ε(1+β))^n)/(1+β).
Rational GeometricLowerBound(const MultiscaleConstants& c);
// αε·Σ_{j<k}(1−ε(1+β))^j, the stage-k density target.
Rational StageBound(const MultiscaleConstants& c, std::int64_t k);

struct MultiscaleParams {
  ElemSet k;
  Rational eps;
  Rational delta;  // defaults to ε when zero
  std::int64_t folner_cap = 4096;
  std::int64_t ladder_cap = 16384;
};

struct StageRecord {
  std::int64_t k = 0;
  std::size_t folner_index = 0;  // F_{n−k+1}, zero-based
  std::vector<State> z;
  Rational z_upper;
  Rational z_bound;
  Rational density;  // lower Banach density of C_1 ⊔ … ⊔ C_k
  Rational target;   // StageBound(k)
  bool cond1 = false, cond2 = false, cond3 = false, cond4 = false,
       cond5 = false;
  bool l33 = false;
  // Finite-scale diagnostic: lower density of F·Z_k ∪ C_{≤k} against
  // (1−ε(1+β))·D(C_{<k}) + ε. May fail at finite size.
  Rational increment_lhs, increment_rhs;
  bool increment_holds = false;
};

// What a multi-scale run claims; enough to re-check everything.
struct MultiscaleClaim {
  MultiscaleConstants constants;
  std::vector<ElemSet> folner;  // F_1 ⊆ … ⊆ F_n
  std::vector<Castle> stage_castles;
};

struct MultiscaleResult {
  MultiscaleClaim claim;
  std::vector<Rational> folner_ratios;  // (K, ·) ratio of each F_j
  std::vector<Rational> ladder_ratios;  // max_{i<j} (F_i^{-1}, ·) ratio of F_j
  Rational ladder_target;               // β(1−ε_in)
  std::vector<StageRecord> stages;
  Castle castle;
  AfmCertificate certificate;
  Rational geometric_bound;
};

// The n-stage algorithm. Throws kPrecondition naming the stage whose
// non-free part is too dense.
MultiscaleResult BuildCastleT34(const FinAction& act,
                                const MultiscaleParams& params);

// Re-derives every stage record from a claim using checkers only.
// `ok` is false when any stage condition, Følner certification or the
// final certificate fails.
struct MultiscaleCheck {
  CheckOutcome outcome;
  std::vector<StageRecord> stages;
  std::vector<Rational> folner_ratios;
  std::vector<Rational> ladder_ratios;
  Castle castle;
};
MultiscaleCheck CheckMultiscale(const FinAction& act,
                                const MultiscaleParams& params,
                                const MultiscaleClaim& claim);

// Free-ness chain for every extreme invariant measure μ:
// 1 − μ(Fix g) ≥ Σ|S_i ∩ g^{-1}S_i|μ(V_i) ≥ (1−ε′)Σ|S_i|μ(V_i)
//   = (1−ε′)μ(footprint) ≥ (1−ε′)².
struct EssfreeReport {
  Rational bound;  // 1 − (1−ε′)²
  std::vector<Rational> fix_measures;
  std::vector<Rational> overlap_sums;
  std::vector<Rational> footprint_measures;
  bool certified = false;
};

// Throws kPrecondition unless every shape is ({g^{-1}}, ε′)-invariant and
// the footprint has lower Banach density ≥ 1−ε′.
EssfreeReport EssfreeBoundFromCastle(const Castle& castle, const WreathElem& g,
                                     const Rational& eps_prime,
                                     const FinAction& act);

// Finite form of the density-increment lemma: with T ∋ 1, F finite, A ⊆ B,
// hypotheses |{g∈F : gx ∈ T^{-1}A △ A}| ≤ β|{g∈F : gx ∈ A}| for all x and
// D_T(B) ≥ ε give D_{TF}(B) ≥ ((1−ε(1+β))·D_F(A) + ε)·|F|/|TF|.
struct IncrementCheck {
  bool hypotheses = false;
  Rational lhs, rhs;
  bool conclusion = false;
};
IncrementCheck DensityIncrementFinite(const FinAction& act, const ElemSet& t,
                                      const ElemSet& f, const StateSubset& a,
                                      const StateSubset& b,
                                      const Rational& eps,
                                      const Rational& beta);

}  // namespace castellan

#endif  // CASTELLAN_CASTLES_MULTISCALE_HPP_
