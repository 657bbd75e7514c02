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

#ifndef CASTELLAN_ZSTAB_FORMAL_HPP_
#define CASTELLAN_ZSTAB_FORMAL_HPP_

#include <map>

#include "common/rational.hpp"
#include "dynamics/action.hpp"

namespace castellan {

// A finitely supported rational function on the states.
using CoeffFn = std::map<State, Rational>;

// Σ_g a_g·u_g in C(X) ⋊ Γ for a finite Γ-space X. Coefficients are real,
// so the adjoint needs no conjugation. Zero coefficients and empty terms
// are never stored.
class FormalElement {
 public:
  explicit FormalElement(const FinAction& space) : space_(&space) {}

  static FormalElement Unitary(const FinAction& space, const WreathElem& g);
  static FormalElement Function(const FinAction& space, const CoeffFn& a);
  static FormalElement Indicator(const FinAction& space,
                                 const StateSubset& set);

  const FinAction& space() const { return *space_; }
  const std::map<WreathElem, CoeffFn>& terms() const { return terms_; }
  bool IsZero() const { return terms_.empty(); }
  // Only the identity term is present.
  bool IsFunction() const;

  void AddTerm(const WreathElem& g, State x, const Rational& c);

  FormalElement Adjoint() const;
  FormalElement operator-() const;
  FormalElement& operator+=(const FormalElement& other);
  FormalElement& operator-=(const FormalElement& other);
  FormalElement& operator*=(const Rational& scalar);

  friend FormalElement operator+(FormalElement a, const FormalElement& b) {
    return a += b;
  }
  friend FormalElement operator-(FormalElement a, const FormalElement& b) {
    return a -= b;
  }
  friend FormalElement operator*(const FormalElement& a,
                                 const FormalElement& b);
  friend bool operator==(const FormalElement& a, const FormalElement& b) {
    return a.space_ == b.space_ && a.terms_ == b.terms_;
  }

 private:
  void CheckSpace(const FormalElement& other) const;

  const FinAction* space_;
  std::map<WreathElem, CoeffFn> terms_;
};

// (g▷b)(x) = b(g^{-1}x).
CoeffFn TranslateFn(const FinAction& space, const WreathElem& g,
                    const CoeffFn& b);

struct NormBound {
  Rational value;
  bool exact = false;
};

// Exact when the coefficient supports are pairwise disjoint and x*x is a
// function with sup (max|c|)²; the value is then max|c|. Otherwise the
// ℓ1 bound Σ_g sup|a_g|, flagged inexact.
NormBound FormalNormBound(const FormalElement& x);

}  // namespace castellan

#endif  // CASTELLAN_ZSTAB_FORMAL_HPP_
