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

#include "zstab/formal.hpp"

#include <algorithm>
#include <optional>
#include <vector>

#include "common/error.hpp"

namespace castellan {

namespace {

void Accumulate(CoeffFn& fn, State x, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = fn.emplace(x, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) fn.erase(it);
}

Rational SupAbs(const CoeffFn& fn) {
  Rational best = 0;
  for (const auto& [x, c] : fn) best = std::max(best, Rational(abs(c)));
  return best;
}

}  // namespace

FormalElement FormalElement::Unitary(const FinAction& space,
                                     const WreathElem& g) {
  FormalElement out(space);
  for (State x = 0; x < space.size(); ++x) out.AddTerm(g, x, 1);
  return out;
}

FormalElement FormalElement::Function(const FinAction& space,
                                      const CoeffFn& a) {
  FormalElement out(space);
  for (const auto& [x, c] : a) out.AddTerm(WreathIdentity(), x, c);
  return out;
}

FormalElement FormalElement::Indicator(const FinAction& space,
                                       const StateSubset& set) {
  FormalElement out(space);
  for (State x : set.Members()) out.AddTerm(WreathIdentity(), x, 1);
  return out;
}

bool FormalElement::IsFunction() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first == WreathIdentity());
}

void FormalElement::AddTerm(const WreathElem& g, State x, const Rational& c) {
  Require(x < space_->size(), ErrorCode::kInvalidArgument,
          "coefficient state out of range");
  if (c == 0) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) it = terms_.emplace(g, CoeffFn{}).first;
  Accumulate(it->second, x, c);
  if (it->second.empty()) terms_.erase(it);
}

void FormalElement::CheckSpace(const FormalElement& other) const {
  Require(space_ == other.space_, ErrorCode::kInvalidArgument,
          "formal elements over different spaces");
}

CoeffFn TranslateFn(const FinAction& space, const WreathElem& g,
                    const CoeffFn& b) {
  // (g▷b)(gy) = b(y).
  CoeffFn out;
  for (const auto& [y, c] : b) out.emplace(space.Act(g, y), c);
  return out;
}

FormalElement FormalElement::Adjoint() const {
  // (a·u_g)* = (g^{-1}▷a)·u_{g^{-1}}.
  FormalElement out(*space_);
  for (const auto& [g, a] : terms_) {
    const WreathElem ginv = WreathInv(g);
    out.terms_.emplace(ginv, TranslateFn(*space_, ginv, a));
  }
  return out;
}

FormalElement FormalElement::operator-() const {
  FormalElement out = *this;
  for (auto& [g, a] : out.terms_) {
    for (auto& [x, c] : a) c = -c;
  }
  return out;
}

FormalElement& FormalElement::operator+=(const FormalElement& other) {
  CheckSpace(other);
  for (const auto& [g, b] : other.terms_) {
    for (const auto& [x, c] : b) AddTerm(g, x, c);
  }
  return *this;
}

FormalElement& FormalElement::operator-=(const FormalElement& other) {
  return *this += -other;
}

FormalElement& FormalElement::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, a] : terms_) {
    for (auto& [x, c] : a) c *= scalar;
  }
  return *this;
}

FormalElement operator*(const FormalElement& lhs, const FormalElement& rhs) {
  lhs.CheckSpace(rhs);
  const FinAction& space = *lhs.space_;
  // (a·u_g)(b·u_h) = (a·(g▷b))·u_{gh}; index rhs coefficients by state.
  std::vector<const WreathElem*> rhs_elem;
  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> by_state(
      space.size());
  for (const auto& [h, b] : rhs.terms_) {
    for (const auto& [y, c] : b) by_state[y].emplace_back(rhs_elem.size(), &c);
    rhs_elem.push_back(&h);
  }
  FormalElement out(space);
  for (const auto& [g, a] : lhs.terms_) {
    const WreathElem ginv = WreathInv(g);
    std::vector<std::optional<WreathElem>> product(rhs_elem.size());
    for (const auto& [x, c] : a) {
      const State y = space.Act(ginv, x);
      for (const auto& [k, bc] : by_state[y]) {
        if (!product[k]) product[k] = WreathMul(g, *rhs_elem[k]);
        out.AddTerm(*product[k], x, c * *bc);
      }
    }
  }
  return out;
}

NormBound FormalNormBound(const FormalElement& x) {
  NormBound nb;
  if (x.IsZero()) {
    nb.exact = true;
    return nb;
  }
  Rational l1 = 0, max_c = 0;
  std::vector<State> support;
  for (const auto& [g, a] : x.terms()) {
    const Rational s = SupAbs(a);
    l1 += s;
    max_c = std::max(max_c, s);
    for (const auto& [st, c] : a) support.push_back(st);
  }
  std::sort(support.begin(), support.end());
  const bool disjoint =
      std::adjacent_find(support.begin(), support.end()) == support.end();
  if (disjoint) {
    const FormalElement sq = x.Adjoint() * x;
    if (sq.IsFunction() &&
        (sq.IsZero() ? Rational(0) : SupAbs(sq.terms().begin()->second)) ==
            max_c * max_c) {
      nb.value = max_c;
      nb.exact = true;
      return nb;
    }
  }
  nb.value = l1;
  return nb;
}

}  // namespace castellan
