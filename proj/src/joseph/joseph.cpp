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

#include "joseph/joseph.hpp"

#include <algorithm>
#include <set>

#include "common/error.hpp"

namespace castellan {

namespace {

std::int64_t PowInt(std::int64_t base, std::int64_t exp) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string Row(std::size_t i) { return "row " + std::to_string(i); }

// Values taken by g, ignoring the implicit zeros.
bool ValueDivisibleBy(const ZdVector& v, std::int64_t p, std::size_t d) {
  for (std::size_t k = 0; k < d; ++k) {
    if (v[k] % p != 0) return false;
  }
  return true;
}

}  // namespace

std::int64_t GammaParams::index() const { return PowInt(p, a); }

bool IsPrime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

bool AGammaContains(const LampConfig& h, const GammaParams& params,
                    std::size_t d) {
  const std::int64_t n = params.index();
  for (std::int64_t r : params.e_cosets) {
    ZdVector sum = ZdVector::Zero(d);
    for (const auto& [pos, v] : h.entries()) {
      if (Mod(pos, n) == r) sum += v;
    }
    if (!ValueDivisibleBy(sum, params.p, d)) return false;
  }
  return true;
}

bool GammaEContains(const WreathElem& x, const ParamTable& table,
                    std::size_t d) {
  for (const auto& row : table) {
    if (Mod(x.shift, row.index()) != 0) return false;
    if (!AGammaContains(x.lamps, row, d)) return false;
  }
  return true;
}

ConditionReport CheckConditions(const ParamTable& table, std::size_t d,
                                const Rational& product_floor) {
  ConditionReport rep;
  rep.holds.fill(true);
  auto fail = [&rep](int cond, std::size_t row, const std::string& why) {
    rep.holds[static_cast<std::size_t>(cond - 1)] = false;
    if (rep.failing_index < 0) {
      rep.failing_index = static_cast<std::int64_t>(row);
      rep.detail = "condition (" + std::to_string(cond) + ") fails at " +
                   Row(row) + ": " + why;
    }
  };
  std::set<std::int64_t> primes;
  Rational product = 1;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const GammaParams& g = table[i];
    const WreathElem& gamma = g.gamma;
    if (gamma == WreathIdentity()) fail(1, i, "gamma is the identity");
    if (!IsPrime(g.p) || !primes.insert(g.p).second) {
      fail(1, i, "p = " + std::to_string(g.p) + " is not a fresh prime");
      continue;
    }
    for (const auto& [pos, v] : gamma.lamps.entries()) {
      if (ValueDivisibleBy(v, g.p, d)) {
        fail(2, i, "lamp value at " + std::to_string(pos) + " lies in pZ^d");
      }
    }
    if (!(g.eps > 0 && g.eps < 1)) fail(3, i, "epsilon outside (0, 1)");
    product *= 1 - g.eps;
    const auto supp = gamma.lamps.Support();
    if (!(g.l > static_cast<std::int64_t>(supp.size()))) {
      fail(4, i, "l does not exceed |supp g|");
    }
    if (g.a < 1 || g.index() <= 0) {
      fail(5, i, "index is not a positive power of p");
      continue;
    }
    const std::int64_t n = g.index();
    if (!(g.eps * n > g.l)) fail(5, i, "eps * index <= l");
    for (std::size_t x = 0; x < supp.size(); ++x) {
      for (std::size_t y = x + 1; y < supp.size(); ++y) {
        if (Mod(supp[y] - supp[x], n) == 0) {
          fail(6, i, "two support points share a coset");
        }
      }
    }
    if (gamma.shift != 0 && Mod(gamma.shift, n) == 0) {
      fail(7, i, "shift lies in the subgroup");
    }
    std::set<std::int64_t> cosets;
    bool in_range = true;
    for (std::int64_t r : g.e_cosets) {
      in_range = in_range && r >= 0 && r < n;
      cosets.insert(r);
    }
    if (!in_range || cosets.size() != g.e_cosets.size() ||
        static_cast<std::int64_t>(cosets.size()) != g.l || !cosets.count(0)) {
      fail(8, i, "E must be l distinct cosets including the trivial one");
    }
    for (std::int64_t s : supp) {
      if (!cosets.count(Mod(s, n))) fail(8, i, "support leaves E");
    }
  }
  if (!(product > product_floor)) {
    fail(3, table.empty() ? 0 : table.size() - 1,
         "product of (1 - eps) is not above " + FormatRational(product_floor));
  }
  return rep;
}

ParamTable ChooseParams(const std::vector<WreathElem>& gammas, std::size_t d,
                        std::int64_t prime_floor,
                        const Rational& product_floor,
                        const std::vector<Rational>& eps_override,
                        const std::vector<std::int64_t>& excluded) {
  Require(product_floor > 0, ErrorCode::kInvalidArgument,
          "product floor must be positive");
  ParamTable table;
  std::set<std::int64_t> used(excluded.begin(), excluded.end());
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const WreathElem& gamma = gammas[i];
    Require(gamma != WreathIdentity(), ErrorCode::kInvalidArgument,
            Row(i) + ": gamma must not be the identity");
    GammaParams g;
    g.gamma = gamma;
    std::int64_t p = std::max<std::int64_t>(prime_floor + 1, 2);
    for (;; ++p) {
      if (p > (std::int64_t{1} << 31)) {
        Fail(ErrorCode::kPrecondition, Row(i) + ": no admissible prime");
      }
      if (!IsPrime(p) || used.count(p)) continue;
      bool ok = true;
      for (const auto& [pos, v] : gamma.lamps.entries()) {
        ok = ok && !ValueDivisibleBy(v, p, d);
      }
      if (ok) break;
    }
    g.p = p;
    used.insert(p);
    g.eps = i < eps_override.size()
                ? eps_override[i]
                : Rational(1) / Rational(BigInt(1) << (i + 1));
    const auto supp = gamma.lamps.Support();
    g.l = static_cast<std::int64_t>(supp.size()) + 1;
    for (g.a = 1;; ++g.a) {
      Require(g.a < 62 && g.index() < (std::int64_t{1} << 40),
              ErrorCode::kCapExceeded, Row(i) + ": subgroup index too large");
      const std::int64_t n = g.index();
      bool ok = g.eps * n > g.l;
      for (std::size_t x = 0; ok && x < supp.size(); ++x) {
        for (std::size_t y = x + 1; y < supp.size(); ++y) {
          ok = ok && Mod(supp[y] - supp[x], n) != 0;
        }
      }
      ok = ok && (gamma.shift == 0 || Mod(gamma.shift, n) != 0);
      if (ok) break;
    }
    const std::int64_t n = g.index();
    g.e_cosets.push_back(0);
    std::vector<std::int64_t> rest;
    for (std::int64_t s : supp) {
      const std::int64_t r = Mod(s, n);
      if (r != 0 && std::find(rest.begin(), rest.end(), r) == rest.end()) {
        rest.push_back(r);
      }
    }
    std::sort(rest.begin(), rest.end());
    for (std::int64_t r = 1;
         static_cast<std::int64_t>(rest.size()) + 1 < g.l && r < n; ++r) {
      if (std::find(rest.begin(), rest.end(), r) == rest.end()) {
        rest.push_back(r);
      }
    }
    std::sort(rest.begin(), rest.end());
    g.e_cosets.insert(g.e_cosets.end(), rest.begin(), rest.end());
    table.push_back(std::move(g));
  }
  const ConditionReport rep = CheckConditions(table, d, product_floor);
  if (!rep.all()) {
    Fail(ErrorCode::kPrecondition, "parameter table: " + rep.detail);
  }
  return table;
}

QuotientSpace::QuotientSpace(ParamTable table, std::size_t d,
                             std::uint64_t state_cap)
    : table_(std::move(table)), d_(d), action_(FinAction::Cyclic(1, d)) {
  Require(d >= 1, ErrorCode::kInvalidArgument, "dimension must be positive");
  BigInt total = 1;
  BigInt n_e = 1;
  for (const auto& row : table_) {
    Require(row.p >= 2 && row.a >= 1 && !row.e_cosets.empty(),
            ErrorCode::kInvalidArgument, "malformed parameter row");
    const BigInt n = static_cast<long>(row.index());
    BigInt g;
    mpz_gcd(g.get_mpz_t(), n_e.get_mpz_t(), n.get_mpz_t());
    n_e = n_e / g * n;
    row_offset_.push_back(radix_.size());
    for (std::size_t e = 0; e < row.e_cosets.size(); ++e) {
      for (std::size_t k = 0; k < d_; ++k) {
        radix_.push_back(row.p);
        total *= static_cast<long>(row.p);
      }
    }
  }
  total *= n_e;
  if (total > BigInt(std::to_string(state_cap))) {
    Fail(ErrorCode::kCapExceeded,
         "quotient has " + total.get_str() + " states, cap is " +
             std::to_string(state_cap));
  }
  n_e_ = n_e.get_si();
  action_ = BuildAction();
}

std::int64_t QuotientSpace::prime_product() const {
  std::int64_t q = 1;
  for (const auto& row : table_) q *= row.p;
  return q;
}

std::size_t QuotientSpace::ResidueSlot(std::size_t row, std::size_t entry,
                                       std::size_t coord) const {
  return row_offset_[row] + entry * d_ + coord;
}

CosetLabel QuotientSpace::LabelOf(const WreathElem& x) const {
  CosetLabel label;
  label.t = Mod(x.shift, n_e_);
  label.residues.assign(radix_.size(), 0);
  for (std::size_t row = 0; row < table_.size(); ++row) {
    const GammaParams& g = table_[row];
    const std::int64_t n = g.index();
    for (std::size_t e = 0; e < g.e_cosets.size(); ++e) {
      // Coset λ·q, with λ the shift of x.
      const std::int64_t target = Mod(x.shift + g.e_cosets[e], n);
      for (const auto& [pos, v] : x.lamps.entries()) {
        if (Mod(pos, n) != target) continue;
        for (std::size_t k = 0; k < d_; ++k) {
          auto& slot = label.residues[ResidueSlot(row, e, k)];
          slot = Mod(slot + v[k], g.p);
        }
      }
    }
  }
  return label;
}

State QuotientSpace::Encode(const CosetLabel& label) const {
  std::uint64_t code = 0;
  for (std::size_t i = radix_.size(); i-- > 0;) {
    code = code * static_cast<std::uint64_t>(radix_[i]) +
           static_cast<std::uint64_t>(label.residues[i]);
  }
  code = code * static_cast<std::uint64_t>(n_e_) +
         static_cast<std::uint64_t>(label.t);
  return static_cast<State>(code);
}

CosetLabel QuotientSpace::Decode(State s) const {
  CosetLabel label;
  std::uint64_t code = s;
  label.t = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(n_e_));
  code /= static_cast<std::uint64_t>(n_e_);
  label.residues.resize(radix_.size());
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    const auto r = static_cast<std::uint64_t>(radix_[i]);
    label.residues[i] = static_cast<std::int64_t>(code % r);
    code /= r;
  }
  return label;
}

FinAction QuotientSpace::BuildAction() const {
  std::uint64_t n = static_cast<std::uint64_t>(n_e_);
  for (auto r : radix_) n *= static_cast<std::uint64_t>(r);
  // λ = 1 moves t only; t is the lowest digit.
  Perm shift(n);
  for (std::uint64_t s = 0; s < n; ++s) {
    const std::uint64_t t = s % static_cast<std::uint64_t>(n_e_);
    shift[s] = static_cast<State>(
        t + 1 == static_cast<std::uint64_t>(n_e_) ? s - t : s + 1);
  }
  // ξ_k^0 adds e_k to residue (γ, q) exactly when 0 ∈ t·q.
  std::vector<Perm> lamps(d_, Perm(n));
  for (std::uint64_t s = 0; s < n; ++s) {
    const CosetLabel label = Decode(static_cast<State>(s));
    for (std::size_t k = 0; k < d_; ++k) {
      CosetLabel out = label;
      for (std::size_t row = 0; row < table_.size(); ++row) {
        const GammaParams& g = table_[row];
        for (std::size_t e = 0; e < g.e_cosets.size(); ++e) {
          if (Mod(label.t + g.e_cosets[e], g.index()) != 0) continue;
          auto& slot = out.residues[ResidueSlot(row, e, k)];
          slot = Mod(slot + 1, g.p);
        }
      }
      lamps[k][s] = Encode(out);
    }
  }
  return FinAction(d_, std::move(shift), std::move(lamps));
}

std::vector<State> RefinementMap(const QuotientSpace& fine,
                                 const QuotientSpace& coarse) {
  Require(fine.dim() == coarse.dim(), ErrorCode::kInvalidArgument,
          "refinement between different dimensions");
  std::vector<std::size_t> row_in_fine;
  for (const auto& row : coarse.table()) {
    const auto it =
        std::find(fine.table().begin(), fine.table().end(), row);
    Require(it != fine.table().end(), ErrorCode::kInvalidArgument,
            "coarse table is not contained in the fine table");
    row_in_fine.push_back(
        static_cast<std::size_t>(it - fine.table().begin()));
  }
  Require(fine.lambda_index() % coarse.lambda_index() == 0,
          ErrorCode::kInvalidArgument, "subgroups are not nested");
  std::vector<State> out(fine.size());
  const std::size_t d = fine.dim();
  for (State s = 0; s < fine.size(); ++s) {
    const CosetLabel f = fine.Decode(s);
    CosetLabel c;
    c.t = Mod(f.t, coarse.lambda_index());
    for (std::size_t row = 0; row < coarse.table().size(); ++row) {
      const std::size_t fr = row_in_fine[row];
      for (std::size_t e = 0; e < coarse.table()[row].e_cosets.size(); ++e) {
        for (std::size_t k = 0; k < d; ++k) {
          c.residues.push_back(f.residues[fine.ResidueSlot(fr, e, k)]);
        }
      }
    }
    out[s] = coarse.Encode(c);
  }
  return out;
}

Rational FixedFraction(const WreathElem& g, const QuotientSpace& q) {
  return MakeRational(
      static_cast<std::int64_t>(FixSet(g, q.action()).Count()),
      static_cast<std::int64_t>(q.size()));
}

StateSubset WSet(const QuotientSpace& q) {
  StateSubset w(q.size());
  for (State s = 0; s < q.size(); ++s) {
    const CosetLabel label = q.Decode(s);
    if (label.t != 0) continue;
    bool ok = true;
    for (std::size_t row = 0; ok && row < q.table().size(); ++row) {
      // The trivial coset is entry 0 by construction of E_γ.
      const auto& cosets = q.table()[row].e_cosets;
      const auto e = static_cast<std::size_t>(
          std::find(cosets.begin(), cosets.end(), 0) - cosets.begin());
      ok = e < cosets.size() && label.residues[q.ResidueSlot(row, e, 0)] == 0;
    }
    if (ok) w.Insert(s);
  }
  return w;
}

PartitionReport PartitionCheck(const QuotientSpace& q,
                               const SectionData& section,
                               std::int64_t p_mult) {
  PartitionReport rep;
  const std::int64_t big_q = q.prime_product();
  BigInt g;
  mpz_gcd(g.get_mpz_t(), BigInt(static_cast<long>(p_mult)).get_mpz_t(),
          BigInt(static_cast<long>(big_q)).get_mpz_t());
  if (p_mult <= 0 || g != 1) {
    rep.detail = "P must be positive and coprime to Q";
    return rep;
  }
  if (section.quotient_size != q.lambda_index() ||
      static_cast<std::int64_t>(section.phi.size()) != q.lambda_index()) {
    rep.detail = "section does not match the quotient";
    return rep;
  }
  const auto w = WSet(q).Members();
  const FinAction& act = q.action();
  std::vector<std::uint8_t> hits(q.size(), 0);
  for (std::int64_t t = 0; t < q.lambda_index(); ++t) {
    const LambdaElem phi = section.phi[static_cast<std::size_t>(t)];
    if (Mod(phi, q.lambda_index()) != t) {
      rep.detail = "phi is not a section at t = " + std::to_string(t);
      return rep;
    }
    for (std::int64_t j = 0; j < big_q; ++j) {
      ZdVector v = ZdVector::Zero(q.dim());
      v[0] = j * p_mult;
      const WreathElem mover{LampConfig({{phi, v}}), 0};
      ++rep.pieces;
      for (State x : w) {
        const State y = act.Act(mover, act.Shift(x, phi));
        if (hits[y]++) ++rep.overlaps;
      }
    }
  }
  rep.covered = static_cast<std::size_t>(
      std::count_if(hits.begin(), hits.end(), [](auto h) { return h > 0; }));
  rep.partition = rep.overlaps == 0 && rep.covered == q.size();
  if (!rep.partition && rep.detail.empty()) {
    rep.detail = std::to_string(rep.overlaps) + " overlaps, " +
                 std::to_string(q.size() - rep.covered) + " states missed";
  }
  return rep;
}

bool LampFixesTranslatedW(const QuotientSpace& q, const SectionData& section) {
  const auto w = WSet(q).Members();
  const FinAction& act = q.action();
  for (std::int64_t t = 0; t < q.lambda_index(); ++t) {
    const LambdaElem phi = section.phi[static_cast<std::size_t>(t)];
    bool outside = true;
    for (const auto& row : q.table()) {
      outside = outside && Mod(phi, row.index()) != 0;
    }
    if (!outside) continue;
    std::vector<State> piece;
    for (State x : w) piece.push_back(act.Shift(x, phi));
    std::sort(piece.begin(), piece.end());
    for (std::size_t k = 1; k <= q.dim(); ++k) {
      const WreathElem xi = XiGenerator(q.dim(), k, 0);
      std::vector<State> moved;
      for (State x : piece) moved.push_back(act.Act(xi, x));
      std::sort(moved.begin(), moved.end());
      if (moved != piece) return false;
    }
  }
  return true;
}

}  // namespace castellan

namespace castellan {

namespace {

std::int64_t Uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

WreathElem RandomElement(std::size_t d, std::mt19937_64& rng) {
  std::vector<LampConfig::Entry> entries;
  const auto count = Uniform(rng, 0, 4);
  for (std::int64_t i = 0; i < count; ++i) {
    ZdVector v = ZdVector::Zero(d);
    for (std::size_t c = 0; c < d; ++c) v[c] = Uniform(rng, -20, 20);
    entries.emplace_back(Uniform(rng, -30, 30), v);
  }
  return {LampConfig(std::move(entries)), Uniform(rng, -50, 50)};
}

}  // namespace

WreathElem RandomGammaEElement(const QuotientSpace& q, std::mt19937_64& rng) {
  const std::size_t d = q.dim();
  LampConfig h = RandomElement(d, rng).lamps;
  const ParamTable& table = q.table();
  for (std::size_t r = 0; r < table.size(); ++r) {
    const std::int64_t p = table[r].p;
    std::int64_t others = 1;
    for (std::size_t o = 0; o < table.size(); ++o) {
      if (o != r) others *= table[o].p;
    }
    // Corrections are multiples of every other prime, so rows stay fixed.
    std::int64_t inv = 1;
    while (Mod(others, p) * inv % p != 1) ++inv;
    for (std::int64_t c : table[r].e_cosets) {
      ZdVector fix = ZdVector::Zero(d);
      for (std::size_t i = 0; i < d; ++i) {
        std::int64_t sum = 0;
        for (const auto& [pos, v] : h.entries()) {
          if (Mod(pos, table[r].index()) == c) sum = Mod(sum + v[i], p);
        }
        fix[i] = Mod(-sum * inv, p) * others;
      }
      h += LampConfig({{c, fix}});
    }
  }
  return {h, q.lambda_index() * Uniform(rng, -3, 3)};
}

LabelTrialReport LabelTrials(const QuotientSpace& q, std::int64_t trials,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LabelTrialReport rep;
  rep.trials = trials;
  for (std::int64_t i = 0; i < trials; ++i) {
    const WreathElem x = RandomElement(q.dim(), rng);
    const WreathElem z = RandomGammaEElement(q, rng);
    const WreathElem y = RandomElement(q.dim(), rng);
    if (!GammaEContains(z, q.table(), q.dim()) ||
        !(q.LabelOf(x) == q.LabelOf(WreathMul(x, z)))) {
      ++rep.constant_violations;
    }
    const bool same = GammaEContains(WreathMul(WreathInv(x), y), q.table(), q.dim());
    if ((q.LabelOf(x) == q.LabelOf(y)) != same) ++rep.separation_violations;
    rep.separated += same ? 0 : 1;
    rep.samples.insert(rep.samples.end(), {x, z, y});
  }
  return rep;
}

}  // namespace castellan
