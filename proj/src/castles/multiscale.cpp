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

#include "castles/multiscale.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "dynamics/density.hpp"
#include "dynamics/folner.hpp"

namespace castellan {

namespace {

constexpr int kScanLimit = 62;

Rational Dyadic(int k) {
  Rational r(1);
  r /= Rational(BigInt(1) << k);
  return r;
}

std::string StageTag(std::int64_t k) { return "stage " + std::to_string(k); }

}  // namespace

AfmCertificate MakeAfmCertificate(const Castle& castle, const FinAction& act,
                                  const ElemSet& k, const Rational& eps,
                                  const Rational& delta) {
  AfmCertificate cert;
  cert.k = MakeElemSet(k);
  cert.resolution_cells = act.num_cells();
  cert.eps = eps;
  cert.delta = delta;
  for (const auto& t : castle.towers) {
    cert.per_tower_invariance.push_back(
        FolnerInvariance(MakeElemSet(t.shape), cert.k));
  }
  cert.density = BanachLower(castle.Footprint(act), act);
  return cert;
}

CheckOutcome AfmCheck(const Castle& castle, const AfmCertificate& cert,
                      const FinAction& act) {
  CheckOutcome out;
  const CastleReport report = ValidateCastle(castle, act);
  if (!report.valid) {
    out.Fail(report.message);
    return out;
  }
  if (cert.resolution_cells != act.num_cells()) {
    out.Fail("resolution cell count does not match the action");
  }
  for (std::size_t ti = 0; ti < castle.towers.size(); ++ti) {
    const Tower& t = castle.towers[ti];
    if (t.base.empty() || t.shape.empty()) {
      out.Fail("tower " + std::to_string(ti) + " is empty");
      continue;
    }
    for (const auto& g : t.shape) {
      const std::size_t cell = act.cell_of(act.Act(g, t.base.front()));
      for (State v : t.base) {
        if (act.cell_of(act.Act(g, v)) != cell) {
          out.Fail("tower " + std::to_string(ti) + " level " + FormatElem(g) +
                   " spans two resolution cells");
          break;
        }
      }
    }
  }
  if (cert.per_tower_invariance.size() != castle.towers.size()) {
    out.Fail("per-tower invariance list has the wrong length");
  } else {
    const ElemSet k = MakeElemSet(cert.k);
    for (std::size_t ti = 0; ti < castle.towers.size(); ++ti) {
      const ElemSet shape = MakeElemSet(castle.towers[ti].shape);
      if (shape.size() != castle.towers[ti].shape.size()) {
        out.Fail("tower " + std::to_string(ti) + " repeats a shape element");
        continue;
      }
      const Rational ratio = FolnerInvariance(shape, k);
      if (ratio != cert.per_tower_invariance[ti]) {
        out.Fail("tower " + std::to_string(ti) + " invariance is " +
                 FormatRational(ratio) + ", certificate says " +
                 FormatRational(cert.per_tower_invariance[ti]));
      } else if (!(ratio < cert.delta)) {
        out.Fail("tower " + std::to_string(ti) + " is not (K, " +
                 FormatRational(cert.delta) + ")-invariant");
      }
    }
  }
  const Rational density = BanachLower(castle.Footprint(act), act);
  if (density != cert.density) {
    out.Fail("footprint density is " + FormatRational(density) +
             ", certificate says " + FormatRational(cert.density));
  }
  if (density < 1 - cert.eps) {
    out.Fail("footprint density " + FormatRational(density) + " below 1 - " +
             FormatRational(cert.eps));
  }
  return out;
}

MultiscaleConstants ChooseMultiscaleConstants(std::size_t k_size,
                                              const Rational& eps,
                                              const Rational& delta) {
  Require(eps > 0 && eps < 1, ErrorCode::kInvalidArgument,
          "epsilon must lie in (0, 1)");
  Require(delta > 0, ErrorCode::kInvalidArgument, "delta must be positive");
  MultiscaleConstants c;
  c.eps_in = std::min(eps, ShrinkEpsilon(k_size, delta));
  Require(c.eps_in < MakeRational(1, 2), ErrorCode::kInvalidArgument,
          "inner epsilon must be below 1/2");
  Rational power = 1 - c.eps_in;
  c.n = 1;
  while (power >= c.eps_in) {
    power *= 1 - c.eps_in;
    ++c.n;
  }
  // β descends through 1/2, 1/4, ...; for each β the first α = 1 − 2^{-j}
  // with αV > 1 − ε wins.
  for (int kb = 1; kb <= kScanLimit; ++kb) {
    const Rational beta = Dyadic(kb);
    const Rational q = 1 - c.eps_in * (1 + beta);
    if (q <= 0) continue;
    const Rational v = (1 - Pow(q, static_cast<unsigned>(c.n))) / (1 + beta);
    for (int ja = 1; ja <= kScanLimit; ++ja) {
      const Rational alpha = 1 - Dyadic(ja);
      if (alpha * v > 1 - c.eps_in) {
        c.beta = beta;
        c.alpha = alpha;
        return c;
      }
    }
  }
  Fail(ErrorCode::kPrecondition,
       "no dyadic beta, alpha satisfy the geometric bound");
}

Rational GeometricLowerBound(const MultiscaleConstants& c) {
  const Rational q = 1 - c.eps_in * (1 + c.beta);
  return c.alpha * (1 - Pow(q, static_cast<unsigned>(c.n))) / (1 + c.beta);
}

Rational StageBound(const MultiscaleConstants& c, std::int64_t k) {
  const Rational q = 1 - c.eps_in * (1 + c.beta);
  Rational sum = 0, term = 1;
  for (std::int64_t j = 0; j < k; ++j) {
    sum += term;
    term *= q;
  }
  return c.alpha * c.eps_in * sum;
}

namespace {

Rational EffectiveDelta(const MultiscaleParams& p) {
  return p.delta > 0 ? p.delta : p.eps;
}

bool IsShiftOnly(const ElemSet& k) {
  return std::all_of(k.begin(), k.end(),
                     [](const WreathElem& g) { return g.lamps.empty(); });
}

// With 1 ∈ F_1 ⊆ F_i, (F_i^{-1}F_j △ F_j) = F_i^{-1}F_j ∖ F_j grows with i,
// so the ladder ratio of F_j is its ratio against F_{j-1}^{-1}.
std::vector<Rational> LadderRatios(const std::vector<ElemSet>& folner) {
  std::vector<Rational> out;
  if (folner.empty()) return out;
  out.push_back(0);
  for (std::size_t j = 1; j < folner.size(); ++j) {
    if (j >= 2 && folner[j] == folner[j - 1] &&
        folner[j - 1] == folner[j - 2]) {
      out.push_back(out.back());
      continue;
    }
    out.push_back(FolnerInvariance(folner[j], InverseSet(folner[j - 1])));
  }
  return out;
}

}  // namespace

MultiscaleCheck CheckMultiscale(const FinAction& act,
                                const MultiscaleParams& params,
                                const MultiscaleClaim& claim) {
  MultiscaleCheck res;
  CheckOutcome& out = res.outcome;
  const MultiscaleConstants& c = claim.constants;
  const ElemSet k = MakeElemSet(params.k);
  const Rational delta = EffectiveDelta(params);
  const MultiscaleConstants expect =
      ChooseMultiscaleConstants(k.size(), params.eps, delta);
  if (expect.eps_in != c.eps_in || expect.n != c.n ||
      expect.beta != c.beta || expect.alpha != c.alpha) {
    out.Fail("recorded constants differ from the deterministic choice");
    return res;
  }
  if (!(GeometricLowerBound(c) > 1 - c.eps_in)) {
    out.Fail("geometric bound does not exceed 1 - epsilon");
  }
  if (claim.folner.size() != static_cast<std::size_t>(c.n) ||
      claim.stage_castles.size() != static_cast<std::size_t>(c.n)) {
    out.Fail("expected " + std::to_string(c.n) + " Følner sets and stages");
    return res;
  }
  const WreathElem one = WreathIdentity();
  for (std::size_t j = 0; j < claim.folner.size(); ++j) {
    const ElemSet& f = claim.folner[j];
    if (f.empty() || MakeElemSet(f) != f) {
      out.Fail("Følner set " + std::to_string(j + 1) + " is not a sorted set");
      return res;
    }
    if (j > 0 && claim.folner[j - 1] == f) {
      res.folner_ratios.push_back(res.folner_ratios.back());
    } else {
      res.folner_ratios.push_back(FolnerInvariance(f, k));
    }
    if (!(res.folner_ratios.back() < c.eps_in)) {
      out.Fail("Følner set " + std::to_string(j + 1) + " is not (K, " +
               FormatRational(c.eps_in) + ")-invariant");
    }
    if (j > 0 && !std::includes(f.begin(), f.end(), claim.folner[j - 1].begin(),
                                claim.folner[j - 1].end())) {
      out.Fail("Følner sets are not nested at " + std::to_string(j + 1));
    }
  }
  if (!std::binary_search(claim.folner[0].begin(), claim.folner[0].end(),
                          one)) {
    out.Fail("F_1 does not contain the identity");
  }
  res.ladder_ratios = LadderRatios(claim.folner);

  StateSubset prev(act.size());  // C_1 ⊔ … ⊔ C_{k-1}
  Rational prev_density = 0;
  for (std::int64_t stage = 1; stage <= c.n; ++stage) {
    StageRecord rec;
    rec.k = stage;
    rec.folner_index = static_cast<std::size_t>(c.n - stage);
    const ElemSet& f = claim.folner[rec.folner_index];
    const Castle& ck = claim.stage_castles[static_cast<std::size_t>(stage - 1)];
    const StateSubset z = NonfreePart(f, act);
    rec.z = z.Members();
    rec.z_upper = BanachUpper(z, act);
    rec.z_bound = (1 - c.alpha) * c.eps_in / static_cast<long>(f.size());
    if (!(rec.z_upper < rec.z_bound)) {
      out.Fail(StageTag(stage) + ": non-free part too dense");
    }

    const L33Postconditions post = CheckL33(ck, act, f, c.eps_in, prev, z);
    rec.l33 = post.all();
    rec.cond1 = post.castle_valid && post.levels_in_cells;
    rec.cond2 = post.castle_valid && post.shapes_large;
    rec.cond3 = post.castle_valid && post.avoids_y;
    rec.cond4 = post.castle_valid && post.union_identity;
    const StateSubset ck_foot = ck.Footprint(act);
    const StateSubset upto = prev | ck_foot;
    rec.density = BanachLower(upto, act);
    rec.target = StageBound(c, stage);
    rec.cond5 = rec.density >= rec.target;

    // B = F·Z_k ∪ C_{≤k}, A = C_{<k}.
    StateSubset b = upto;
    for (State x : rec.z) {
      for (const auto& g : f) b.Insert(act.Act(g, x));
    }
    rec.increment_lhs = BanachLower(b, act);
    rec.increment_rhs =
        (1 - c.eps_in * (1 + c.beta)) * prev_density + c.eps_in;
    rec.increment_holds = rec.increment_lhs >= rec.increment_rhs;

    if (!rec.l33) {
      out.Fail(StageTag(stage) + ": castle postcondition failed: " +
               post.detail);
    } else if (!rec.cond5) {
      out.Fail(StageTag(stage) + ": density " + FormatRational(rec.density) +
               " below " + FormatRational(rec.target));
    }
    for (const auto& t : ck.towers) res.castle.towers.push_back(t);
    prev = upto;
    prev_density = rec.density;
    res.stages.push_back(std::move(rec));
  }
  // The stage castles are pairwise disjoint, so the union is a castle.
  const CastleReport union_report = ValidateCastle(res.castle, act);
  if (!union_report.valid) out.Fail("union castle: " + union_report.message);
  if (BanachLower(res.castle.Footprint(act), act) < 1 - c.eps_in) {
    out.Fail("final footprint density below 1 - inner epsilon");
  }
  return res;
}

MultiscaleResult BuildCastleT34(const FinAction& act,
                                const MultiscaleParams& params) {
  const ElemSet k = MakeElemSet(params.k);
  Require(!k.empty(), ErrorCode::kInvalidArgument, "K must be nonempty");
  const Rational delta = EffectiveDelta(params);
  MultiscaleResult res;
  MultiscaleClaim& claim = res.claim;
  claim.constants = ChooseMultiscaleConstants(k.size(), params.eps, delta);
  const MultiscaleConstants& c = claim.constants;
  res.ladder_target = c.beta * (1 - c.eps_in);

  const auto z_ok = [&](const ElemSet& f) {
    return BanachUpper(NonfreePart(f, act), act) <
           (1 - c.alpha) * c.eps_in / static_cast<long>(f.size());
  };

  // F_1: the smallest certified interval.
  const GroupKind kind =
      IsShiftOnly(k) ? GroupKind::kIntegers : GroupKind::kWreath;
  const FolnerResult first =
      FolnerSupplier(kind, act.dim(), k, c.eps_in, params.folner_cap);
  ElemSet f1 = first.set.Enumerate(static_cast<std::size_t>(1) << 20);
  claim.folner.push_back(std::move(f1));

  // Soft ladder: take the smallest interval [0,N) meeting the ladder, or
  // keep F_{j-1} when that interval is over the cap or breaks the Z bound.
  for (std::int64_t j = 2; j <= c.n; ++j) {
    const ElemSet& last = claim.folner.back();
    ElemSet next = last;
    if (kind == GroupKind::kIntegers && last.front() == WreathIdentity() &&
        last.back() == ShiftElem(static_cast<std::int64_t>(last.size()) - 1)) {
      // For F = [0,m), F^{-1}[0,N) △ [0,N) has m−1 points.
      const Rational need = Rational(static_cast<long>(last.size()) - 1) /
                            res.ladder_target;
      const BigInt floor_need = need.get_num() / need.get_den();
      BigInt n_big = floor_need + 1;
      if (n_big < static_cast<long>(last.size())) {
        n_big = static_cast<long>(last.size());
      }
      if (n_big <= params.ladder_cap) {
        ElemSet cand = IntervalSet(0, n_big.get_si());
        if (FolnerInvariance(cand, k) < c.eps_in && z_ok(cand)) {
          next = std::move(cand);
        }
      }
    }
    claim.folner.push_back(std::move(next));
  }

  StateSubset prev(act.size());
  const ElemSet* last_s = nullptr;
  StateSubset last_z;
  for (std::int64_t stage = 1; stage <= c.n; ++stage) {
    const ElemSet& f = claim.folner[static_cast<std::size_t>(c.n - stage)];
    const StateSubset z = NonfreePart(f, act);
    const Rational upper = BanachUpper(z, act);
    const Rational bound = (1 - c.alpha) * c.eps_in / static_cast<long>(f.size());
    if (!(upper < bound)) {
      Fail(ErrorCode::kPrecondition,
           StageTag(stage) + ": non-free part has upper density " +
               FormatRational(upper) + ", needs < " + FormatRational(bound));
    }
    // Repeating (S, Z) admits nothing new: every x was either admitted
    // (its T_x is now covered) or rejected against a smaller Y.
    if (last_s != nullptr && *last_s == f && last_z == z) {
      claim.stage_castles.emplace_back();
      continue;
    }
    Castle ck = BuildCastleL33(act, f, c.eps_in, prev, z);
    prev |= ck.Footprint(act);
    claim.stage_castles.push_back(std::move(ck));
    last_s = &f;
    last_z = z;
  }

  MultiscaleCheck check = CheckMultiscale(act, params, claim);
  if (!check.outcome.ok) {
    Fail(ErrorCode::kPipeline, "multi-scale castle failed its own check: " +
                                   check.outcome.reason);
  }
  res.folner_ratios = std::move(check.folner_ratios);
  res.ladder_ratios = std::move(check.ladder_ratios);
  res.stages = std::move(check.stages);
  res.castle = std::move(check.castle);
  res.geometric_bound = GeometricLowerBound(c);
  res.certificate = MakeAfmCertificate(res.castle, act, k, params.eps, delta);
  return res;
}

EssfreeReport EssfreeBoundFromCastle(const Castle& castle, const WreathElem& g,
                                     const Rational& eps_prime,
                                     const FinAction& act) {
  Require(eps_prime >= 0 && eps_prime < 1, ErrorCode::kInvalidArgument,
          "epsilon' must lie in [0, 1)");
  const ElemSet ginv = {WreathInv(g)};
  for (std::size_t ti = 0; ti < castle.towers.size(); ++ti) {
    const ElemSet shape = MakeElemSet(castle.towers[ti].shape);
    Require(FolnerInvariance(shape, ginv) < eps_prime, ErrorCode::kPrecondition,
            "tower " + std::to_string(ti) + " is not ({g^-1}, " +
                FormatRational(eps_prime) + ")-invariant");
  }
  Require(ValidateCastle(castle, act).valid, ErrorCode::kPrecondition,
          "castle levels overlap");
  const StateSubset foot = castle.Footprint(act);
  Require(BanachLower(foot, act) >= 1 - eps_prime, ErrorCode::kPrecondition,
          "footprint density below 1 - epsilon'");

  EssfreeReport rep;
  const Rational keep = 1 - eps_prime;
  rep.bound = 1 - keep * keep;
  rep.certified = true;
  const StateSubset fix = FixSet(g, act);
  for (const auto& mu : InvariantMeasures(act)) {
    const Rational fix_mu = mu.Measure(fix, act);
    Rational overlap = 0, levels = 0;
    for (const auto& t : castle.towers) {
      const ElemSet shape = MakeElemSet(t.shape);
      std::size_t inter = 0;
      for (const auto& s : shape) {
        if (std::binary_search(shape.begin(), shape.end(),
                               WreathMul(WreathInv(g), s))) {
          ++inter;
        }
      }
      const Rational base_mu =
          mu.Measure(StateSubset::FromStates(act.size(), t.base), act);
      overlap += base_mu * static_cast<long>(inter);
      levels += base_mu * static_cast<long>(shape.size());
    }
    const Rational foot_mu = mu.Measure(foot, act);
    const bool chain = 1 - fix_mu >= overlap && overlap >= keep * levels &&
                       levels == foot_mu && keep * foot_mu >= keep * keep;
    rep.certified = rep.certified && chain && fix_mu <= rep.bound;
    rep.fix_measures.push_back(fix_mu);
    rep.overlap_sums.push_back(overlap);
    rep.footprint_measures.push_back(foot_mu);
  }
  return rep;
}

IncrementCheck DensityIncrementFinite(const FinAction& act, const ElemSet& t_in,
                                      const ElemSet& f_in, const StateSubset& a,
                                      const StateSubset& b,
                                      const Rational& eps,
                                      const Rational& beta) {
  const ElemSet t = MakeElemSet(t_in);
  const ElemSet f = MakeElemSet(f_in);
  Require(!t.empty() && !f.empty(), ErrorCode::kInvalidArgument,
          "T and F must be nonempty");
  IncrementCheck out;
  bool hyp = std::binary_search(t.begin(), t.end(), WreathIdentity()) &&
             a.IsSubsetOf(b) && eps > 0 && beta > 0 && eps * (1 + beta) < 1;
  // T^{-1}A = {x : tx ∈ A for some t ∈ T}.
  StateSubset tinv_a(act.size());
  for (State x = 0; x < act.size(); ++x) {
    for (const auto& g : t) {
      if (a.Contains(act.Act(g, x))) {
        tinv_a.Insert(x);
        break;
      }
    }
  }
  const StateSubset sym = tinv_a.Minus(a) | a.Minus(tinv_a);
  for (State x = 0; hyp && x < act.size(); ++x) {
    long in_sym = 0, in_a = 0;
    for (const auto& g : f) {
      const State y = act.Act(g, x);
      in_sym += sym.Contains(y) ? 1 : 0;
      in_a += a.Contains(y) ? 1 : 0;
    }
    if (Rational(in_sym) > beta * in_a) hyp = false;
  }
  hyp = hyp && LowerDensityF(t, b, act) >= eps;
  out.hypotheses = hyp;
  const ElemSet tf = SetProduct(t, f);
  out.lhs = LowerDensityF(tf, b, act);
  out.rhs = ((1 - eps * (1 + beta)) * LowerDensityF(f, a, act) + eps) *
            static_cast<long>(f.size()) / static_cast<long>(tf.size());
  out.conclusion = out.lhs >= out.rhs;
  return out;
}

}  // namespace castellan
