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

// Checker side of every pipeline. Nothing here constructs castles,
// searches for Følner sets or builds witnesses; a ctest greps for it.

#include <algorithm>

#include "castles/castle.hpp"
#include "castles/multiscale.hpp"
#include "common/error.hpp"
#include "dynamics/density.hpp"
#include "dynamics/folner.hpp"
#include "dynamics/schreier.hpp"
#include "group_core/elem_json.hpp"
#include "joseph/joseph.hpp"
#include "report/inputs.hpp"
#include "report/pipelines.hpp"
#include "zstab/witness.hpp"

namespace castellan {

namespace {

constexpr std::size_t kListCap = 4096;

void ClaimKeys(const Json& claim, std::initializer_list<const char*> keys) {
  if (!claim.is_object() || claim.size() != keys.size()) {
    Fail(ErrorCode::kSchema, "claim has unexpected shape");
  }
  for (const char* k : keys) Field(claim, k);
}

void RequireInRange(const Castle& c, const FinAction& act) {
  for (const auto& t : c.towers) {
    for (State x : t.base) {
      if (x >= act.size()) Fail(ErrorCode::kSchema, "base state out of range");
    }
  }
}

Json Outcome(const CheckOutcome& o) {
  return {{"ok", o.ok}, {"reason", o.reason}};
}

Json CastleSummary(const Castle& c, const FinAction& act) {
  const StateSubset fp = c.Footprint(act);
  return {{"towers", c.towers.size()},
          {"level_points", c.LevelPointCount()},
          {"footprint", StatesToJson(fp.Members())},
          {"footprint_density", RationalToJson(BanachLower(fp, act))}};
}

void Note(DeriveResult& r, bool ok, const std::string& why) {
  if (!ok && r.detail.empty()) r.detail = why;
}

// ---- folner

FiberedBoxSet Family(GroupKind kind, std::size_t d, std::int64_t s) {
  switch (kind) {
    case GroupKind::kIntegers:
      return FiberedBoxSet::Interval(d, 0, s);
    case GroupKind::kLattice:
      return FiberedBoxSet::LatticeBox(d, s);
    case GroupKind::kWreath:
      return FiberedBoxSet::WreathBall(d, s, s * s);
  }
  Fail(ErrorCode::kSchema, "unknown group kind");
}

DeriveResult DeriveFolner(const Json& inputs, const Json& claim) {
  const auto in = FolnerInputs::FromJson(inputs);
  ClaimKeys(claim, {"size", "lamp_bound"});
  const std::int64_t size = IntField(claim, "size");
  const std::int64_t lamp_bound = IntField(claim, "lamp_bound");
  const std::int64_t start = in.kind == GroupKind::kWreath ? 0 : 1;
  if (size < start || size > 65536) Fail(ErrorCode::kSchema, "size out of range");
  DeriveResult r;
  const FiberedBoxSet set = Family(in.kind, in.d, size);
  const Rational ratio = FolnerInvariance(set, in.k);
  const bool invariant = ratio < in.eps;
  bool minimal = true;
  for (std::int64_t s = start; s < size && minimal; ++s) {
    minimal = !(FolnerInvariance(Family(in.kind, in.d, s), in.k) < in.eps);
  }
  const bool lamp_rule = in.kind == GroupKind::kWreath
                             ? lamp_bound == size * size
                             : lamp_bound == 0;
  const BigInt card = set.Count();
  Json elements = nullptr;
  if (card <= static_cast<long>(kListCap)) {
    elements = ElemSetToJson(set.Enumerate(kListCap));
  }
  r.derived = {{"ratio", RationalToJson(ratio)},
               {"cardinality", card.get_str()},
               {"invariant", invariant},
               {"minimal", minimal},
               {"lamp_rule", lamp_rule},
               {"within_cap", size <= in.cap},
               {"elements", elements}};
  Note(r, invariant, "ratio is not below epsilon");
  Note(r, minimal, "a smaller member of the family is already invariant");
  Note(r, lamp_rule, "lamp bound does not follow the family");
  Note(r, size <= in.cap, "size exceeds the cap");
  r.passed = r.detail.empty();
  return r;
}

// ---- castle-l33

DeriveResult DeriveL33(const Json& inputs, const Json& claim) {
  const auto in = L33Inputs::FromJson(inputs);
  ClaimKeys(claim, {"castle"});
  const FinAction act = in.Action();
  const Castle castle = CastleFromJson(Field(claim, "castle"), 1);
  RequireInRange(castle, act);
  const StateSubset y = StateSubset::FromStates(act.size(), in.y);
  const StateSubset z = in.z_nonfree ? NonfreePart(in.s, act)
                                     : StateSubset::FromStates(act.size(), in.z);
  const L33Postconditions post = CheckL33(castle, act, in.s, in.eps, y, z);
  DeriveResult r;
  r.derived = {{"postconditions",
                {{"bases_disjoint_outside_z", post.bases_disjoint_outside_z},
                 {"levels_in_cells", post.levels_in_cells},
                 {"shapes_large", post.shapes_large},
                 {"avoids_y", post.avoids_y},
                 {"union_identity", post.union_identity},
                 {"s_orbit_coverage", post.s_orbit_coverage},
                 {"castle_valid", post.castle_valid}}},
               {"castle", CastleSummary(castle, act)}};
  r.passed = post.all();
  r.detail = post.all() ? "" : post.detail;
  return r;
}

// ---- castle-t34

Json StageJson(const StageRecord& s) {
  return {{"k", s.k},
          {"folner_index", s.folner_index},
          {"z", StatesToJson(s.z)},
          {"z_upper", RationalToJson(s.z_upper)},
          {"z_bound", RationalToJson(s.z_bound)},
          {"density", RationalToJson(s.density)},
          {"target", RationalToJson(s.target)},
          {"conditions", {s.cond1, s.cond2, s.cond3, s.cond4, s.cond5}},
          {"l33", s.l33},
          {"density_increment", {{"lhs", RationalToJson(s.increment_lhs)},
                       {"rhs", RationalToJson(s.increment_rhs)},
                       {"holds", s.increment_holds}}}};
}

DeriveResult DeriveT34(const Json& inputs, const Json& claim) {
  const auto in = T34Inputs::FromJson(inputs);
  ClaimKeys(claim, {"constants", "folner", "stage_castles"});
  const FinAction act = in.Action();
  MultiscaleClaim mc;
  const Json& c = Field(claim, "constants");
  if (c.size() != 4) Fail(ErrorCode::kSchema, "constants have unexpected shape");
  mc.constants.eps_in = RationalField(c, "eps_in");
  mc.constants.n = IntField(c, "n");
  mc.constants.beta = RationalField(c, "beta");
  mc.constants.alpha = RationalField(c, "alpha");
  const Json& folner = Field(claim, "folner");
  const Json& stages = Field(claim, "stage_castles");
  if (!folner.is_array() || !stages.is_array()) {
    Fail(ErrorCode::kSchema, "folner and stage_castles must be lists");
  }
  for (const auto& f : folner) mc.folner.push_back(ElemSetFromJson(f, 1));
  for (const auto& s : stages) {
    mc.stage_castles.push_back(CastleFromJson(s, 1));
    RequireInRange(mc.stage_castles.back(), act);
  }

  const MultiscaleCheck check = CheckMultiscale(act, in.params, mc);
  const Rational delta = in.params.delta;
  const AfmCertificate cert =
      MakeAfmCertificate(check.castle, act, in.params.k, in.params.eps, delta);
  const CheckOutcome afm = AfmCheck(check.castle, cert, act);

  DeriveResult r;
  Json stage_json = Json::array();
  for (const auto& s : check.stages) stage_json.push_back(StageJson(s));
  Json essfree = nullptr;
  bool essfree_ok = true;
  if (in.essfree_g) {
    try {
      const EssfreeReport e =
          EssfreeBoundFromCastle(check.castle, *in.essfree_g, in.essfree_eps, act);
      essfree = {{"g", ElemToJson(*in.essfree_g)},
                 {"bound", RationalToJson(e.bound)},
                 {"fix_measures", RationalsToJson(e.fix_measures)},
                 {"overlap_sums", RationalsToJson(e.overlap_sums)},
                 {"footprint_measures", RationalsToJson(e.footprint_measures)},
                 {"certified", e.certified}};
      essfree_ok = e.certified;
    } catch (const Error& e) {
      essfree = {{"g", ElemToJson(*in.essfree_g)}, {"error", e.what()}};
      essfree_ok = false;
    }
  }
  const MultiscaleConstants& k = mc.constants;
  r.derived = {
      {"check", Outcome(check.outcome)},
      {"stages", stage_json},
      {"folner_ratios", RationalsToJson(check.folner_ratios)},
      {"ladder_ratios", RationalsToJson(check.ladder_ratios)},
      {"ladder_target", RationalToJson(k.beta * (1 - k.eps_in))},
      {"geometric_bound", RationalToJson(GeometricLowerBound(k))},
      {"castle", CastleSummary(check.castle, act)},
      {"afm",
       {{"k", ElemSetToJson(cert.k)},
        {"resolution_cells", cert.resolution_cells},
        {"epsilon", RationalToJson(cert.eps)},
        {"delta", RationalToJson(cert.delta)},
        {"per_tower_invariance", RationalsToJson(cert.per_tower_invariance)},
        {"density", RationalToJson(cert.density)},
        {"check", Outcome(afm)}}},
      {"essfree", essfree}};
  Note(r, check.outcome.ok, check.outcome.reason);
  Note(r, afm.ok, afm.reason);
  Note(r, essfree_ok, "essential-freeness bound not certified");
  r.passed = r.detail.empty();
  return r;
}

// ---- joseph-build and fixed-fractions

Rational ProductOfComplements(const ParamTable& t) {
  Rational p = 1;
  for (const auto& row : t) p *= 1 - row.eps;
  return p;
}

bool ChooserAgrees(const std::vector<WreathElem>& gammas, std::size_t d,
                   std::int64_t floor, const Rational& product_floor,
                   const ParamTable& table) {
  try {
    return ChooseParams(gammas, d, floor, product_floor) == table;
  } catch (const Error&) {
    return false;
  }
}

Json ConditionsJson(const ConditionReport& c, const ParamTable& t,
                    const Rational& floor) {
  const Rational product = ProductOfComplements(t);
  return {{"holds", c.holds},
          {"failing_index", c.failing_index},
          {"detail", c.detail},
          {"product", RationalToJson(product)},
          {"margin", RationalToJson(product - floor)}};
}

BigInt ExpectedSize(const ParamTable& t, std::size_t d) {
  BigInt n = 1;
  for (const auto& row : t) {
    n *= static_cast<long>(row.index());
    for (std::int64_t i = 0; i < row.l * static_cast<std::int64_t>(d); ++i) {
      n *= static_cast<long>(row.p);
    }
  }
  return n;
}

DeriveResult DeriveJoseph(const Json& inputs, const Json& claim) {
  const auto in = JosephInputs::FromJson(inputs);
  ClaimKeys(claim, {"table"});
  const ParamTable table = ParamTableFromJson(Field(claim, "table"), in.d);
  DeriveResult r;
  const bool chooser =
      ChooserAgrees(in.gammas, in.d, in.prime_floor, in.product_floor, table);
  const ConditionReport cond = CheckConditions(table, in.d, in.product_floor);
  const QuotientSpace q(table, in.d, in.state_cap);
  const BigInt expected = ExpectedSize(table, in.d);
  const bool size_ok = expected == static_cast<unsigned long>(q.size());
  const bool transitive = q.action().orbits().size() == 1;

  Json labels = nullptr;
  bool labels_ok = true;
  if (in.label_trials > 0) {
    const LabelTrialReport lt = LabelTrials(q, in.label_trials, *in.seed);
    std::string transcript;
    for (const auto& g : lt.samples) transcript += FormatElem(g) + ";";
    labels = {{"trials", lt.trials},
              {"constant_violations", lt.constant_violations},
              {"separation_violations", lt.separation_violations},
              {"separated", lt.separated},
              {"sample_digest", Sha256Hex(transcript)}};
    labels_ok = lt.constant_violations == 0 && lt.separation_violations == 0;
  }
  const SectionData section = CanonicalSection(q.lambda_index(), {1, -1});
  const PartitionReport part = PartitionCheck(q, section, 1);
  const bool lamps_fix = LampFixesTranslatedW(q, section);

  r.derived = {{"chooser_agrees", chooser},
               {"conditions", ConditionsJson(cond, table, in.product_floor)},
               {"lambda_index", q.lambda_index()},
               {"prime_product", q.prime_product()},
               {"size", q.size()},
               {"expected_size", expected.get_str()},
               {"transitive", transitive},
               {"action_digest", ActionDigest(q.action())},
               {"label_trials", labels},
               {"partition",
                {{"partition", part.partition},
                 {"pieces", part.pieces},
                 {"covered", part.covered},
                 {"overlaps", part.overlaps},
                 {"lamps_fix_translates", lamps_fix}}}};
  Note(r, chooser, "table differs from the deterministic parameter choice");
  Note(r, cond.all(), "conditions fail: " + cond.detail);
  Note(r, size_ok, "|X_E| differs from [Lambda:Lambda_E] * prod p^(d l)");
  Note(r, transitive, "quotient action is not transitive");
  Note(r, labels_ok, "label_of violated constancy or separation");
  Note(r, part.partition, "partition check failed: " + part.detail);
  Note(r, lamps_fix, "a lamp generator moves a translate of W");
  r.passed = r.detail.empty();
  return r;
}

DeriveResult DeriveFixedFractions(const Json& inputs, const Json& claim) {
  const auto in = FixedFractionInputs::FromJson(inputs);
  ClaimKeys(claim, {"table"});
  const ParamTable table = ParamTableFromJson(Field(claim, "table"), in.d);
  DeriveResult r;
  const bool chooser =
      ChooserAgrees(in.gammas, in.d, in.prime_floor, in.product_floor, table);
  const ConditionReport cond = CheckConditions(table, in.d, in.product_floor);
  Json levels = Json::array();
  std::vector<Rational> prev;
  bool monotone = true, refines = true;
  std::unique_ptr<QuotientSpace> coarse;
  for (std::size_t k = 1; k <= table.size(); ++k) {
    auto q = std::make_unique<QuotientSpace>(
        ParamTable(table.begin(), table.begin() + static_cast<long>(k)), in.d,
        in.state_cap);
    if (coarse) {
      try {
        RefinementMap(*q, *coarse);
      } catch (const Error&) {
        refines = false;
      }
    }
    std::vector<Rational> fr;
    for (const auto& g : in.probes) fr.push_back(FixedFraction(g, *q));
    for (std::size_t i = 0; i < prev.size(); ++i) {
      monotone = monotone && fr[i] <= prev[i];
    }
    levels.push_back({{"level", k},
                      {"size", q->size()},
                      {"lambda_index", q->lambda_index()},
                      {"fixed_fractions", RationalsToJson(fr)}});
    prev = std::move(fr);
    coarse = std::move(q);
  }
  Json probes = Json::array();
  for (const auto& g : in.probes) probes.push_back(FormatElem(g));
  r.derived = {{"chooser_agrees", chooser},
               {"conditions", ConditionsJson(cond, table, in.product_floor)},
               {"probes", probes},
               {"levels", levels},
               {"monotone", monotone},
               {"refines", refines}};
  Note(r, chooser, "table differs from the deterministic parameter choice");
  Note(r, cond.all(), "conditions fail: " + cond.detail);
  Note(r, refines, "levels are not nested");
  Note(r, monotone, "a fixed fraction increased under refinement");
  r.passed = r.detail.empty();
  return r;
}

// ---- zstab-witness

Json LabelJson(const CosetLabel& l) {
  return {{"t", l.t}, {"residues", IntsToJson(l.residues)}};
}

DeriveResult DeriveZstab(const Json& inputs, const Json& claim) {
  const auto in = ZstabInputs::FromJson(inputs);
  ClaimKeys(claim, {"e_table", "phi", "y0", "cake_levels"});
  WitnessChoice choice;
  choice.e_table = ParamTableFromJson(Field(claim, "e_table"), in.spec.d);
  choice.phi = IntsFromJson(Field(claim, "phi"));
  choice.y0 = IntsFromJson(Field(claim, "y0"));
  choice.cake_levels = IntsFromJson(Field(claim, "cake_levels"));
  const OrderZeroWitness w = AssembleWitness(in.spec, choice);

  DeriveResult r;
  const StructureReport st = CheckWitnessStructure(w);
  const RelationReport psi = VerifyPsiHomomorphism(w);
  const RelationReport oz = VerifyOrderZero(w);
  Json measures;
  bool gap_ok = false;
  try {
    const TraceGapReport g = VerifyTraceGap(w);
    measures = {{"supp_a", RationalToJson(g.supp_a)},
                {"gap", RationalToJson(g.gap)},
                {"measure_xr", RationalToJson(g.measure_xr)},
                {"measure_cut", RationalToJson(g.measure_cut)},
                {"formula_xr", RationalToJson(g.formula_xr)},
                {"formula_cut", RationalToJson(g.formula_cut)},
                {"bound", RationalToJson(g.bound)},
                {"support_matches", g.support_matches},
                {"certified", g.certified}};
    gap_ok = g.certified;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kPrecondition) throw;
    measures = {{"error", e.what()}};
  }
  Json defects = Json::array();
  bool defects_ok = true;
  for (const SpecElement& s : SpecElements(w)) {
    const DefectReport d = CommutatorDefect(w, s);
    defects.push_back({{"element", s.Name()},
                       {"bound", RationalToJson(d.worst.value)},
                       {"exact", d.worst.exact},
                       {"analytic_bound", RationalToJson(d.analytic_bound)},
                       {"within", d.within}});
    defects_ok = defects_ok && d.within;
  }
  // Analytic shift bound 1/m + max f on λY_0 for other cake heights.
  const std::int64_t n_e = w.x_e->lambda_index();
  const SchreierGraph graph(FinAction::Cyclic(static_cast<std::size_t>(n_e)),
                            ShiftSet(w.lambda0));
  std::vector<State> y0_states;
  for (auto t : w.y0) y0_states.push_back(static_cast<State>(t));
  const StateSubset y0 =
      StateSubset::FromStates(static_cast<std::size_t>(n_e), y0_states);
  Json series = Json::array();
  for (std::int64_t m : in.defect_m) {
    const WeddingCakeFn f = WeddingCake(graph, y0, m);
    Rational worst = 0;
    for (LambdaElem lam : w.lambda0) {
      for (auto t : w.y0) {
        worst = std::max(worst, f.Value(static_cast<State>(Mod(t + lam, n_e))));
      }
    }
    series.push_back({{"m", m}, {"bound", RationalToJson(Rational(1, m) + worst)}});
  }
  Json s0 = Json::array();
  for (State x : in.spec.s0_states) {
    if (x >= w.x_f->size()) Fail(ErrorCode::kSchema, "s0 state out of range");
    s0.push_back(LabelJson(w.x_f->Decode(x)));
  }
  std::vector<std::int64_t> e_primes, f_primes;
  for (const auto& row : w.e_table) e_primes.push_back(row.p);
  for (const auto& row : w.f_table) f_primes.push_back(row.p);

  r.derived = {
      {"n", in.spec.n},
      {"primes", IntsToJson(e_primes)},
      {"f_primes", IntsToJson(f_primes)},
      {"quotient_size", w.x_e->size()},
      {"f_quotient_size", w.x_f->size()},
      {"lambda_index", n_e},
      {"prime_product", w.q},
      {"p_mult", w.p_mult},
      {"m", w.m},
      {"eta", RationalToJson(w.eta)},
      {"c", w.c},
      {"r", w.r},
      {"w_size", w.w_size},
      {"x_r_size", w.x_r.Count()},
      {"cake_not_one", w.cake.CountNotOne()},
      {"e_product", RationalToJson(ProductOfComplements(w.e_table))},
      {"action_digest", ActionDigest(w.x_e->action())},
      {"s0_labels", s0},
      {"structure",
       {{"m_ok", st.m_ok},
        {"eta_ok", st.eta_ok},
        {"section_ok", st.section_ok},
        {"cake_ok", st.cake_ok},
        {"decomposition_ok", st.decomposition_ok},
        {"cut_small", st.cut_small},
        {"detail", st.detail}}},
      {"psi_relations", psi.ok ? "exact-pass" : "fail"},
      {"psi_checked", psi.checked},
      {"order_zero", oz.ok ? "exact-pass" : "fail"},
      {"order_zero_checked", oz.checked},
      {"measures", measures},
      {"defects", defects},
      {"defect_vs_m", series},
      {"cited_dependency",
       "1 - rho(1) below a in the Cuntz order follows from the measure gap "
       "through dynamical comparison of the profinite action; cited, not "
       "computed. Measures are uniform on the deepest built level."}};
  Note(r, st.all(), "witness structure: " + st.detail);
  Note(r, psi.ok, "psi relations: " + psi.detail);
  Note(r, oz.ok, "order zero: " + oz.detail);
  Note(r, gap_ok, "trace gap not certified");
  Note(r, defects_ok, "a commutator defect exceeds its bound");
  r.passed = r.detail.empty();
  return r;
}

}  // namespace

DeriveResult DeriveOutputs(const std::string& pipeline, const Json& inputs,
                           const Json& claim) {
  if (pipeline == "folner") return DeriveFolner(inputs, claim);
  if (pipeline == "castle-l33") return DeriveL33(inputs, claim);
  if (pipeline == "castle-t34") return DeriveT34(inputs, claim);
  if (pipeline == "joseph-build") return DeriveJoseph(inputs, claim);
  if (pipeline == "fixed-fractions") return DeriveFixedFractions(inputs, claim);
  if (pipeline == "zstab-witness") return DeriveZstab(inputs, claim);
  Fail(ErrorCode::kSchema, "unknown pipeline '" + pipeline + "'");
}

}  // namespace castellan
