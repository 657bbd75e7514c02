#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"

#include "common/error.hpp"
#include "dynamics/schreier.hpp"
#include "joseph/joseph.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace castellan;
using castellan::testing::Rng;
using castellan::oracles::RandomInGammaE;

namespace {

WreathElem Lamp(std::int64_t pos, std::int64_t value) {
  return {LampConfig({{pos, ZdVector{value}}}), 0};
}

// Straight transcription of conditions (1)–(8) for d = 1.
bool OracleConditions(const ParamTable& table, const Rational& floor) {
  std::set<std::int64_t> primes;
  Rational product = 1;
  for (const auto& g : table) {
    bool prime = g.p >= 2;
    for (std::int64_t f = 2; f < g.p; ++f) prime = prime && g.p % f != 0;
    if (!prime || !primes.insert(g.p).second) return false;  // (1)
    for (const auto& [pos, v] : g.gamma.lamps.entries()) {
      if (v[0] % g.p == 0) return false;  // (2)
    }
    product *= 1 - g.eps;
    std::vector<std::int64_t> supp;
    for (const auto& e : g.gamma.lamps.entries()) supp.push_back(e.first);
    if (g.l <= static_cast<std::int64_t>(supp.size())) return false;  // (4)
    std::int64_t n = 1;
    for (std::int64_t i = 0; i < g.a; ++i) n *= g.p;
    if (!(g.eps * n > g.l)) return false;  // (5)
    for (auto x : supp) {
      for (auto y : supp) {
        if (x != y && (x - y) % n == 0) return false;  // (6)
      }
    }
    if (g.gamma.shift != 0 && g.gamma.shift % n == 0) return false;  // (7)
    std::set<std::int64_t> e(g.e_cosets.begin(), g.e_cosets.end());
    if (static_cast<std::int64_t>(e.size()) != g.l || !e.count(0)) return false;
    for (auto x : supp) {
      if (!e.count(((x % n) + n) % n)) return false;  // (8)
    }
  }
  return product > floor;  // (3)
}

ParamTable CriterionTable() {
  return ChooseParams({ShiftElem(1), ShiftElem(2)}, 1, 10);
}

std::vector<WreathElem> NestedGammas() {
  return {ShiftElem(1), Lamp(0, 1), ShiftElem(3)};
}

}  // namespace

TEST_CASE("A_gamma membership examples") {
  GammaParams g;
  g.gamma = ShiftElem(1);
  g.p = 5;
  g.a = 1;
  g.l = 1;
  g.eps = MakeRational(1, 2);
  g.e_cosets = {0};
  CHECK(AGammaContains(LampConfig(), g, 1));
  CHECK(AGammaContains(LampConfig({{0, ZdVector{10}}, {3, ZdVector{-5}}}), g, 1));
  CHECK_FALSE(AGammaContains(LampConfig({{0, ZdVector{3}}}), g, 1));
  CHECK(AGammaContains(LampConfig({{0, ZdVector{3}}, {5, ZdVector{2}}}), g, 1));
}

TEST_CASE("choose_params examples") {
  const Rational floor = MakeRational(1, 4);
  SUBCASE("pure shift") {
    const ParamTable t = ChooseParams({ShiftElem(1)}, 1, 8);
    REQUIRE(t.size() == 1);
    CHECK(t[0].p == 11);
    CHECK(t[0].l == 1);
    CHECK(t[0].e_cosets == std::vector<std::int64_t>{0});
    CHECK(t[0].eps * t[0].index() > t[0].l);
    CHECK(t[0].a == 1);
    CHECK(OracleConditions(t, floor));
  }
  SUBCASE("lamp generator") {
    const ParamTable t = ChooseParams({Lamp(0, 1)}, 1, 1);
    REQUIRE(t.size() == 1);
    CHECK(t[0].p == 2);
    CHECK(t[0].l == 2);
    CHECK(t[0].e_cosets == std::vector<std::int64_t>{0, 1});
    CHECK(OracleConditions(t, floor));
  }
  SUBCASE("condition (2) skips primes dividing lamp values") {
    const ParamTable t = ChooseParams({Lamp(0, 6)}, 1, 1);
    CHECK(t[0].p == 5);
    CHECK(OracleConditions(t, floor));
  }
  SUBCASE("distinct primes") {
    const ParamTable t = ChooseParams({ShiftElem(1), ShiftElem(1)}, 1, 1);
    CHECK(t[0].p != t[1].p);
  }
  SUBCASE("condition conflict") {
    try {
      ChooseParams({ShiftElem(1), ShiftElem(2)}, 1, 1, floor,
                   {MakeRational(1, 2), MakeRational(3, 5)});
      FAIL("expected a condition failure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kPrecondition);
    }
  }
  SUBCASE("identity rejected") {
    CHECK_THROWS_AS(ChooseParams({WreathIdentity()}, 1, 1), Error);
  }
}

TEST_CASE("selector output passes the oracle on random gammas") {
  Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<WreathElem> gammas;
    const int count = static_cast<int>(rng.Int(1, 4));
    while (static_cast<int>(gammas.size()) < count) {
      WreathElem g = rng.Elem(1, 3, 6, 9);
      if (g != WreathIdentity()) gammas.push_back(g);
    }
    const ParamTable t = ChooseParams(gammas, 1, rng.Int(1, 20));
    CHECK(OracleConditions(t, MakeRational(1, 4)));
    CHECK(CheckConditions(t, 1, MakeRational(1, 4)).all());
  }
}

TEST_CASE("quotient for the two-prime table") {
  const QuotientSpace q(CriterionTable(), 1);
  CHECK(q.lambda_index() == 143);
  CHECK(q.size() == 143u * 11u * 13u);
  CHECK(q.action().orbits().size() == 1);
  CHECK(q.LabelOf(WreathIdentity()) ==
        CosetLabel{0, std::vector<std::int64_t>(2, 0)});
  for (State s = 0; s < q.size(); s += 97) CHECK(q.Encode(q.Decode(s)) == s);
}

TEST_CASE("label_of is constant on cosets and separates them") {
  const QuotientSpace q(CriterionTable(), 1);
  Rng rng(5);
  int separated = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const WreathElem x = rng.Elem(1, 4, 20, 15);
    const WreathElem z = RandomInGammaE(rng, q);
    REQUIRE(GammaEContains(z, q.table(), 1));
    CHECK(q.LabelOf(x) == q.LabelOf(WreathMul(x, z)));
    // A perturbation outside Γ_E must change the label.
    const WreathElem y = rng.Elem(1, 4, 20, 15);
    const bool same_coset = GammaEContains(WreathMul(WreathInv(x), y), q.table(), 1);
    CHECK((q.LabelOf(x) == q.LabelOf(y)) == same_coset);
    separated += same_coset ? 0 : 1;
  }
  CHECK(separated > 900);
}

TEST_CASE("seeded label trials") {
  const QuotientSpace q(CriterionTable(), 1);
  const LabelTrialReport a = LabelTrials(q, 200, 9);
  CHECK(a.trials == 200);
  CHECK(a.constant_violations == 0);
  CHECK(a.separation_violations == 0);
  CHECK(a.separated > 150);
  REQUIRE(a.samples.size() == 600);
  for (std::size_t i = 1; i < a.samples.size(); i += 3) {
    CHECK(GammaEContains(a.samples[i], q.table(), 1));
  }
  CHECK(LabelTrials(q, 200, 9).samples == a.samples);
  CHECK_FALSE(LabelTrials(q, 200, 10).samples == a.samples);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    CHECK(GammaEContains(RandomGammaEElement(q, rng), q.table(), 1));
  }
}

TEST_CASE("label count matches the index on surrogate parameters") {
  // Conditions relaxed: tiny primes, oracle use only.
  GammaParams a{ShiftElem(1), 2, MakeRational(1, 2), 2, 2, {0, 1}};
  GammaParams b{ShiftElem(2), 3, MakeRational(1, 2), 1, 1, {0}};
  const ParamTable table = {a, b};
  const QuotientSpace q(table, 1);
  CHECK(q.lambda_index() == 12);
  CHECK(q.size() == 12u * 2u * 2u * 3u);
  std::map<State, std::vector<WreathElem>> groups;
  for (std::int64_t lam = 0; lam < 12; ++lam) {
    for (int code = 0; code < 6 * 6 * 6 * 6; ++code) {
      std::vector<LampConfig::Entry> entries;
      int c = code;
      for (std::int64_t pos = 0; pos < 4; ++pos, c /= 6) {
        entries.emplace_back(pos, ZdVector{c % 6});
      }
      const WreathElem x{LampConfig(entries), lam};
      groups[q.StateOf(x)].push_back(x);
    }
  }
  CHECK(groups.size() == q.size());
  std::vector<WreathElem> reps;
  for (const auto& [state, members] : groups) {
    const WreathElem inv = WreathInv(members.front());
    for (std::size_t i = 1; i < members.size(); i += 7) {
      CHECK(GammaEContains(WreathMul(inv, members[i]), table, 1));
    }
    reps.push_back(members.front());
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const WreathElem inv = WreathInv(reps[i]);
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      CHECK_FALSE(GammaEContains(WreathMul(inv, reps[j]), table, 1));
    }
  }
}

TEST_CASE("quotient action agrees with left multiplication") {
  const QuotientSpace q(ChooseParams(NestedGammas(), 1, 1), 1);
  Rng rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const WreathElem x = rng.Elem(1, 3, 12, 9);
    const WreathElem g = rng.Elem(1, 3, 12, 9);
    CHECK(q.StateOf(WreathMul(g, x)) == q.action().Act(g, q.StateOf(x)));
  }
  SUBCASE("shifts move t only") {
    for (State s = 0; s < q.size(); s += 31) {
      const CosetLabel before = q.Decode(s);
      const CosetLabel after = q.Decode(q.action().Act(ShiftElem(5), s));
      CHECK(after.residues == before.residues);
      CHECK(after.t == Mod(before.t + 5, q.lambda_index()));
    }
  }
  SUBCASE("lamps away from every coset translate fix the label") {
    const QuotientSpace q1(ChooseParams({ShiftElem(1)}, 1, 1), 1);
    // Row: p = 2, index 4, E = {0}. t = 1 puts 0 in coset 1 + 4Z only.
    const CosetLabel label{1, {1}};
    const State s = q1.Encode(label);
    CHECK(q1.action().Act(Lamp(2, 1), s) == s);
    CHECK(q1.action().Act(Lamp(1, 1), s) != s);
  }
  CHECK(q.action().orbits().size() == 1);
}

TEST_CASE("refinement maps") {
  const auto gammas = NestedGammas();
  std::vector<QuotientSpace> levels;
  for (std::size_t k = 1; k <= gammas.size(); ++k) {
    levels.emplace_back(
        ChooseParams({gammas.begin(), gammas.begin() + static_cast<long>(k)}, 1, 1),
        1);
  }
  CHECK(levels[0].size() == 8);
  CHECK(levels[1].size() == 648);
  CHECK(levels[2].size() == 81000);
  SUBCASE("identity on equal tables") {
    const auto m = RefinementMap(levels[1], levels[1]);
    for (State s = 0; s < m.size(); ++s) CHECK(m[s] == s);
  }
  SUBCASE("equivariant with equal fibers") {
    const QuotientSpace& fine = levels[1];
    const QuotientSpace& coarse = levels[0];
    const auto m = RefinementMap(fine, coarse);
    std::vector<std::size_t> fiber(coarse.size(), 0);
    for (State s = 0; s < fine.size(); ++s) {
      ++fiber[m[s]];
      for (const auto& [g, perm] : fine.action().Generators()) {
        CHECK(m[perm[s]] == coarse.action().Act(g, m[s]));
      }
    }
    for (auto f : fiber) CHECK(f == fine.size() / coarse.size());
  }
  SUBCASE("composition") {
    const auto m21 = RefinementMap(levels[2], levels[1]);
    const auto m10 = RefinementMap(levels[1], levels[0]);
    const auto m20 = RefinementMap(levels[2], levels[0]);
    for (State s = 0; s < levels[2].size(); s += 13) {
      CHECK(m10[m21[s]] == m20[s]);
    }
  }
  SUBCASE("non-nested tables") {
    const QuotientSpace other(ChooseParams({ShiftElem(7)}, 1, 1), 1);
    CHECK_THROWS_AS(RefinementMap(levels[1], other), Error);
  }
}

TEST_CASE("fixed fractions") {
  const auto gammas = NestedGammas();
  std::vector<QuotientSpace> levels;
  for (std::size_t k = 1; k <= gammas.size(); ++k) {
    levels.emplace_back(
        ChooseParams({gammas.begin(), gammas.begin() + static_cast<long>(k)}, 1, 1),
        1);
  }
  CHECK(FixedFraction(WreathIdentity(), levels[2]) == 1);
  CHECK(FixedFraction(ShiftElem(1), levels[2]) == 0);
  Rng rng(20);
  int violations = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const WreathElem g = rng.Elem(1, 3, 6, 6);
    Rational prev = 2;
    for (const auto& level : levels) {
      // Brute-force fixed count on this level.
      std::int64_t fixed = 0;
      for (State s = 0; s < level.size(); ++s) {
        fixed += level.action().Act(g, s) == s ? 1 : 0;
      }
      const Rational frac = FixedFraction(g, level);
      CHECK(frac == MakeRational(fixed, static_cast<std::int64_t>(level.size())));
      violations += frac > prev ? 1 : 0;
      prev = frac;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("W set and the translate partition") {
  const QuotientSpace q(CriterionTable(), 1);
  const StateSubset w = WSet(q);
  const std::int64_t big_q = q.prime_product();
  CHECK(big_q == 143);
  CHECK(static_cast<std::int64_t>(w.Count()) ==
        static_cast<std::int64_t>(q.size()) / (q.lambda_index() * big_q));
  CHECK(w.Contains(q.StateOf(WreathIdentity())));
  // Translates jξ_1^0 W are pairwise disjoint.
  std::set<State> seen;
  for (std::int64_t j = 0; j < big_q; ++j) {
    for (State x : w.Members()) {
      CHECK(seen.insert(q.action().Act(Lamp(0, j), x)).second);
    }
  }
  const SectionData canon = CanonicalSection(q.lambda_index(), {1, -1});
  for (std::int64_t p_mult : {1, 2, 7, 144}) {
    const PartitionReport rep = PartitionCheck(q, canon, p_mult);
    CHECK(rep.partition);
    CHECK(rep.pieces == static_cast<std::size_t>(q.lambda_index() * big_q));
    CHECK(rep.pieces * w.Count() == q.size());
  }
  CHECK_FALSE(PartitionCheck(q, canon, 11).partition);
  CHECK(LampFixesTranslatedW(q, canon));
  const SectionData eq =
      EquivariantSection(q.lambda_index(), {1, -1}, MakeRational(1, 2));
  CHECK(PartitionCheck(q, eq, 1).partition);
  CHECK(LampFixesTranslatedW(q, eq));
}
