#include "doctest.h"

#include "dynamics/action_json.hpp"
#include "dynamics/density.hpp"
#include "dynamics/folner.hpp"
#include "test_support.hpp"

using namespace castellan;

namespace {

StateSubset RandomSubset(testing::Rng& rng, std::size_t n) {
  StateSubset s(n);
  for (State x = 0; x < n; ++x) {
    if (rng.Coin()) s.Insert(x);
  }
  return s;
}

// Brute force min/max over x of |{t ∈ F : tx ∈ A}|.
std::pair<Rational, Rational> DensityOracle(const std::vector<LambdaElem>& f,
                                            const StateSubset& a,
                                            std::int64_t n) {
  std::int64_t lo = 1 << 30, hi = -1;
  for (std::int64_t x = 0; x < n; ++x) {
    std::int64_t hits = 0;
    for (auto t : f) hits += a.Contains(static_cast<State>(Mod(x + t, n)));
    lo = std::min(lo, hits);
    hi = std::max(hi, hits);
  }
  const auto k = static_cast<std::int64_t>(f.size());
  return {MakeRational(lo, k), MakeRational(hi, k)};
}

}  // namespace

TEST_CASE("density_F examples") {
  const FinAction act = FinAction::Cyclic(8);
  const ElemSet f = ShiftSet({0, 1});
  const StateSubset all(8, true), none(8);
  CHECK(LowerDensityF(f, all, act) == 1);
  CHECK(UpperDensityF(f, all, act) == 1);
  CHECK(LowerDensityF(f, none, act) == 0);
  CHECK(UpperDensityF(f, none, act) == 0);
  const StateSubset a = StateSubset::FromStates(8, {0, 1, 2, 3});
  const auto [lo, hi] = DensityOracle({0, 1}, a, 8);
  // Windows {x, x+1} at x = 4, 5 miss A entirely, so the minimum is 0;
  // x = 3 and x = 7 are the half-covered windows.
  CHECK(lo == 0);
  CHECK(hi == 1);
  CHECK(LowerDensityF(f, a, FinAction::Cyclic(8)) == 0);
  CHECK(DensityOracle({0, 1}, StateSubset::FromStates(8, {3}), 8).second ==
        MakeRational(1, 2));
  CHECK(LowerDensityF(f, a, act) == lo);
  CHECK(UpperDensityF(f, a, act) == hi);
  CHECK_THROWS(LowerDensityF({}, a, act));
}

TEST_CASE("banach density examples") {
  const FinAction c12 = FinAction::Cyclic(12);
  const StateSubset a = StateSubset::FromStates(12, {0, 3, 6, 9});
  CHECK(BanachLower(a, c12) == MakeRational(1, 3));
  CHECK(BanachUpper(a, c12) == MakeRational(1, 3));
  // Two orbits of sizes 4 and 8.
  Perm p(12);
  for (State i = 0; i < 4; ++i) p[i] = (i + 1) % 4;
  for (State i = 0; i < 8; ++i) p[4 + i] = 4 + (i + 1) % 8;
  const FinAction two(1, p);
  const StateSubset small = StateSubset::FromStates(12, {0, 1, 2, 3});
  CHECK(BanachLower(small, two) == 0);
  CHECK(BanachUpper(small, two) == 1);
  CHECK(InvariantMeasures(two).size() == 2);
  CHECK(InvariantMeasures(c12).size() == 1);
}

TEST_CASE("invariant measures are invariant") {
  testing::Rng rng(4242);
  const FinAction act = RandomIntegerAction(40, 17);
  const auto measures = InvariantMeasures(act);
  for (int trial = 0; trial < 100; ++trial) {
    const StateSubset a = RandomSubset(rng, act.size());
    const WreathElem g = ShiftElem(rng.Int(-10, 10));
    for (const auto& mu : measures) {
      REQUIRE(mu.Measure(act.Translate(g, a), act) == mu.Measure(a, act));
    }
  }
}

TEST_CASE("banach densities bracket every invariant measure") {
  testing::Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const FinAction act = RandomIntegerAction(
        static_cast<std::size_t>(rng.Int(2, 50)), rng.Int(0, 1 << 20));
    const StateSubset a = RandomSubset(rng, act.size());
    const StateSubset b = RandomSubset(rng, act.size());
    REQUIRE(BanachLower(a, act) + BanachUpper(a.Complement(), act) == 1);
    REQUIRE(BanachUpper(a | b, act) <=
            BanachUpper(a, act) + BanachUpper(b, act));
    // A random convex combination of the extreme measures.
    InvariantMeasure mix;
    Rational total = 0;
    for (std::size_t i = 0; i < act.orbits().size(); ++i) {
      mix.weights.push_back(rng.Int(0, 5));
      total += mix.weights.back();
    }
    if (total == 0) continue;
    for (auto& w : mix.weights) w /= total;
    const Rational m = mix.Measure(a, act);
    REQUIRE(BanachLower(a, act) <= m);
    REQUIRE(m <= BanachUpper(a, act));
  }
}

TEST_CASE("orbit form equals the full-period Følner form on ℤ/N") {
  testing::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t n = rng.Int(1, 40);
    const FinAction act = FinAction::Cyclic(static_cast<std::size_t>(n));
    const StateSubset a = RandomSubset(rng, act.size());
    const std::int64_t k = rng.Int(1, 3);
    const ElemSet f = IntervalSet(0, k * n);
    REQUIRE(LowerDensityF(f, a, act) == BanachLower(a, act));
    REQUIRE(UpperDensityF(f, a, act) == BanachUpper(a, act));
  }
}

TEST_CASE("fixed fractions shrink under equal-fiber equivariant quotients") {
  // ℤ/12 → ℤ/4 by reduction; Fix(g) upstairs lies over Fix(g) downstairs.
  const FinAction fine = FinAction::Cyclic(12), coarse = FinAction::Cyclic(4);
  for (LambdaElem g = -12; g <= 12; ++g) {
    const auto up = FixSet(ShiftElem(g), fine).Count();
    const auto down = FixSet(ShiftElem(g), coarse).Count();
    CHECK(MakeRational(static_cast<std::int64_t>(up), 12) <=
          MakeRational(static_cast<std::int64_t>(down), 4));
  }
}
