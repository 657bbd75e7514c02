#include <algorithm>
#include <set>

#include "doctest.h"

#include "common/error.hpp"
#include "dynamics/action.hpp"
#include "dynamics/action_json.hpp"
#include "test_support.hpp"

using namespace castellan;

namespace {

// Lamplighter-style action of ℤ ≀ ℤ on (ℤ/n) × (ℤ/m)^n: the shift rotates
// the position, ξ^0 adds 1 to the lamp under the current position.
FinAction SmallLampAction(std::size_t n, std::size_t m) {
  std::size_t total = n;
  for (std::size_t i = 0; i < n; ++i) total *= m;
  auto decode = [&](State s) {
    std::vector<std::size_t> lamps(n);
    std::size_t pos = s % n;
    s /= static_cast<State>(n);
    for (std::size_t i = 0; i < n; ++i) {
      lamps[i] = s % m;
      s /= static_cast<State>(m);
    }
    return std::make_pair(pos, lamps);
  };
  auto encode = [&](std::size_t pos, const std::vector<std::size_t>& lamps) {
    std::size_t s = 0;
    for (std::size_t i = n; i-- > 0;) s = s * m + lamps[i];
    return static_cast<State>(s * n + pos);
  };
  Perm shift(total), lamp(total);
  for (State s = 0; s < total; ++s) {
    auto [pos, lamps] = decode(s);
    // Shift by 1 moves the lamplighter: translating the configuration is
    // equivalent to moving the origin the other way.
    std::vector<std::size_t> rotated(n);
    for (std::size_t i = 0; i < n; ++i) rotated[(i + 1) % n] = lamps[i];
    shift[s] = encode(pos, rotated);
    auto bumped = lamps;
    bumped[0] = (bumped[0] + 1) % m;
    lamp[s] = encode(pos, bumped);
  }
  return FinAction(1, shift, {lamp});
}

}  // namespace

TEST_CASE("act examples on the rotation") {
  const FinAction act = FinAction::Cyclic(8);
  CHECK(act.Act(ShiftElem(3), 6) == 1);
  for (State x = 0; x < 8; ++x) {
    CHECK(act.Act(WreathIdentity(), x) == x);
    CHECK(act.Act(ShiftElem(5), act.Act(ShiftElem(-5), x)) == x);
  }
}

TEST_CASE("fix_set examples") {
  const FinAction act = FinAction::Cyclic(8);
  CHECK(FixSet(WreathIdentity(), act).Count() == 8);
  CHECK(FixSet(ShiftElem(1), act).Empty());
  CHECK(FixSet(ShiftElem(8), act).Count() == 8);
}

TEST_CASE("nonfree_part examples") {
  const FinAction c4 = FinAction::Cyclic(4);
  CHECK(NonfreePart({WreathIdentity()}, c4).Empty());
  CHECK(NonfreePart(ShiftSet({0, 1, 2, 3}), c4).Empty());
  // Brute-force oracle: union of Fix(g) over g ∈ F^{-1}F ∖ {1}.
  const ElemSet f = ShiftSet({0, 4});
  StateSubset oracle(4);
  for (const auto& g : SetProduct(InverseSet(f), f)) {
    if (!g.IsIdentity()) oracle |= FixSet(g, c4);
  }
  CHECK(oracle.Count() == 4);
  CHECK(NonfreePart(f, c4) == oracle);
}

TEST_CASE("nonfree_part agrees with the fixed-set union on random actions") {
  testing::Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const FinAction act = RandomIntegerAction(
        static_cast<std::size_t>(rng.Int(2, 60)), rng.Int(0, 1 << 30));
    std::vector<LambdaElem> shifts;
    for (int i = 0; i < rng.Int(1, 5); ++i) shifts.push_back(rng.Int(-8, 8));
    const ElemSet f = ShiftSet(shifts);
    StateSubset oracle(act.size());
    for (const auto& g : SetProduct(InverseSet(f), f)) {
      if (!g.IsIdentity()) oracle |= FixSet(g, act);
    }
    REQUIRE(NonfreePart(f, act) == oracle);
  }
}

TEST_CASE("action composes on a lamplighter space") {
  const FinAction act = SmallLampAction(3, 2);
  CHECK(act.size() == 24);
  CHECK(act.has_lamps());
  CHECK(act.CheckLampRelations(5, 500, 6));
  testing::Rng rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const WreathElem g = rng.Elem(1), h = rng.Elem(1);
    const State x = static_cast<State>(rng.Int(0, 23));
    REQUIRE(act.Act(WreathMul(g, h), x) == act.Act(g, act.Act(h, x)));
    REQUIRE(act.Act(WreathInv(g), act.Act(g, x)) == x);
  }
}

TEST_CASE("non-commuting lamp permutations are caught") {
  // Two lamp conjugates that do not commute: shift is a 3-cycle, lamp a
  // transposition.
  const FinAction act(1, {1, 2, 0}, {{1, 0, 2}});
  CHECK_FALSE(act.CheckLampRelations(1, 200, 3));
}

TEST_CASE("orbits partition the states") {
  const FinAction act(1, {1, 0, 3, 4, 2, 5});
  CHECK(act.orbits().size() == 3);
  CHECK(act.orbit_of(0) == act.orbit_of(1));
  CHECK(act.orbit_of(2) == act.orbit_of(4));
  CHECK(act.orbit_of(5) != act.orbit_of(0));
}

TEST_CASE("resolution cells must partition") {
  CHECK_THROWS_AS(FinAction(1, {1, 0}, {}, {{0}}), Error);
  CHECK_THROWS_AS(FinAction(1, {1, 0}, {}, {{0, 1}, {1}}), Error);
  CHECK_THROWS_AS(FinAction(1, {0, 0}), Error);
  const FinAction act(1, {1, 0}, {}, {{0, 1}});
  CHECK(act.num_cells() == 1);
  CHECK(act.cell_of(1) == 0);
}

TEST_CASE("action JSON round trip") {
  const FinAction act = SmallLampAction(2, 3);
  const FinAction back = ActionFromJson(ActionToJson(act));
  CHECK(back.size() == act.size());
  for (State x = 0; x < act.size(); ++x) {
    CHECK(back.Act(ShiftElem(1), x) == act.Act(ShiftElem(1), x));
    CHECK(back.Act(XiGenerator(1, 1, 0), x) ==
          act.Act(XiGenerator(1, 1, 0), x));
  }
  nlohmann::json bad = ActionToJson(act);
  bad["extra"] = 1;
  CHECK_THROWS_AS(ActionFromJson(bad), Error);
}

TEST_CASE("subset algebra") {
  const StateSubset a = StateSubset::FromStates(6, {0, 1, 2});
  const StateSubset b = StateSubset::FromStates(6, {2, 3});
  CHECK((a | b).Count() == 4);
  CHECK((a & b).Members() == std::vector<State>{2});
  CHECK(a.Minus(b).Count() == 2);
  CHECK(a.Complement().Count() == 3);
  CHECK((a & b).IsSubsetOf(a));
}
