#include <set>

#include "doctest.h"

#include "common/error.hpp"
#include "group_core/wreath.hpp"
#include "test_support.hpp"

using namespace castellan;

namespace {

LampConfig Single(LambdaElem pos, std::vector<std::int64_t> v) {
  return LampConfig({{pos, ZdVector(std::move(v))}});
}

// Pointwise oracle for β_λ(f)(λ′) = f(λ′ − λ) over a window.
bool BetaMatchesDefinition(LambdaElem lambda, const LampConfig& f,
                           std::size_t d) {
  const LampConfig g = BetaShift(lambda, f);
  for (LambdaElem x = -40; x <= 40; ++x) {
    if (g.At(x, d) != f.At(x - lambda, d)) return false;
  }
  return g.support_size() == f.support_size();
}

}  // namespace

TEST_CASE("beta_shift examples") {
  const LampConfig f = Single(0, {1});
  CHECK(BetaShift(0, f) == f);
  CHECK(BetaShift(5, LampConfig()) == LampConfig());
  CHECK(BetaShift(2, f) == Single(2, {1}));
  CHECK(BetaMatchesDefinition(2, f, 1));
}

TEST_CASE("lamp configurations never store zeros") {
  LampConfig f({{0, ZdVector{2}}, {0, ZdVector{-2}}, {3, ZdVector{1}}});
  CHECK(f.support_size() == 1);
  CHECK(f == Single(3, {1}));
  CHECK((f + -f).empty());
}

TEST_CASE("wreath inverse examples") {
  CHECK(WreathInv(WreathIdentity()) == WreathIdentity());
  CHECK(WreathInv(XiGenerator(1, 1, 0)) ==
        WreathElem{Single(0, {-1}), 0});
  const WreathElem a{Single(0, {1}), 1};
  const WreathElem inv = WreathInv(a);
  CHECK(inv == WreathElem{Single(-1, {-1}), -1});
  CHECK(WreathMul(a, inv).IsIdentity());
  CHECK(WreathMul(inv, a).IsIdentity());
}

TEST_CASE("xi generator definition and conjugation") {
  const WreathElem x = XiGenerator(3, 1, 0);
  CHECK(x.shift == 0);
  CHECK(x.lamps == Single(0, {1, 0, 0}));
  CHECK_THROWS_AS(XiGenerator(2, 3, 0), Error);
  CHECK_THROWS_AS(XiGenerator(2, 0, 0), Error);
  for (LambdaElem mu = -6; mu <= 6; ++mu) {
    for (std::size_t j = 1; j <= 2; ++j) {
      const WreathElem conj = WreathMul(
          WreathMul(ShiftElem(mu), XiGenerator(2, j, 0)), ShiftElem(-mu));
      CHECK(conj == XiGenerator(2, j, mu));
    }
  }
}

TEST_CASE("shift commutes past lamp generators by translation") {
  // λ·(nξ_j^{λ′}) = nξ_j^{λ+λ′}·λ
  for (std::size_t d = 1; d <= 2; ++d) {
    for (LambdaElem lam = -4; lam <= 4; ++lam) {
      for (LambdaElem lp = -4; lp <= 4; ++lp) {
        for (std::int64_t n = -10; n <= 10; ++n) {
          if (n == 0) continue;
          for (std::size_t j = 1; j <= d; ++j) {
            const WreathElem lhs =
                WreathMul(ShiftElem(lam), XiGenerator(d, j, lp, n));
            const WreathElem rhs =
                WreathMul(XiGenerator(d, j, lam + lp, n), ShiftElem(lam));
            REQUIRE(lhs == rhs);
          }
        }
      }
    }
  }
}

TEST_CASE("group axioms on random triples") {
  testing::Rng rng(20260101);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.Int(1, 3));
    const WreathElem a = rng.Elem(d), b = rng.Elem(d), c = rng.Elem(d);
    REQUIRE(WreathMul(WreathMul(a, b), c) == WreathMul(a, WreathMul(b, c)));
    REQUIRE(WreathMul(a, WreathIdentity()) == a);
    REQUIRE(WreathMul(WreathIdentity(), a) == a);
    REQUIRE(WreathMul(a, WreathInv(a)).IsIdentity());
    REQUIRE(WreathMul(WreathInv(a), a).IsIdentity());
  }
}

TEST_CASE("beta_shift is an action") {
  testing::Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const LampConfig f = rng.Lamps(2, 4, 10, 5);
    const LambdaElem l = rng.Int(-20, 20), m = rng.Int(-20, 20);
    REQUIRE(BetaShift(l + m, f) == BetaShift(l, BetaShift(m, f)));
    REQUIRE(BetaMatchesDefinition(l, f, 2));
  }
}

TEST_CASE("powers agree with repeated multiplication") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const WreathElem a = rng.Elem(1);
    WreathElem acc;
    for (int n = 0; n <= 6; ++n) {
      REQUIRE(WreathPow(a, n) == acc);
      REQUIRE(WreathPow(a, -n) == WreathInv(acc));
      acc = WreathMul(acc, a);
    }
  }
}

TEST_CASE("generators reach every element of a small ball") {
  // Target: lamps supported in [-1,1] with values in [-1,1], shift in [-1,1].
  std::set<WreathElem> targets;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        for (int s = -1; s <= 1; ++s)
          targets.insert(
              {LampConfig({{-1, ZdVector{a}}, {0, ZdVector{b}},
                           {1, ZdVector{c}}}),
               s});
  const std::vector<WreathElem> gens = {ShiftElem(1), ShiftElem(-1),
                                        XiGenerator(1, 1, 0),
                                        XiGenerator(1, 1, 0, -1)};
  std::set<WreathElem> seen = {WreathIdentity()};
  std::vector<WreathElem> frontier = {WreathIdentity()};
  for (int len = 0; len < 12; ++len) {
    std::vector<WreathElem> next;
    for (const auto& w : frontier) {
      for (const auto& g : gens) {
        WreathElem x = WreathMul(w, g);
        if (seen.insert(x).second) next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  for (const auto& t : targets) CHECK(seen.count(t) == 1);
}

TEST_CASE("element text round trip") {
  testing::Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.Int(1, 3));
    const WreathElem a = rng.Elem(d);
    REQUIRE(ParseElem(FormatElem(a), d) == a);
  }
  CHECK(ParseElem("x1@2^3 * 4", 1) ==
        WreathMul(XiGenerator(1, 1, 2, 3), ShiftElem(4)));
  CHECK(ParseElem("e", 2).IsIdentity());
  CHECK(ParseElem("-3", 1) == ShiftElem(-3));
  for (const char* bad : {"", "x", "x1", "x3@0", "1**2", "y", "x1@a"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ParseElem(bad, 2), Error);
  }
}
