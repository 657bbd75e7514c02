#include <algorithm>
#include <set>

#include "doctest.h"

#include "common/error.hpp"
#include "dynamics/folner.hpp"
#include "test_support.hpp"

using namespace castellan;

namespace {

// Direct set computation of |KF △ F| / |F| on integer sets.
Rational IntegerRatioOracle(const std::set<std::int64_t>& f,
                            const std::set<std::int64_t>& k) {
  std::set<std::int64_t> kf;
  for (auto a : k)
    for (auto b : f) kf.insert(a + b);
  std::int64_t sym = 0;
  for (auto x : kf) sym += f.count(x) ? 0 : 1;
  for (auto x : f) sym += kf.count(x) ? 0 : 1;
  return MakeRational(sym, static_cast<std::int64_t>(f.size()));
}

std::set<std::int64_t> Range(std::int64_t lo, std::int64_t hi) {
  std::set<std::int64_t> s;
  for (auto x = lo; x < hi; ++x) s.insert(x);
  return s;
}

}  // namespace

TEST_CASE("folner_invariance examples") {
  CHECK(FolnerInvariance(IntervalSet(0, 7), {WreathIdentity()}) == 0);
  CHECK(IntegerRatioOracle(Range(0, 10), {1}) == MakeRational(2, 10));
  CHECK(FolnerInvariance(IntervalSet(0, 10), ShiftSet({1})) ==
        MakeRational(2, 10));
  for (std::int64_t n = 2; n <= 30; ++n) {
    const Rational expected = IntegerRatioOracle(Range(0, n), {-1, 1});
    CHECK(expected == MakeRational(2, n));
    CHECK(FolnerInvariance(IntervalSet(0, n), ShiftSet({-1, 1})) == expected);
  }
  CHECK_THROWS_AS(FolnerInvariance(ElemSet{}, ShiftSet({1})), Error);
}

TEST_CASE("box counting agrees with explicit sets on random integer K") {
  testing::Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t lo = rng.Int(-5, 5), hi = lo + rng.Int(1, 20);
    std::vector<LambdaElem> ks;
    for (int i = 0; i < rng.Int(1, 4); ++i) ks.push_back(rng.Int(-6, 6));
    const ElemSet k = ShiftSet(ks);
    std::set<std::int64_t> kset(ks.begin(), ks.end());
    const Rational oracle = IntegerRatioOracle(Range(lo, hi), kset);
    REQUIRE(FolnerInvariance(IntervalSet(lo, hi), k) == oracle);
    REQUIRE(FolnerInvariance(FiberedBoxSet::Interval(1, lo, hi), k) == oracle);
  }
}

TEST_CASE("wreath balls: counting matches enumeration for small radii") {
  const ElemSet k = MakeElemSet({ShiftElem(1), ShiftElem(-1),
                                 XiGenerator(1, 1, 0),
                                 XiGenerator(1, 1, 0, -1)});
  for (std::int64_t r = 0; r <= 1; ++r) {
    const FiberedBoxSet ball = FiberedBoxSet::WreathBall(1, r, r * r);
    const ElemSet explicit_set = ball.Enumerate(100000);
    CHECK(BigInt(static_cast<unsigned long>(explicit_set.size())) ==
          ball.Count());
    for (const auto& g : explicit_set) CHECK(ball.Contains(g));
    CHECK(FolnerInvariance(ball, k) == FolnerInvariance(explicit_set, k));
  }
  // Mixed dimension-2 check with a lamp translate off the origin.
  const FiberedBoxSet ball2 = FiberedBoxSet::WreathBall(2, 1, 1);
  const ElemSet k2 = MakeElemSet({ShiftElem(1), XiGenerator(2, 2, 1, 2),
                                  WreathMul(XiGenerator(2, 1, -1), ShiftElem(-1))});
  CHECK(FolnerInvariance(ball2, k2) ==
        FolnerInvariance(ball2.Enumerate(1000000), k2));
}

TEST_CASE("wreath ball ratios decrease toward zero") {
  const ElemSet k = MakeElemSet({ShiftElem(1), ShiftElem(-1),
                                 XiGenerator(1, 1, 0),
                                 XiGenerator(1, 1, 0, -1)});
  Rational prev = 3;
  for (std::int64_t r = 1; r <= 5; ++r) {
    const Rational ratio =
        FolnerInvariance(FiberedBoxSet::WreathBall(1, r, r * r), k);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(prev < MakeRational(1, 2));
}

TEST_CASE("folner_supplier examples") {
  const FolnerResult z =
      FolnerSupplier(GroupKind::kIntegers, 1, ShiftSet({-1, 1}),
                     MakeRational(1, 2));
  CHECK(z.size == 5);
  CHECK(z.ratio == MakeRational(2, 5));
  // Smallest: the next smaller interval fails.
  CHECK(FolnerInvariance(IntervalSet(0, 4), ShiftSet({-1, 1})) ==
        MakeRational(1, 2));
  const FolnerResult id = FolnerSupplier(GroupKind::kIntegers, 1,
                                         {WreathIdentity()}, MakeRational(1, 100));
  CHECK(id.cardinality == 1);
  const FolnerResult lat = FolnerSupplier(
      GroupKind::kLattice, 2,
      MakeElemSet({XiGenerator(2, 1, 0), XiGenerator(2, 2, 0)}),
      MakeRational(1, 3));
  CHECK(lat.ratio < MakeRational(1, 3));
  CHECK(lat.ratio == FolnerInvariance(lat.set.Enumerate(100000),
                                      MakeElemSet({XiGenerator(2, 1, 0),
                                                   XiGenerator(2, 2, 0)})));
  const FolnerResult wr = FolnerSupplier(
      GroupKind::kWreath, 1,
      MakeElemSet({ShiftElem(1), ShiftElem(-1), XiGenerator(1, 1, 0)}),
      MakeRational(1, 2));
  CHECK(wr.ratio < MakeRational(1, 2));
  CHECK(wr.lamp_bound == wr.size * wr.size);
  CHECK_THROWS_AS(FolnerSupplier(GroupKind::kIntegers, 1,
                                 {XiGenerator(1, 1, 0)}, MakeRational(1, 2), 50),
                  Error);
}

TEST_CASE("shrink examples") {
  const ElemSet f = IntervalSet(0, 100);
  ElemSet fp = f;
  fp.erase(std::find(fp.begin(), fp.end(), ShiftElem(50)));
  const ElemSet k = ShiftSet({1});
  CHECK(FolnerInvariance(fp, k) == MakeRational(4, 99));
  CHECK(ShrinkPreservesInvariance(f, fp, k, MakeRational(1, 10)));
  CHECK(ShrinkPreservesInvariance(f, f, k, MakeRational(3, 100)));
  CHECK(FolnerInvariance(f, k) == MakeRational(2, 100));
  CHECK(ShrinkEpsilon(2, MakeRational(1, 8)) == MakeRational(1, 33));
}

TEST_CASE("shrink epsilon never falsifies the implication") {
  testing::Rng rng(2024);
  int exercised = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<LambdaElem> ks;
    for (int i = 0; i < rng.Int(1, 3); ++i) ks.push_back(rng.Int(-3, 3));
    const ElemSet k = ShiftSet(ks);
    const Rational delta = MakeRational(rng.Int(1, 9), 10);
    const Rational eps = ShrinkEpsilon(k.size(), delta);
    // Random F built from a few intervals, kept only if (K, ε)-invariant.
    std::vector<WreathElem> fv;
    const int blocks = static_cast<int>(rng.Int(1, 3));
    for (int b = 0; b < blocks; ++b) {
      const std::int64_t lo = rng.Int(-500, 500);
      const ElemSet iv = IntervalSet(lo, lo + rng.Int(50, 400));
      fv.insert(fv.end(), iv.begin(), iv.end());
    }
    const ElemSet f = MakeElemSet(fv);
    if (!(FolnerInvariance(f, k) < eps)) continue;
    ++exercised;
    // Remove up to ⌊ε|F|⌋ random points.
    const Rational budget = eps * static_cast<long>(f.size());
    const auto max_remove = static_cast<std::int64_t>(
        BigInt(budget.get_num() / budget.get_den()).get_si());
    ElemSet fp = f;
    std::shuffle(fp.begin(), fp.end(), rng.engine());
    fp.resize(fp.size() - static_cast<std::size_t>(rng.Int(0, max_remove)));
    fp = MakeElemSet(fp);
    REQUIRE(ShrinkPreservesInvariance(f, fp, k, delta));
  }
  CHECK(exercised > 20);
}
