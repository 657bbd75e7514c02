#include "doctest.h"

#include "common/error.hpp"
#include "dynamics/action_json.hpp"
#include "dynamics/schreier.hpp"

using namespace castellan;

TEST_CASE("wedding_cake examples") {
  const FinAction c10 = FinAction::Cyclic(10);
  const SchreierGraph g(c10, ShiftSet({-1, 1}));
  const auto empty = WeddingCake(g, StateSubset(10), 3);
  CHECK(empty.CountNotOne() == 0);
  const auto full = WeddingCake(g, StateSubset(10, true), 3);
  for (State x = 0; x < 10; ++x) CHECK(full.Value(x) == 0);

  const auto f = WeddingCake(g, StateSubset::FromStates(10, {0}), 2);
  // BFS oracle on the cycle.
  for (State x = 0; x < 10; ++x) {
    const std::int64_t d = std::min<std::int64_t>(x, 10 - x);
    CHECK(f.Value(x) == MakeRational(std::min<std::int64_t>(d, 2), 2));
  }
  CHECK(f.Value(1) == MakeRational(1, 2));
  CHECK(f.Value(9) == MakeRational(1, 2));
  CHECK(f.CountNotOne() == 3);
  CHECK(WeddingCakeBound(2, 2, 1) == 3);
}

TEST_CASE("schreier labels must be symmetric") {
  CHECK_THROWS_AS(SchreierGraph(FinAction::Cyclic(5), ShiftSet({1})), Error);
}

TEST_CASE("equivariant_section examples") {
  for (std::int64_t n = 2; n <= 30; ++n) {
    const SectionData s = CanonicalSection(n, {1});
    CHECK(s.defect == std::vector<std::int64_t>{n - 1});
    CHECK(s.DefectFraction() == MakeRational(1, n));
    CHECK(CheckSection(s));
  }
  CHECK(CanonicalSection(17, {0}).defect.empty());
  const SectionData s100 = EquivariantSection(100, {-1, 1}, MakeRational(1, 10));
  CHECK(s100.defect == std::vector<std::int64_t>{0, 99});
  CHECK(s100.DefectFraction() <= MakeRational(2, 100));
  CHECK_THROWS_AS(EquivariantSection(10, {-1, 1}, MakeRational(1, 10)), Error);
}

TEST_CASE("section checker rejects a shrunken defect set") {
  SectionData s = CanonicalSection(12, {-2, -1, 1, 2});
  CHECK(s.defect.size() == 4);
  s.defect.pop_back();
  CHECK_FALSE(CheckSection(s));
}
