#include "doctest.h"

#include "common/error.hpp"
#include "common/rational.hpp"

using castellan::Error;
using castellan::FormatDecimal;
using castellan::FormatRational;
using castellan::MakeRational;
using castellan::ParseRational;

TEST_CASE("rationals parse to canonical form") {
  CHECK(ParseRational("2/4") == MakeRational(1, 2));
  CHECK(ParseRational("-3") == MakeRational(-3));
  CHECK(ParseRational("+7/21") == MakeRational(1, 3));
  CHECK(FormatRational(ParseRational("6/8")) == "3/4");
  CHECK(FormatRational(MakeRational(0)) == "0/1");
  CHECK(FormatRational(MakeRational(5)) == "5/1");
}

TEST_CASE("malformed rationals are rejected") {
  for (const char* bad : {"1/0", "", "1/", "/2", "1.5", "a", "1/-2", "1 /2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ParseRational(bad), Error);
  }
}

TEST_CASE("decimal rendering truncates toward zero") {
  CHECK(FormatDecimal(MakeRational(1, 3), 4) == "0.3333");
  CHECK(FormatDecimal(MakeRational(-1, 8), 3) == "-0.125");
  CHECK(FormatDecimal(MakeRational(7), 2) == "7.00");
  CHECK(castellan::Pow(MakeRational(2, 3), 3) == MakeRational(8, 27));
}
