#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rdmlab/prob.hpp"

using namespace rdmlab;

TEST_CASE("fractions render reduced with an explicit denominator") {
  CHECK(to_fraction(make_prob(2, 6)) == "1/3");
  CHECK(to_fraction(Prob(0)) == "0/1");
  CHECK(to_fraction(Prob(1)) == "1/1");
  CHECK(to_fraction(make_prob(62, 120)) == "31/60");
}

TEST_CASE("decimals round half away from zero") {
  CHECK(to_decimal(make_prob(1, 3)) == "0.333333");
  CHECK(to_decimal(make_prob(2, 3)) == "0.666667");
  CHECK(to_decimal(make_prob(1, 8), 2) == "0.13");
  CHECK(to_decimal(make_prob(-1, 8), 2) == "-0.13");
  CHECK(to_decimal(Prob(1)) == "1.000000");
  CHECK(to_decimal(make_prob(7, 2), 0) == "4");
}

TEST_CASE("parse_fraction round-trips exact output") {
  for (const Prob& p : {make_prob(31, 60), make_prob(4499, 9450), Prob(0), Prob(1), make_prob(-5, 7)}) {
    CHECK(parse_fraction(to_fraction(p)) == p);
  }
  CHECK(parse_fraction("4/8") == make_prob(1, 2));
  CHECK(parse_fraction("3") == Prob(3));
}

TEST_CASE("parse_fraction rejects malformed text") {
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "a/b", "1/-2", "1.5", "1//2"}) {
    CHECK_THROWS_AS(parse_fraction(bad), std::invalid_argument);
  }
}

TEST_CASE("pair counts") {
  CHECK(pairs(0) == 0);
  CHECK(pairs(1) == 0);
  CHECK(pairs(2) == 1);
  CHECK(pairs(5) == 10);
  CHECK(pairs(20) == 190);
}
