#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using muset::Rat;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, 4) == Rat(-1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(0, 5) == Rat(0));
  CHECK(Rat(6, 3).str() == "2/1");
  CHECK(Rat(-9, -6).str() == "3/2");
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 3) - Rat(1, 2) == Rat(-1, 6));
  CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
  CHECK(Rat(2, 3) / Rat(4, 9) == Rat(3, 2));
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
  // no drift over many accumulations
  Rat acc(0);
  for (int i = 0; i < 300; ++i) acc += Rat(1, 300);
  CHECK(acc == Rat(1));
}

TEST_CASE("comparisons cross-multiply exactly") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(7, 5) > Rat(4, 3));
  CHECK(Rat(2, 6) <= Rat(1, 3));
  CHECK(Rat(2, 6) >= Rat(1, 3));
}

TEST_CASE("pow2 covers both signs") {
  CHECK(Rat::pow2(0) == Rat(1));
  CHECK(Rat::pow2(10) == Rat(1024));
  CHECK(Rat::pow2(-3) == Rat(1, 8));
  CHECK(Rat::pow2(40) * Rat::pow2(-40) == Rat(1));
}

TEST_CASE("ceil_log2") {
  CHECK(muset::ceil_log2(Rat(1)) == 0);
  CHECK(muset::ceil_log2(Rat(2)) == 1);
  CHECK(muset::ceil_log2(Rat(5)) == 3);
  CHECK(muset::ceil_log2(Rat(101)) == 7);
  CHECK(muset::ceil_log2(Rat(3, 2)) == 1);
  CHECK_THROWS_AS(muset::ceil_log2(Rat(1, 2)), std::domain_error);
}

TEST_CASE("algebraic identities on random rationals") {
  auto g = testutil::rng(101);
  for (int i = 0; i < 500; ++i) {
    Rat a = testutil::random_rational(g, 1000, 60);
    Rat b = testutil::random_rational(g, 1000, 60);
    CHECK(a + b - b == a);
    if (!b.is_zero()) CHECK(a * b / b == a);
    CHECK((a < b) == !(a >= b));
  }
}
