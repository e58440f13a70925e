#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <limits>
#include <random>

#include "bucketorder/rational.hpp"

using bucketorder::floor_div;
using bucketorder::rational;

TEST_CASE("construction canonicalizes") {
  CHECK(rational(2, 4) == rational(1, 2));
  CHECK(rational(-2, 4) == rational(-1, 2));
  CHECK(rational(1, -2) == rational(-1, 2));
  CHECK(rational(1, -2).den() == 2);
  CHECK(rational(-3, -6) == rational(1, 2));
  CHECK(rational(0, -5).num() == 0);
  CHECK(rational(0, -5).den() == 1);
  CHECK(rational(7).den() == 1);
  CHECK_THROWS_AS(rational(1, 0), std::domain_error);
}

TEST_CASE("predicates") {
  CHECK(rational().is_zero());
  CHECK(rational(3, 3).is_integer());
  CHECK_FALSE(rational(1, 3).is_integer());
  CHECK(rational(-1, 3).is_negative());
  CHECK_FALSE(rational(0).is_negative());
  CHECK(abs(rational(-5, 3)) == rational(5, 3));
  CHECK(abs(rational(5, 3)) == rational(5, 3));
}

TEST_CASE("field identities on random values") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<std::int64_t> num(-50, 50);
  std::uniform_int_distribution<std::int64_t> den(1, 40);
  for (int i = 0; i < 2000; ++i) {
    const rational x(num(rng), den(rng)), y(num(rng), den(rng)), z(num(rng), den(rng));
    CHECK((x + y) - y == x);
    CHECK(x + (-x) == rational());
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x + y == y + x);
    if (!y.is_zero()) CHECK((x * y) / y == x);
  }
  CHECK_THROWS_AS(rational(1) / rational(0), std::domain_error);
}

TEST_CASE("comparison agrees with cross multiplication") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<std::int64_t> num(-30, 30);
  std::uniform_int_distribution<std::int64_t> den(1, 30);
  for (int i = 0; i < 2000; ++i) {
    const rational a(num(rng), den(rng)), b(num(rng), den(rng));
    const bool lt = static_cast<__int128>(a.num()) * b.den() <
                    static_cast<__int128>(b.num()) * a.den();
    CHECK((a < b) == lt);
    CHECK((a >= b) == !lt);
  }
}

TEST_CASE("parse and print round trip") {
  CHECK(rational::parse("3/7") == rational(3, 7));
  CHECK(rational::parse("-2") == rational(-2));
  CHECK(rational::parse("0.52") == rational(13, 25));
  CHECK(rational::parse(".5") == rational(1, 2));
  CHECK(rational::parse("-.5") == rational(-1, 2));
  CHECK(rational::parse("1.20") == rational(6, 5));
  CHECK(rational::parse("10.78") == rational(539, 50));
  CHECK(rational(539, 50).str() == "539/50");
  CHECK(rational(-2).str() == "-2");
  std::mt19937 rng(43);
  std::uniform_int_distribution<std::int64_t> num(-999, 999);
  std::uniform_int_distribution<std::int64_t> den(1, 999);
  for (int i = 0; i < 500; ++i) {
    const rational x(num(rng), den(rng));
    CHECK(rational::parse(x.str()) == x);
  }
}

TEST_CASE("parse rejects malformed text") {
  CHECK_THROWS_AS(rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(rational::parse("1/0"), std::domain_error);
  CHECK_THROWS_AS(rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational::parse("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(rational::parse("--2"), std::invalid_argument);
  CHECK_THROWS_AS(rational::parse("1/"), std::invalid_argument);
}

TEST_CASE("two decimal rendering rounds halves away from zero") {
  CHECK(rational(539, 50).str_2dp() == "10.78");
  CHECK(rational(1313, 50).str_2dp() == "26.26");
  CHECK(rational(1, 3).str_2dp() == "0.33");
  CHECK(rational(2, 3).str_2dp() == "0.67");
  CHECK(rational(2).str_2dp() == "2.00");
  CHECK(rational(1, 200).str_2dp() == "0.01");
  CHECK(rational(-1, 200).str_2dp() == "-0.01");
  CHECK(rational(-7, 2).str_2dp() == "-3.50");
  CHECK(rational(289, 10).str_2dp() == "28.90");
}

TEST_CASE("overflow is detected, never wrapped") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  CHECK_THROWS_AS(rational(big) + rational(1), std::overflow_error);
  CHECK_THROWS_AS(rational(big / 2 + 1) * rational(2), std::overflow_error);
  CHECK_THROWS_AS(rational(1, big) + rational(1, big - 1), std::overflow_error);
  // touching the limit without crossing it is fine
  CHECK(rational(big) * rational(1) == rational(big));
  CHECK(rational(big - 1) + rational(1) == rational(big));
}

TEST_CASE("floor_div floors toward negative infinity") {
  CHECK(floor_div(7, 2) == 3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(6, 2) == 3);
  CHECK(floor_div(-6, 2) == -3);
  CHECK(floor_div(0, 5) == 0);
  CHECK(floor_div(7, -2) == -4);
  CHECK(floor_div(-7, -2) == 3);
}

TEST_CASE("to_double stays close") {
  CHECK(rational(1, 2).to_double() == doctest::Approx(0.5));
  CHECK(rational(-539, 50).to_double() == doctest::Approx(-10.78));
}
