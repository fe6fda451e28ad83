#include <doctest.h>

#include <cstdint>
#include <limits>
#include <sstream>

#include "pretzelkh/integer.hpp"

using pretzelkh::Integer;

TEST_CASE("small arithmetic stays exact") {
  Integer a = 7;
  Integer b = -3;
  CHECK(a + b == Integer(4));
  CHECK(a - b == Integer(10));
  CHECK(a * b == Integer(-21));
  CHECK(-a == Integer(-7));
  CHECK(Integer(1).is_unit());
  CHECK(Integer(-1).is_unit());
  CHECK_FALSE(Integer(2).is_unit());
  CHECK(Integer(0).is_zero());
  CHECK(Integer(-5).sign() == -1);
}

TEST_CASE("overflow promotes to mpz and demotes back") {
  const Integer big = std::numeric_limits<std::int64_t>::max();
  Integer x = big + Integer(1);
  CHECK_FALSE(x.is_small());
  CHECK(x.to_string() == "9223372036854775808");
  x -= Integer(1);
  CHECK(x.is_small());
  CHECK(x == big);

  Integer sq = big * big;
  CHECK(sq.to_string() == "85070591730234615847396907784232501249");
  CHECK(Integer::divexact(sq, big) == big);
  CHECK_THROWS_AS(sq.to_int64(), std::overflow_error);

  const Integer lo = std::numeric_limits<std::int64_t>::min();
  CHECK((-lo).to_string() == "9223372036854775808");
  CHECK(Integer::abs(lo).to_string() == "9223372036854775808");
}

TEST_CASE("parsing and printing") {
  CHECK(Integer(std::string("-123456789012345678901234567890")).to_string() ==
        "-123456789012345678901234567890");
  std::ostringstream os;
  os << Integer(-42);
  CHECK(os.str() == "-42");
}

TEST_CASE("nearest quotient and gcd") {
  // |a - q b| <= |b| / 2, ties toward zero.
  CHECK(Integer::nearest_quotient(7, 2) == Integer(3));
  CHECK(Integer::nearest_quotient(-7, 2) == Integer(-3));
  CHECK(Integer::nearest_quotient(8, 3) == Integer(3));
  CHECK(Integer::nearest_quotient(-8, 3) == Integer(-3));
  CHECK(Integer::nearest_quotient(10, -4) == Integer(-2));
  for (int a = -30; a <= 30; ++a) {
    for (int b : {-7, -4, -1, 1, 3, 6}) {
      const Integer q = Integer::nearest_quotient(a, b);
      const Integer rem = Integer::abs(Integer(a) - q * Integer(b));
      CHECK(rem * Integer(2) <= Integer::abs(b));
    }
  }
  const Integer huge(std::string("1000000000000000000000"));
  CHECK(Integer::nearest_quotient(huge + Integer(3), 2) * Integer(2) == huge + Integer(2));
  CHECK(Integer::gcd(12, -18) == Integer(6));
  CHECK(Integer::gcd(huge, 35) == Integer(5));
  CHECK(Integer::compare(huge, 1) > 0);
  CHECK(Integer(-huge) < Integer(0));
}
