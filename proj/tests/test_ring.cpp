#include <doctest.h>

#include "core/ring.hpp"

using namespace morselink;
using namespace morselink::alg;

TEST_CASE("ring tokens round-trip") {
  CHECK(Ring::parse("Z").name() == "Z");
  CHECK(Ring::parse("Q").name() == "Q");
  CHECK(Ring::parse("Z2").name() == "Zp:2");
  CHECK(Ring::parse("Zp:5").name() == "Zp:5");
  CHECK_THROWS_AS(Ring::parse("Zp:6"), error);
  CHECK_THROWS_AS(Ring::parse("GF4"), error);
}

TEST_CASE("integer arithmetic is exact and guards division") {
  Ring z = Ring::integers();
  Scalar a = z.from_int(6), b = z.from_int(-4);
  CHECK(z.str(z.add(a, b)) == "2");
  CHECK(z.str(z.mul(a, b)) == "-24");
  CHECK(z.str(z.div(z.from_int(-24), a)) == "-4");
  CHECK_THROWS_AS(z.div(a, b), error);  // 6/-4 is not integral
  CHECK(z.is_unit(z.from_int(-1)));
  CHECK_FALSE(z.is_unit(a));
  CHECK_FALSE(z.is_field());
}

TEST_CASE("rational arithmetic normalizes") {
  Ring q = Ring::rationals();
  Scalar half = q.parse_scalar("1/2");
  Scalar third = q.parse_scalar("1/3");
  CHECK(q.str(q.add(half, third)) == "5/6");
  CHECK(q.str(q.div(half, third)) == "3/2");
  CHECK(q.str(q.sub(half, half)) == "0");
  CHECK(q.is_field());
}

TEST_CASE("mod-p residues reduce and invert") {
  Ring f5 = Ring::mod(5);
  CHECK(f5.str(f5.from_int(-3)) == "2");
  CHECK(f5.str(f5.mul(f5.from_int(3), f5.from_int(4))) == "2");
  CHECK(f5.str(f5.inv(f5.from_int(3))) == "2");  // 3*2 = 6 = 1 (mod 5)
  CHECK(f5.str(f5.parse_scalar("1/3")) == "2");
  Ring f2 = Ring::mod(2);
  CHECK(f2.str(f2.from_int(7)) == "1");
  CHECK(f2.str(f2.add(f2.one(), f2.one())) == "0");
}

TEST_CASE("scalar strings survive a round trip") {
  for (const char* token : {"Z", "Q", "Zp:7"}) {
    Ring r = Ring::parse(token);
    for (long v : {-12L, -1L, 0L, 1L, 9L}) {
      Scalar s = r.from_int(v);
      CHECK(r.parse_scalar(r.str(s)) == s);
    }
  }
  Ring q = Ring::rationals();
  Scalar s = q.parse_scalar("-22/7");
  CHECK(q.parse_scalar(q.str(s)) == s);
}
