#include <doctest.h>

#include <random>

#include "anosov/exact.hpp"
#include "anosov/group.hpp"

using namespace anosov::exact;

TEST_CASE("Z[sqrt 2] arithmetic against doubles") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> U(-50, 50);
  for (int i = 0; i < 500; ++i) {
    Z2 x(Int(U(rng)), Int(U(rng))), y(Int(U(rng)), Int(U(rng)));
    CHECK((x * y).to_double() == doctest::Approx(x.to_double() * y.to_double()).epsilon(1e-12));
    CHECK((x + y - y) == x);
    CHECK(x * y == y * x);
  }
}

TEST_CASE("exact sign agrees with the double value away from zero") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> U(-1000, 1000);
  for (int i = 0; i < 2000; ++i) {
    Z2 x(Int(U(rng)), Int(U(rng)));
    double d = x.to_double();
    if (std::abs(d) > 1e-6) CHECK(x.sign() == (d > 0 ? 1 : -1));
  }
  // 3 - 2 sqrt 2 > 0 although both parts have opposite signs.
  CHECK(Z2(Int(3), Int(-2)).sign() == 1);
  CHECK(Z2(Int(-3), Int(2)).sign() == -1);
  CHECK(Z2(Int(0), Int(0)).sign() == 0);
}

TEST_CASE("t^2 = 2 + 2 sqrt 2 in the tower") {
  Z2t t(Z2(Int(0), Int(0)), Z2(Int(1), Int(0)));
  CHECK(t * t == Z2t(Z2(Int(2), Int(2))));
  CHECK((t * t).to_double() == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)));
  CHECK(t.conj() * t == Z2t(-Z2(Int(2), Int(2))));
}

TEST_CASE("overflow is reported, never wrapped") {
  Int big(std::int64_t(1) << 62);
  CHECK_THROWS_AS(big * Int(4), OverflowError);
  CHECK_THROWS_AS(big + big, OverflowError);
}

TEST_CASE("Bolza generators are exactly Lorentzian and satisfy the relator") {
  auto gens = anosov::group::bolza_generators();
  REQUIRE(gens.size() == 4);
  for (const auto& g : gens) {
    REQUIRE(g.exact);
    CHECK(is_lorentzian(*g.exact));
    CHECK(g.exact->det() == Z2t(1));
    CHECK((*g.exact * g.exact->lorentz_inverse()) == Mat3Z2t::identity());
  }
  auto a = anosov::group::Alphabet::from_generators(gens);
  auto r = anosov::group::evaluate(a, anosov::group::bolza_relator());
  REQUIRE(r.exact);
  CHECK(*r.exact == Mat3Z2t::identity());
}
