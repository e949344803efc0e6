#include <doctest.h>

#include <cmath>

#include "anosov/zeta.hpp"

using namespace anosov;
using namespace anosov::zeta;
using orbits::HolonomyCharacter;

namespace {
orbits::OrbitCatalog single_orbit(double length, double expansion) {
  orbits::OrbitCatalog c;
  c.source = "fuchsian:synthetic";
  c.cutoff = length;
  c.complete = true;
  orbits::ClosedOrbit o;
  o.length = o.primitive_length = length;
  o.expansion = expansion;
  o.word = "a";
  o.h1_class = {1};
  c.orbits.push_back(o);
  return c;
}
}  // namespace

TEST_CASE("empty catalog") {
  orbits::OrbitCatalog c;
  c.source = "fuchsian:empty";
  c.complete = true;
  auto z = ruelle_zeta(c, HolonomyCharacter::trivial(1), {2.0, 0.0});
  CHECK(z.value == cplx(1.0, 0.0));
  CHECK(trace_sum_Fk(c, HolonomyCharacter::trivial(1), 1, {2.0, 0.0}) == cplx(0.0, 0.0));
}

TEST_CASE("single synthetic orbit") {
  auto c = single_orbit(1.0, 3.0);
  auto chi = HolonomyCharacter::trivial(1);
  ZetaOptions cut;
  cut.iterates = IterateMode::Cutoff;
  cplx F0 = trace_sum_Fk(c, chi, 0, {2.0, 0.0}, cut);
  CHECK(F0.real() == doctest::Approx(-std::exp(-2.0) * 0.75).epsilon(1e-14));
  CHECK(F0.real() == doctest::Approx(-0.101501));
  CHECK(trace_sum_Fk(c, chi, 2, {2.0, 0.0}, cut) == F0);
  cplx F1 = trace_sum_Fk(c, chi, 1, {2.0, 0.0}, cut);
  CHECK(F1.real() == doctest::Approx(-std::exp(-2.0) * (10.0 / 3.0) * 0.75).epsilon(1e-14));
  // Converged iterates: geometric series over k.
  double expect = 0.0;
  for (int k = 1; k < 60; ++k) {
    double lk = std::pow(3.0, k);
    expect -= std::exp(-2.0 * k) / (lk + 1.0 / lk - 2.0);
  }
  CHECK(trace_sum_Fk(c, chi, 0, {2.0, 0.0}).real() == doctest::Approx(expect).epsilon(1e-13));
  auto z = ruelle_zeta(c, chi, {2.0, 0.0});
  CHECK(z.value.real() == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("trace sums and the logarithmic derivative agree on a synthetic catalog") {
  auto c = single_orbit(1.3, 2.5);
  c.orbits.push_back(c.orbits[0]);
  c.orbits[1].length = c.orbits[1].primitive_length = 1.9;
  c.orbits[1].expansion = 4.0;
  c.orbits[1].word = "b";
  c.cutoff = 1.9;
  HolonomyCharacter chi{{0.6}};
  for (cplx s : {cplx(2.0, 0.0), cplx(2.4, 1.3)}) {
    auto f = factorization_check(c, chi, s);
    CHECK(f.residual < 1e-7);
  }
}

TEST_CASE("twist shifts the argument") {
  const orbits::IMat2 A{2, 1, 1, 1};
  auto cat = orbits::catmap_orbits(A, 14);
  const double th = 0.7;
  cplx s(2.3, 0.0);
  CHECK(std::abs(catmap_closed_form(A, th, s) - catmap_closed_form(A, 0.0, s - cplx(0.0, th))) < 1e-14);
  auto a = ruelle_zeta(cat, HolonomyCharacter{{th}}, s).value;
  auto b = ruelle_zeta(cat, HolonomyCharacter{{0.0}}, s - cplx(0.0, th)).value;
  CHECK(std::abs(a - b) < 1e-13);
}

TEST_CASE("vanishing order and the value at zero") {
  const orbits::IMat2 A{2, 1, 1, 1};
  CHECK(catmap_vanishing_order(A, 0.0) == -2);
  CHECK(catmap_vanishing_order(A, lorentz::kPi) == 0);
  CHECK(catmap_vanishing_order(A, 1.0) == 0);
  // z = -1: (1 + 3 + 1) / 4.
  CHECK(std::abs(catmap_closed_form(A, lorentz::kPi, 0.0) - 1.25) < 1e-14);
  CHECK(catmap_vanishing_order({-3, 1, -1, 0}, lorentz::kPi) == 0);
}

TEST_CASE("error bound covers the closed form") {
  const orbits::IMat2 A{2, 1, 1, 1};
  auto cat = orbits::catmap_orbits(A, 12);
  auto fine = orbits::catmap_orbits(A, 16);
  auto chi = HolonomyCharacter::trivial(1);
  for (int i = 0; i < 20; ++i) {
    cplx s(1.5 + 0.08 * i, -2.0 + 0.21 * i);
    auto z = ruelle_zeta(cat, chi, s);
    CHECK(z.rigorous_bound);
    CHECK(std::abs(z.value - catmap_closed_form(A, 0.0, s)) <= z.err_bound);
    CHECK(std::abs(z.value - ruelle_zeta(fine, chi, s).value) <= z.err_bound);
  }
}

TEST_CASE("convergence domain") {
  auto cat = orbits::catmap_orbits({2, 1, 1, 1}, 4);
  CHECK_THROWS_AS(ruelle_zeta(cat, HolonomyCharacter::trivial(1), {1.0, 0.0}), ConvergenceDomainError);
  CHECK_THROWS_AS(trace_sum_Fk(cat, HolonomyCharacter::trivial(1), 0, {0.2, 5.0}), ConvergenceDomainError);
  CHECK_THROWS(trace_sum_Fk(cat, HolonomyCharacter::trivial(1), 3, {2.0, 0.0}));
}

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value().real() == 1000.0);
}
