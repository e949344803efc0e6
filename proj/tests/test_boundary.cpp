#include <doctest.h>

#include <cmath>

#include "anosov/boundary.hpp"

using namespace anosov;
using namespace anosov::boundary;
using lorentz::kPi;

namespace {
// Trapezoid rule for the pairing of a circle function against w.
cplx trapezoid_pair(const TrigPoly& w, const std::function<double(double)>& f, int n = 20000) {
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * kPi * i / n;
    acc += w.eval(t) * f(t);
  }
  return acc * (2.0 * kPi / n);
}

BoundaryDensity density(std::vector<cplx> c) {
  BoundaryDensity d;
  d.w = TrigPoly(std::move(c));
  return d;
}
}  // namespace

TEST_CASE("the constant is equivariant at lambda = 0") {
  auto sys = bd0_system(group::bolza_generators(), 0.0, 8);
  TrigPoly one(8);
  one[0] = 1.0;
  CHECK(sys.residual(one) < 1e-10);
  TrigPoly c(8);
  c[1] = c[-1] = 0.5;
  CHECK(sys.residual(c) > 1e-3);
  CHECK_THROWS(bd0_system(group::bolza_generators(), 0.0, 2));
}

TEST_CASE("bump functions") {
  BumpFunction b{1.0, 0.1, 0.3, 2.0};
  CHECK(b.eval(1.05) == 2.0);
  CHECK(b.eval(1.31) == 0.0);
  CHECK(b.eval(1.0 + 2.0 * kPi) == 2.0);
  double prev = b.eval(1.1);
  for (int i = 1; i <= 40; ++i) {
    double v = b.eval(1.1 + 0.005 * i);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
  double integral = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) integral += b.eval_line(0.5 + (i + 0.5) / n);
  integral /= n;
  CHECK(integral == doctest::Approx(b.line_integral()).epsilon(1e-9));
}

TEST_CASE("circle pairing against an independent trapezoid") {
  TrigPoly w(2);
  w[0] = 0.3;
  w[1] = cplx(0.5, 0.2);
  w[-1] = cplx(0.5, -0.2);
  w[2] = cplx(0.0, 0.1);
  CircleFunction f;
  f.constant = 0.25;
  f.terms.push_back({BumpFunction{0.4, 0.05, 0.2, 1.0}, 1.5, std::nullopt});
  f.terms.push_back({BumpFunction{2.5, 0.1, 0.15, 1.0}, -0.7, group::bolza_generators()[1]});
  cplx ref = trapezoid_pair(w, [&](double t) { return f.eval(t); });
  CHECK(std::abs(f.pair(w) - ref) < 1e-8);
}

TEST_CASE("kernel bump for cos theta") {
  TrigPoly c(1);
  c[1] = c[-1] = 0.5;
  BoundaryDensity w;
  w.w = c;
  auto gamma = group::bolza_generators()[0];
  const double repel = 1.0, attract = 2.2;
  auto kb = kernel_bump(w, repel, attract, gamma);
  REQUIRE(kb.ok);
  CHECK(std::abs(kb.pairing) < kTolPair);
  CHECK(kb.phi.eval(attract) > 0.0);
  for (int i = 0; i < 2000; ++i) {
    double t = 2.0 * kPi * i / 2000;
    CHECK(kb.phi.eval(t) >= 0.0);
    if (lorentz::angular_distance(t, repel) < 0.5 * kb.eps) CHECK(kb.phi.eval(t) == 0.0);
  }
  CHECK(std::abs(trapezoid_pair(c, [&](double t) { return kb.phi.eval(t); })) < 1e-6);
}

TEST_CASE("fixed points of a generator") {
  auto g = group::bolza_generators()[2];
  auto [a, r] = fixed_points(g);
  for (double t : {a, r}) {
    auto img = lorentz::isometry_boundary_action(g, lorentz::BoundaryPoint::from_angle(t));
    CHECK(lorentz::angular_distance(img.L.angle(), t) < 1e-10);
  }
  // Attracting: the derivative 1/N is below 1.
  CHECK(lorentz::isometry_boundary_action(g, lorentz::BoundaryPoint::from_angle(a)).N > 1.0);
}

TEST_CASE("product pairing") {
  auto one = density({1.0});
  BumpTriple t{BumpFunction{0.3, 0.1, 0.2, 1.0}, {}, BumpFunction{0.0, 0.5, 1.0, 1.0}};
  t.phi_plus.terms.push_back({BumpFunction{2.0, 0.05, 0.25, 1.0}, 1.0, std::nullopt});
  // For w = 1 every factor is a bump integral r_in + r_out.
  CHECK(std::abs(pair_product(one, one, {t}) - 0.5 * 0.3 * 0.3 * 1.5) < 1e-12);

  auto w1 = density({cplx(0.2, 0.1), 1.0, cplx(0.2, -0.1)});
  auto w2 = density({cplx(0.0, 0.4), 0.5, cplx(0.0, 0.4)});
  auto w3 = density({0.3, cplx(-1.0, 0.5), 0.3});
  BumpTriple u{BumpFunction{4.0, 0.2, 0.4, 1.0}, {}, BumpFunction{1.0, 0.1, 0.3, 2.0}};
  u.phi_plus.terms.push_back({BumpFunction{1.0, 0.1, 0.2, 1.0}, 2.0, group::bolza_generators()[3]});
  std::vector<BumpTriple> chi{t, u};
  cplx a(0.7, -1.2), b(-0.4, 0.3);
  BoundaryDensity mix;
  mix.w = TrigPoly(1);
  for (int k = -1; k <= 1; ++k) mix.w[k] = a * w1.w[k] + b * w3.w[k];
  cplx lhs = pair_product(mix, w2, chi);
  cplx rhs = a * pair_product(w1, w2, chi) + b * pair_product(w3, w2, chi);
  CHECK(std::abs(lhs - rhs) < 1e-10);
  // Sum over triples.
  CHECK(std::abs(pair_product(w1, w2, chi) - pair_product(w1, w2, {t}) - pair_product(w1, w2, {u})) < 1e-12);
  // Antilinear in the second slot.
  BoundaryDensity iw2;
  iw2.w = TrigPoly(1);
  for (int k = -1; k <= 1; ++k) iw2.w[k] = cplx(0.0, 1.0) * w2.w[k];
  CHECK(std::abs(pair_product(w1, iw2, chi) + cplx(0.0, 1.0) * pair_product(w1, w2, chi)) < 1e-12);
  // A vanishing plus factor kills the triple.
  BumpTriple z = t;
  z.phi_plus.terms[0].coeff = 0.0;
  CHECK(pair_product(w1, w2, {z}) == cplx(0.0));
  BoundaryDensity bad = w1;
  bad.lambda = 0.0;
  CHECK_THROWS(pair_product(bad, w2, chi));
}

TEST_CASE("consequence needs a passed verification") {
  TimeChangeReport r;
  r.passed = false;
  CHECK(!timechange_consequence(r, 2).emitted);
  r.passed = true;
  auto c2 = timechange_consequence(r, 2), c3 = timechange_consequence(r, 3);
  CHECK(c2.emitted);
  CHECK(c2.m1_lower_bound == 5);
  CHECK(c2.vanishing_order_lower_bound == 3);
  CHECK(c3.m1_lower_bound == 7);
  CHECK(c3.vanishing_order_lower_bound == 5);
}
