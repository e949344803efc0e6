#include <doctest.h>

#include <cmath>

#include "anosov/invariants.hpp"

using namespace anosov;
using namespace anosov::invariants;

TEST_CASE("catmap winding cycle of dt") {
  auto w = winding_cycle_catmap([](double, double, double) { return 1.0; });
  CHECK(w.value == doctest::Approx(1.0).epsilon(1e-12));
  auto z = winding_cycle_catmap([](double x, double, double) { return std::cos(2.0 * lorentz::kPi * x); });
  CHECK(std::abs(z.value) < 1e-12);
}

TEST_CASE("unit tangent volume and polygon") {
  CHECK(unit_tangent_volume(2) == doctest::Approx(8.0 * lorentz::kPi * lorentz::kPi));
  RegularPolygon p(2);
  CHECK(p.sides == 8);
  CHECK(p.area() == doctest::Approx(4.0 * lorentz::kPi));
  auto one = integrate_unit_tangent(2, [](const lorentz::UnitTangent&) { return 1.0; });
  CHECK(one.value == doctest::Approx(unit_tangent_volume(2)).epsilon(1e-6));
  CHECK(std::abs(one.value - unit_tangent_volume(2)) <= one.error);
  auto area = integrate_surface(3, [](const lorentz::Vec3&) { return 1.0; });
  CHECK(area.value == doctest::Approx(8.0 * lorentz::kPi).epsilon(1e-4));
  CHECK(std::abs(area.value - 8.0 * lorentz::kPi) <= area.error);
}

TEST_CASE("helicity of the contact and magnetic flows") {
  FlowDescriptor geo;
  auto h = helicity(geo, {HarmonicSample::monomial(1)});
  CHECK(std::abs(h.value.value) == doctest::Approx(unit_tangent_volume(2)).epsilon(1e-5));
  CHECK(h.primitive_independent);
  FlowDescriptor mag;
  mag.family = Family::Magnetic;
  mag.magnetic_strength = 0.5;
  auto m = helicity(mag, {HarmonicSample::monomial(1)});
  CHECK(std::abs(m.value.value) > 100.0 * m.value.error);
  FlowDescriptor cat;
  cat.family = Family::CatmapSuspension;
  CHECK_THROWS_AS(helicity(cat, {}), NotNullHomologous);
}

TEST_CASE("case table") {
  for (int b0 = 0; b0 <= 2; ++b0)
    for (int b1 = b0; b1 <= 6; ++b1) {
      Betti b{b0, b1};
      auto a = classify_case(true, true, b), c = classify_case(false, true, b), d = classify_case(false, false, b);
      // n is the alternating sum of the dimensions.
      for (const auto& x : {a, c, d}) CHECK(x.n == x.dims[0] - x.dims[1] + x.dims[2]);
      CHECK(a.dims == std::array<int, 3>{b0, b1 - b0, b0});
      CHECK(c.dims == std::array<int, 3>{b0, b1, b0});
      CHECK(d.dims == std::array<int, 3>{b0, b1 + b0, b0});
      // Helicity only matters when [omega] = 0.
      CHECK(classify_case(true, false, b).dims == a.dims);
    }
  CHECK_THROWS(classify_case(true, true, {2, 1}));
  CHECK_THROWS(classify_case(false, true, {-1, 0}));
  auto geo = classify_case(false, true, {1, 4});
  CHECK(geo.n == -2);
  auto sus = classify_case(true, true, {1, 1});
  CHECK(sus.n == 2);
}

TEST_CASE("pullback twist Betti numbers") {
  auto b = pullback_twist_betti(2, 2, 1);
  CHECK(b.b0 == 1);
  CHECK(b.b1 == 6);
  auto t = pullback_twist_betti(1, 3, 1);
  CHECK(t.b1 == 6);
  CHECK_THROWS(pullback_twist_betti(2, 2, 3));
}

TEST_CASE("splitting resonance predictor") {
  double lam = splitting_resonance_predict(1.0, unit_tangent_volume(2), 0.1);
  CHECK(lam == doctest::Approx(-1.2665e-4).epsilon(1e-4));
  CHECK(splitting_resonance_predict(2.0, 3.0, -0.5) == doctest::Approx(-1.0 / 6.0));
  CHECK_THROWS(splitting_resonance_predict(1.0, 0.0, 0.1));
}

TEST_CASE("one-form spectrum") {
  auto pts = assemble_one_form_spectrum({0.0, 2.0, 0.25, 0.1}, 2);
  auto find = [&](cplx s) {
    for (const auto& p : pts)
      if (std::abs(p.s - s) < 1e-12) return p;
    FAIL("point not found");
    return SpectrumPoint{};
  };
  double r = std::sqrt(1.75);
  CHECK(r == doctest::Approx(1.3229).epsilon(1e-4));
  CHECK(find({-0.5, r}).band == "first-band-large");
  CHECK(find({-0.5, -r}).band == "first-band-large");
  CHECK(find({-0.5, 0.0}).multiplicity == 2);
  double q = std::sqrt(0.15);
  CHECK(find({-0.5 + q, 0.0}).band == "first-band-small");
  CHECK(find({0.0, 0.0}).multiplicity == 4);
  for (const auto& p : pts) {
    CHECK(p.s.real() <= 1.0);
    CHECK(p.band != "splitting");
  }
  CHECK_THROWS(assemble_one_form_spectrum({2.0}, 2));
  CHECK_THROWS(assemble_one_form_spectrum({0.0, -1.0}, 2));
}

TEST_CASE("splitting point appears iff eps and W are nonzero") {
  std::vector<double> eigs{0.0, 2.0};
  auto count = [](const std::vector<SpectrumPoint>& v) {
    return std::count_if(v.begin(), v.end(), [](const SpectrumPoint& p) { return p.band == "splitting"; });
  };
  CHECK(count(assemble_with_splitting(eigs, 2, 0.0, 1.0)) == 0);
  CHECK(count(assemble_with_splitting(eigs, 2, 0.1, 0.0)) == 0);
  auto v = assemble_with_splitting(eigs, 2, 0.1, 1.0);
  REQUIRE(count(v) == 1);
  CHECK(v.back().s.real() == doctest::Approx(1.2665e-4).epsilon(1e-4));
  auto csv = spectrum_csv(v);
  CHECK(csv.rfind("s_re,s_im,multiplicity,band,provenance\n", 0) == 0);
}

TEST_CASE("harmonic perturbation winding is positive") {
  HarmonicSample s = HarmonicSample::monomial(1);
  CHECK(harmonicity_residual(s, 2) < 1e-5);
  FlowDescriptor f;
  f.family = Family::HarmonicPerturbation;
  f.eps = 0.05;
  auto w = winding_cycle(f, pullback_form(s));
  auto pred = perturbation_winding_prediction(s, 0.05, 2);
  CHECK(pred.value > 0.0);
  CHECK(w.value == doctest::Approx(pred.value).epsilon(1e-3));
  f.eps = -0.05;
  CHECK(winding_cycle(f, pullback_form(s)).value < 0.0);
}
