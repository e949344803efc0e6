#include <doctest.h>

#include <cmath>
#include <random>

#include "anosov/frame.hpp"
#include "anosov/lorentz.hpp"

using namespace anosov::lorentz;

namespace {
double max_abs(const Vec3& v) { return v.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("geodesic flow at the base point") {
  UnitTangent p = UnitTangent::base();
  auto q0 = geodesic_flow(p, 0.0);
  CHECK(max_abs(q0.x - p.x) == 0.0);
  auto q = geodesic_flow(p, 1.0);
  CHECK(q.x[0] == doctest::Approx(1.5430806348).epsilon(1e-10));
  CHECK(q.x[1] == doctest::Approx(1.1752011936).epsilon(1e-10));
  CHECK(q.xi[0] == doctest::Approx(1.1752011936).epsilon(1e-10));
  CHECK(q.xi[1] == doctest::Approx(1.5430806348).epsilon(1e-10));
  CHECK(std::abs(q.x[2]) < 1e-15);
}

TEST_CASE("flow group law and invariants on random tangents") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> T(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    UnitTangent p = random_tangent(rng);
    CHECK(p.valid());
    double a = T(rng), b = T(rng);
    auto lhs = geodesic_flow(geodesic_flow(p, a), b), rhs = geodesic_flow(p, a + b);
    double scale = std::max(1.0, max_abs(rhs.x));
    CHECK(max_abs(lhs.x - rhs.x) / scale < 1e-9);
    CHECK(max_abs(lhs.xi - rhs.xi) / scale < 1e-9);
    CHECK(lhs.valid(1e-8));
  }
}

TEST_CASE("boundary maps at the base point") {
  auto b = boundary_maps(UnitTangent::base());
  CHECK(b.b_plus.c == doctest::Approx(1.0));
  CHECK(b.b_minus.c == doctest::Approx(-1.0));
  CHECK(b.phi_plus == 1.0);
  CHECK(b.phi_minus == 1.0);
  CHECK(b.phi_plus * b.phi_minus * (1.0 - (b.b_plus.c * b.b_minus.c + b.b_plus.s * b.b_minus.s)) == 2.0);
}

TEST_CASE("boundary action of the identity and of a boost") {
  auto id = isometry_boundary_action(Isometry::identity(), BoundaryPoint::from_angle(0.3));
  CHECK(id.L.angle() == doctest::Approx(0.3));
  CHECK(id.N == 1.0);
  // The flow matrix at time t is a boost toward (1, 0).
  Isometry g(geodesic_flow(UnitTangent::base(), 0.8).frame());
  auto r = isometry_boundary_action(g, BoundaryPoint(1.0, 0.0));
  CHECK(angular_distance(r.L, BoundaryPoint(1.0, 0.0)) < 1e-12);
  CHECK(r.N == doctest::Approx(std::exp(0.8)).epsilon(1e-12));
}

TEST_CASE("Jacobian law |dL| = 1/N with step 1e-6") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> A(0.0, 6.283185307179586);
  for (int i = 0; i < 500; ++i) {
    Isometry g = random_isometry(rng, 2.5);
    double th = A(rng), h = 1e-6;
    auto L = [&](double x) { return isometry_boundary_action(g, BoundaryPoint::from_angle(x)).L.angle(); };
    double fd = std::remainder(L(th + h) - L(th - h), 2.0 * kPi) / (2.0 * h);
    double N = isometry_boundary_action(g, BoundaryPoint::from_angle(th)).N;
    CHECK(std::abs(fd * N - 1.0) < 1e-5);
  }
}

TEST_CASE("flow coordinates") {
  auto c = to_flow_coordinates(UnitTangent::base());
  CHECK(c.nu_minus.c == doctest::Approx(-1.0));
  CHECK(c.nu_plus.c == doctest::Approx(1.0));
  CHECK(std::abs(c.s) < 1e-15);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> T(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    UnitTangent p = random_tangent(rng);
    double t = T(rng);
    auto a = to_flow_coordinates(p), b = to_flow_coordinates(geodesic_flow(p, t));
    CHECK(std::abs(b.s - a.s - t) < 1e-9);
    auto back = from_flow_coordinates(a);
    double scale = std::max(1.0, max_abs(p.x));
    CHECK(max_abs(back.x - p.x) / scale < 1e-9);
    CHECK(max_abs(back.xi - p.xi) / scale < 1e-9);
  }
}

TEST_CASE("Liouville Jacobian by differentiating the chart") {
  // Volume distortion of (nu-, nu+, s) -> p against the Haar measure dx dxi,
  // measured in the frame p * exp(a X + b H + c V).
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    UnitTangent p = random_tangent(rng, 1.5);
    auto c0 = to_flow_coordinates(p);
    Mat3 g = p.frame();
    const double h = 1e-5;
    Eigen::Matrix3d J;
    for (int k = 0; k < 3; ++k) {
      auto gk = static_cast<anosov::frame::Generator>(k);
      Mat3 up = g * anosov::frame::exp_generator(gk, h), dn = g * anosov::frame::exp_generator(gk, -h);
      auto cu = to_flow_coordinates(UnitTangent::from_frame(up)), cd = to_flow_coordinates(UnitTangent::from_frame(dn));
      J(0, k) = std::remainder(cu.nu_minus.angle() - cd.nu_minus.angle(), 2 * kPi) / (2 * h);
      J(1, k) = std::remainder(cu.nu_plus.angle() - cd.nu_plus.angle(), 2 * kPi) / (2 * h);
      J(2, k) = (cu.s - cd.s) / (2 * h);
    }
    // d nu- d nu+ ds = |det J| dx dxi, so dx dxi = liouville * d nu- d nu+ ds.
    double expected = liouville_density(c0.nu_minus, c0.nu_plus);
    CHECK(std::abs(1.0 / std::abs(J.determinant()) / expected - 1.0) < 1e-5);
  }
}

TEST_CASE("disc embedding") {
  auto z = disc_embedding(Vec3(1, 0, 0));
  CHECK(z.norm() == 0.0);
  auto w = disc_embedding(Vec3(std::cosh(1.0), std::sinh(1.0), 0));
  CHECK(w[0] == doctest::Approx(0.4621171573).epsilon(1e-10));
  double prev = -1.0;
  UnitTangent p = UnitTangent::base();
  for (double t = 0.0; t < 8.0; t += 0.25) {
    double r = disc_embedding(geodesic_flow(p, t).x).norm();
    CHECK(r > prev);
    prev = r;
  }
  std::mt19937_64 rng(15);
  for (int i = 0; i < 200; ++i) {
    Vec3 x = random_tangent(rng).x;
    CHECK(max_abs(from_disc(disc_embedding(x)) - x) / x[0] < 1e-10);
  }
}

TEST_CASE("isometries validate and compose") {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 200; ++i) {
    Isometry a = random_isometry(rng), b = random_isometry(rng);
    CHECK((a * b).valid(1e-8));
    CHECK(max_abs((a * a.inverse()).m.diagonal() - Vec3(1, 1, 1)) < 1e-9);
    CHECK(std::abs(a.m.determinant() - 1.0) < 1e-8);
  }
  CHECK_THROWS(UnitTangent{Vec3(1, 0, 0), Vec3(1, 0, 0)}.validate());
}

TEST_CASE("translation length of a boost") {
  CHECK(boost(0.4, 1.7).translation_length() == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(rotation(0.9).translation_length() == 0.0);
}
