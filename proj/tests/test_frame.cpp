#include <doctest.h>

#include <random>

#include "anosov/frame.hpp"

using namespace anosov;
using namespace anosov::frame;

namespace {
// Coordinates of an so(1,2) matrix on (X, H, V), read off the off-diagonal entries.
std::array<long long, 3> coords(const IMat3& m) { return {m[0][1], m[0][2], m[2][1]}; }
IMat3 lin(long long a, const IMat3& x, long long b, const IMat3& y) {
  IMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a * x[i][j] + b * y[i][j];
  return r;
}
}  // namespace

TEST_CASE("structure relations in integer arithmetic") {
  auto X = generator(Generator::X).mat, H = generator(Generator::H).mat, V = generator(Generator::V).mat;
  for (const auto& m : {X, H, V}) CHECK(in_so12(m));
  CHECK(commutator(H, V) == X);
  CHECK(commutator(V, X) == H);
  CHECK(commutator(X, H) == lin(-1, V, 0, V));
  CHECK(is_zero(commutator(X, X)));
  auto t = bracket_table();
  CHECK(t.c[1][2] == std::array<long long, 3>{1, 0, 0});
  CHECK(t.c[2][0] == std::array<long long, 3>{0, 1, 0});
  CHECK(t.c[0][1] == std::array<long long, 3>{0, 0, -1});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(t.c[i][j][k] == -t.c[j][i][k]);
}

TEST_CASE("[U-, U+] = -2X from bilinearity of the table") {
  // U+ = H - V, U- = H + V: [H+V, H-V] = -[H,V] + [V,H] = -2[H,V].
  auto t = bracket_table();
  std::array<long long, 3> expect{};
  for (int k = 0; k < 3; ++k) expect[k] = -t.c[1][2][k] + t.c[2][1][k];
  auto up = generator(Generator::UPlus).mat, um = generator(Generator::UMinus).mat;
  CHECK(coords(commutator(um, up)) == expect);
  CHECK(expect == std::array<long long, 3>{-2, 0, 0});
}

TEST_CASE("horocycle generators are nilpotent") {
  auto um = generator(Generator::UMinus).mat;
  CHECK(is_zero(multiply(multiply(um, um), um)));
  CHECK(horocycle_nilpotency_check().ok());
  CHECK((exp_generator(Generator::UPlus, 0.0) - lorentz::Mat3::Identity()).norm() == 0.0);
  // exp(tU) against a long Taylor series.
  for (auto g : {Generator::UPlus, Generator::UMinus, Generator::X, Generator::V})
    for (double t : {-1.3, 0.4, 2.0}) {
      auto u = generator(g).mat;
      lorentz::Mat3 A;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = static_cast<double>(u[i][j]) * t;
      lorentz::Mat3 term = lorentz::Mat3::Identity(), sum = term;
      for (int n = 1; n < 40; ++n) {
        term = term * A / n;
        sum += term;
      }
      CHECK((sum - exp_generator(g, t)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("time reversal") {
  auto r = time_reversal(lorentz::UnitTangent::base());
  CHECK(r.xi == lorentz::Vec3(0, -1, 0));
  auto c = time_reversal_pullback({1, 2, 3});
  CHECK(c.a == -1);
  CHECK(c.b == -2);
  CHECK(c.p == 3);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> T(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    auto p = lorentz::random_tangent(rng, 2.0);
    double t = T(rng);
    auto a = time_reversal(lorentz::geodesic_flow(p, t)), b = lorentz::geodesic_flow(time_reversal(p), -t);
    CHECK((a.x - b.x).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((a.xi - b.xi).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("first-band transport residuals") {
  std::mt19937_64 rng(22);
  TrigPoly one(0);
  one[0] = 1.0;
  TrigPoly cosine(1);
  cosine[1] = cosine[-1] = 0.5;
  for (int i = 0; i < 50; ++i) {
    auto p = lorentz::random_tangent(rng, 1.5);
    auto r0 = first_band_transport_residual(one, 0.0, p);
    CHECK(r0.r_x < 1e-9);
    CHECK(r0.r_u < 1e-9);
    auto r1 = first_band_transport_residual(one, -1.0, p);
    CHECK(r1.r_x < 1e-8);
    CHECK(r1.r_u < 1e-8);
    auto r2 = first_band_transport_residual(cosine, -1.0, p);
    CHECK(r2.r_x < 1e-7);
    CHECK(r2.r_u < 1e-7);
  }
}
