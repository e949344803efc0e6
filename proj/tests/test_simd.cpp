#include <doctest.h>

#include <random>

#include "anosov/lorentz.hpp"
#include "anosov/simd.hpp"
#include "anosov/trig.hpp"

using namespace anosov;
using namespace anosov::simd;

namespace {
std::vector<Isa> isas() {
  std::vector<Isa> v{Isa::Scalar};
  if (avx2_supported()) v.push_back(Isa::Avx2);
  return v;
}
}  // namespace

TEST_CASE("active ISA can be forced") {
  set_active(Isa::Scalar);
  CHECK(active() == Isa::Scalar);
  set_active(Isa::Avx2);
  CHECK(active() == (avx2_supported() ? Isa::Avx2 : Isa::Scalar));
  reset_active();
  CHECK(std::string(name(Isa::Scalar)) == "scalar");
}

TEST_CASE("apply_batch") {
  std::mt19937_64 rng(5);
  Mat3Batch b;
  std::vector<lorentz::Mat3> ms;
  for (int i = 0; i < 37; ++i) {
    auto g = lorentz::random_isometry(rng, 4.0).m;
    double row[9];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) row[3 * r + c] = g(r, c);
    b.push_back(row);
    ms.push_back(g);
  }
  const double v[3] = {1.3, -0.2, 0.7};
  lorentz::Vec3 vv(v[0], v[1], v[2]);
  for (Isa isa : isas()) {
    std::vector<double> o0(37), o1(37), o2(37);
    apply_batch(b, v, o0.data(), o1.data(), o2.data(), isa);
    for (int k = 0; k < 37; ++k) {
      lorentz::Vec3 ref = ms[k] * vv;
      double scale = ref.cwiseAbs().maxCoeff();
      CHECK(std::abs(o0[k] - ref[0]) <= 1e-14 * scale);
      CHECK(std::abs(o1[k] - ref[1]) <= 1e-14 * scale);
      CHECK(std::abs(o2[k] - ref[2]) <= 1e-14 * scale);
    }
  }
}

TEST_CASE("boundary_maps_batch") {
  std::mt19937_64 rng(6);
  const std::size_t n = 29;
  std::vector<double> x0(n), x1(n), x2(n), y0(n), y1(n), y2(n);
  std::vector<lorentz::UnitTangent> ps;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = lorentz::random_tangent(rng, 3.0);
    ps.push_back(p);
    x0[i] = p.x[0], x1[i] = p.x[1], x2[i] = p.x[2];
    y0[i] = p.xi[0], y1[i] = p.xi[1], y2[i] = p.xi[2];
  }
  for (Isa isa : isas()) {
    BoundaryBatch out;
    boundary_maps_batch(x0.data(), x1.data(), x2.data(), y0.data(), y1.data(), y2.data(), n, out, isa);
    for (std::size_t i = 0; i < n; ++i) {
      auto ref = lorentz::boundary_maps(ps[i]);
      CHECK(out.phi_plus[i] == doctest::Approx(ref.phi_plus).epsilon(1e-13));
      CHECK(out.phi_minus[i] == doctest::Approx(ref.phi_minus).epsilon(1e-13));
      CHECK(std::abs(out.bp_c[i] - ref.b_plus.c) < 1e-12);
      CHECK(std::abs(out.bp_s[i] - ref.b_plus.s) < 1e-12);
      CHECK(std::abs(out.bm_c[i] - ref.b_minus.c) < 1e-12);
      CHECK(std::abs(out.bm_s[i] - ref.b_minus.s) < 1e-12);
    }
  }
}

TEST_CASE("trig_eval_batch") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N;
  const int K = 9;
  TrigPoly w(K);
  for (int k = -K; k <= K; ++k) w[k] = cplx(N(rng), N(rng));
  const std::size_t n = 41;
  std::vector<double> zc(n), zs(n), th(n);
  for (std::size_t i = 0; i < n; ++i) {
    th[i] = 0.153 * static_cast<double>(i);
    zc[i] = std::cos(th[i]), zs[i] = std::sin(th[i]);
  }
  for (Isa isa : isas()) {
    std::vector<double> re(n), im(n);
    trig_eval_batch(w.c.data(), K, zc.data(), zs.data(), n, re.data(), im.data(), isa);
    for (std::size_t i = 0; i < n; ++i) {
      cplx ref = w.eval(th[i]);
      CHECK(std::abs(cplx(re[i], im[i]) - ref) < 1e-12);
    }
  }
}

TEST_CASE("bump_profile_batch") {
  const std::size_t n = 103;
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = 0.005 * static_cast<double>(i);
  for (Isa isa : isas()) {
    std::vector<double> out(n);
    bump_profile_batch(d.data(), n, 0.1, 0.3, 2.5, out.data(), isa);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(out[i] - 2.5 * bump_profile(d[i], 0.1, 0.3)) < 1e-14);
  }
  CHECK(bump_profile(0.05, 0.1, 0.3) == 1.0);
  CHECK(bump_profile(0.3, 0.1, 0.3) == 0.0);
  CHECK(bump_profile(0.2, 0.1, 0.3) == doctest::Approx(0.5));
}

TEST_CASE("scalar and AVX2 paths agree") {
  if (!avx2_supported()) return;
  std::vector<double> d(64), a(64), b(64);
  for (int i = 0; i < 64; ++i) d[i] = 0.0049 * i;
  bump_profile_batch(d.data(), 64, 0.05, 0.25, 1.0, a.data(), Isa::Scalar);
  bump_profile_batch(d.data(), 64, 0.05, 0.25, 1.0, b.data(), Isa::Avx2);
  for (int i = 0; i < 64; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-14);
}
