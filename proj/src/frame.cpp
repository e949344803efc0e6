#include "anosov/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace anosov::frame {

using lorentz::Mat3;

std::string name(Generator g) {
  switch (g) {
    case Generator::X: return "X";
    case Generator::H: return "H";
    case Generator::V: return "V";
    case Generator::UPlus: return "U_plus";
    case Generator::UMinus: return "U_minus";
  }
  return "?";
}

namespace {

IMat3 unit(int i, int j) {
  IMat3 m{};
  m[i][j] = 1;
  return m;
}

IMat3 add(const IMat3& a, const IMat3& b, long long sb = 1) {
  IMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] + sb * b[i][j];
  return r;
}

}  // namespace

FrameGenerator generator(Generator g) {
  const IMat3 X = add(unit(0, 1), unit(1, 0));
  const IMat3 H = add(unit(0, 2), unit(2, 0));
  const IMat3 V = add(unit(2, 1), unit(1, 2), -1);
  switch (g) {
    case Generator::X: return {g, X};
    case Generator::H: return {g, H};
    case Generator::V: return {g, V};
    case Generator::UPlus: return {g, add(H, V, -1)};
    case Generator::UMinus: return {g, add(H, V)};
  }
  throw std::invalid_argument("unknown generator");
}

IMat3 multiply(const IMat3& a, const IMat3& b) {
  IMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

IMat3 commutator(const IMat3& a, const IMat3& b) { return add(multiply(a, b), multiply(b, a), -1); }

bool is_zero(const IMat3& a) {
  for (const auto& row : a)
    for (long long v : row)
      if (v != 0) return false;
  return true;
}

bool in_so12(const IMat3& m) {
  const long long J[3] = {1, -1, -1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m[j][i] * J[j] + J[i] * m[i][j] != 0) return false;
  return true;
}

BracketTable bracket_table() {
  const Generator basis[3] = {Generator::X, Generator::H, Generator::V};
  IMat3 e[3];
  for (int i = 0; i < 3; ++i) e[i] = generator(basis[i]).mat;
  BracketTable t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      IMat3 c = commutator(e[i], e[j]);
      // Coordinates read off the independent entries (0,1), (0,2), (2,1).
      std::array<long long, 3> k{c[0][1], c[0][2], c[2][1]};
      IMat3 rebuilt{};
      for (int n = 0; n < 3; ++n) rebuilt = add(rebuilt, e[n], k[n]);
      if (rebuilt != c) throw std::logic_error("bracket leaves span{X,H,V}");
      t.c[i][j] = k;
    }
  // [H,V] = X, [V,X] = H, [X,H] = -V.
  const std::array<long long, 3> HV{1, 0, 0}, VX{0, 1, 0}, XH{0, 0, -1};
  if (t.c[1][2] != HV || t.c[2][0] != VX || t.c[0][1] != XH)
    throw std::logic_error("generator matrices violate the curvature -1 structure relations");
  return t;
}

NilpotencyReport horocycle_nilpotency_check() {
  NilpotencyReport r;
  IMat3 up = generator(Generator::UPlus).mat, um = generator(Generator::UMinus).mat;
  r.cube_zero_plus = is_zero(multiply(multiply(up, up), up));
  r.cube_zero_minus = is_zero(multiply(multiply(um, um), um));
  // The exponential series sum t^n U^n / n! is exact when every term of
  // order >= 3 is the zero matrix; checked with integer numerators.
  bool quad = true;
  for (const IMat3& u : {up, um})
    for (long long t : {1LL, 2LL, 3LL}) {
      IMat3 pw = unit(0, 0);
      pw = add(add(pw, unit(1, 1)), unit(2, 2));
      long long tn = 1;
      for (int n = 1; n <= 6; ++n) {
        pw = multiply(pw, u);
        tn *= t;
        if (n >= 3) {
          IMat3 term{};
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) term[i][j] = tn * pw[i][j];
          if (!is_zero(term)) quad = false;
        }
      }
    }
  r.exp_quadratic = quad;
  return r;
}

Mat3 exp_generator(Generator g, double t) {
  Mat3 m = Mat3::Identity();
  double ch = std::cosh(t), sh = std::sinh(t);
  switch (g) {
    case Generator::X:
      m(0, 0) = m(1, 1) = ch;
      m(0, 1) = m(1, 0) = sh;
      return m;
    case Generator::H:
      m(0, 0) = m(2, 2) = ch;
      m(0, 2) = m(2, 0) = sh;
      return m;
    case Generator::V: {
      double c = std::cos(t), s = std::sin(t);
      m(1, 1) = m(2, 2) = c;
      m(1, 2) = -s;
      m(2, 1) = s;
      return m;
    }
    case Generator::UPlus:
    case Generator::UMinus: {
      IMat3 u = generator(g).mat, u2 = multiply(u, u);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) += t * static_cast<double>(u[i][j]) + 0.5 * t * t * static_cast<double>(u2[i][j]);
      return m;
    }
  }
  throw std::invalid_argument("unknown generator");
}

lorentz::UnitTangent time_reversal(const lorentz::UnitTangent& p) { return {p.x, -p.xi}; }

CoframeValue time_reversal_pullback(const CoframeValue& u) { return {-u.a, -u.b, u.p}; }

namespace {

std::complex<double> first_band_value(const TrigPoly& w, std::complex<double> lambda, const Mat3& g) {
  lorentz::UnitTangent p = lorentz::UnitTangent::from_frame(g);
  lorentz::BoundaryMaps b = lorentz::boundary_maps(p);
  std::complex<double> wv = w.eval(b.b_minus.angle());
  std::complex<double> v = std::exp(lambda * std::log(b.phi_minus)) * wv;
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::overflow_error("first-band value overflow");
  return v;
}

}  // namespace

TransportResidual first_band_transport_residual(const TrigPoly& w, std::complex<double> lambda,
                                                const lorentz::UnitTangent& p, double step) {
  p.validate();
  Mat3 g = p.frame();
  auto v = [&](const Mat3& h) { return first_band_value(w, lambda, h); };
  std::complex<double> v0 = v(g);
  std::complex<double> dx = (v(g * exp_generator(Generator::X, step)) - v(g * exp_generator(Generator::X, -step))) / (2.0 * step);
  std::complex<double> du = (v(g * exp_generator(Generator::UMinus, step)) - v(g * exp_generator(Generator::UMinus, -step))) / (2.0 * step);
  return {std::abs(dx + lambda * v0), std::abs(du)};
}

}  // namespace anosov::frame
