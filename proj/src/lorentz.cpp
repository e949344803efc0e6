#include "anosov/lorentz.hpp"

#include <cmath>

namespace anosov::lorentz {

double distance(const Vec3& x, const Vec3& y) {
  double c = minkowski(x, y);
  return c <= 1.0 ? 0.0 : std::acosh(c);
}

bool on_hyperboloid(const Vec3& x, double tol) {
  return x.allFinite() && x[0] > 0.0 && std::abs(minkowski(x, x) - 1.0) <= tol * std::max(1.0, x[0] * x[0]);
}

bool UnitTangent::valid(double tol) const {
  if (!x.allFinite() || !xi.allFinite()) return false;
  double scale = std::max(1.0, x[0] * x[0]);
  return on_hyperboloid(x, tol) && std::abs(minkowski(xi, xi) + 1.0) <= tol * scale &&
         std::abs(minkowski(x, xi)) <= tol * scale;
}

void UnitTangent::validate(double tol) const {
  if (!valid(tol)) throw GeometryError("invalid unit tangent");
}

Vec3 UnitTangent::eta() const {
  Vec3 c = x.cross(xi);
  return Vec3(-c[0], c[1], c[2]);
}

Mat3 UnitTangent::frame() const {
  Mat3 g;
  g.col(0) = x;
  g.col(1) = xi;
  g.col(2) = eta();
  return g;
}

BoundaryPoint::BoundaryPoint(double cx, double sy) {
  double r = std::hypot(cx, sy);
  if (!(r > 0.0) || !std::isfinite(r)) throw GeometryError("boundary point needs a nonzero finite vector");
  c = cx / r;
  s = sy / r;
}

BoundaryPoint BoundaryPoint::from_angle(double theta) {
  BoundaryPoint p;
  p.c = std::cos(theta);
  p.s = std::sin(theta);
  return p;
}

double BoundaryPoint::angle() const {
  double a = std::atan2(s, c);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a = 0.0;
  return a;
}

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return d > kPi ? 2.0 * kPi - d : d;
}

double angular_distance(const BoundaryPoint& a, const BoundaryPoint& b) {
  return std::atan2(std::abs(a.c * b.s - a.s * b.c), a.c * b.c + a.s * b.s);
}

Isometry::Isometry(const exact::Mat3Z2t& e) : exact(e) {
  auto d = e.to_double();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = d[3 * i + j];
}

Isometry Isometry::inverse() const {
  Isometry r;
  Mat3 J = minkowski_matrix();
  r.m = J * m.transpose() * J;
  if (exact) r.exact = exact->lorentz_inverse();
  return r;
}

Isometry operator*(const Isometry& a, const Isometry& b) {
  Isometry r;
  r.m = a.m * b.m;
  if (a.exact && b.exact) r.exact = (*a.exact) * (*b.exact);
  return r;
}

bool Isometry::valid(double tol) const {
  if (!m.allFinite()) return false;
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  scale *= scale;
  Mat3 J = minkowski_matrix();
  if ((m.transpose() * J * m - J).cwiseAbs().maxCoeff() > tol * scale) return false;
  if (std::abs(m.determinant() - 1.0) > tol * scale * scale) return false;
  return m(0, 0) > 0.0;
}

void Isometry::validate(double tol) const {
  if (!valid(tol)) throw GeometryError("matrix is not an orientation preserving Lorentz isometry");
  if (exact) {
    if (!exact::is_lorentzian(*exact)) throw GeometryError("exact matrix does not preserve the Lorentzian form");
    if (exact->det() != exact::Z2t(1)) throw GeometryError("exact matrix has determinant != 1");
  }
}

double Isometry::translation_length() const {
  double t = m.trace();
  return t > 3.0 ? std::acosh((t - 1.0) / 2.0) : 0.0;
}

UnitTangent apply(const Isometry& g, const UnitTangent& p) { return {g.m * p.x, g.m * p.xi}; }
Vec3 apply(const Isometry& g, const Vec3& x) { return g.m * x; }

Isometry rotation(double angle) {
  Isometry r;
  double c = std::cos(angle), s = std::sin(angle);
  r.m << 1, 0, 0, 0, c, -s, 0, s, c;
  return r;
}

Isometry boost(double phi, double d) {
  double c = std::cos(phi), s = std::sin(phi);
  double ch = std::cosh(d), sh = std::sinh(d);
  Isometry b;
  b.m << ch, sh * c, sh * s,
         sh * c, 1 + (ch - 1) * c * c, (ch - 1) * c * s,
         sh * s, (ch - 1) * c * s, 1 + (ch - 1) * s * s;
  return b;
}

UnitTangent geodesic_flow(const UnitTangent& p, double t) {
  if (!std::isfinite(t)) throw GeometryError("geodesic_flow: non-finite time");
  double ch = std::cosh(t), sh = std::sinh(t);
  return {p.x * ch + p.xi * sh, p.x * sh + p.xi * ch};
}

BoundaryMaps boundary_maps(const UnitTangent& p) {
  BoundaryMaps r;
  r.phi_plus = p.x[0] + p.xi[0];
  r.phi_minus = p.x[0] - p.xi[0];
  if (!(r.phi_plus > kTauGeo) || !(r.phi_minus > kTauGeo)) throw GeometryError("invalid tangent: degenerate boundary factor");
  r.b_plus = BoundaryPoint((p.x[1] + p.xi[1]) / r.phi_plus, (p.x[2] + p.xi[2]) / r.phi_plus);
  r.b_minus = BoundaryPoint((p.x[1] - p.xi[1]) / r.phi_minus, (p.x[2] - p.xi[2]) / r.phi_minus);
  return r;
}

BoundaryImage isometry_boundary_action(const Isometry& g, const BoundaryPoint& nu) {
  Vec3 v = g.m * Vec3(1.0, nu.c, nu.s);
  BoundaryImage r;
  r.N = v[0];
  if (!(r.N > 0.0)) throw GeometryError("isometry does not preserve the future light cone");
  r.L = BoundaryPoint(v[1] / r.N, v[2] / r.N);
  return r;
}

FlowCoordinates to_flow_coordinates(const UnitTangent& p) {
  BoundaryMaps b = boundary_maps(p);
  return {b.b_minus, b.b_plus, 0.5 * std::log(b.phi_plus / b.phi_minus)};
}

UnitTangent from_flow_coordinates(const FlowCoordinates& c) {
  double dot = c.nu_minus.c * c.nu_plus.c + c.nu_minus.s * c.nu_plus.s;
  double gap = 1.0 - dot;
  if (!(gap > kTauGeo)) throw GeometryError("from_flow_coordinates: nu_minus == nu_plus");
  double base = std::sqrt(2.0 / gap);
  double pp = std::exp(c.s) * base, pm = std::exp(-c.s) * base;
  Vec3 vp(pp, pp * c.nu_plus.c, pp * c.nu_plus.s);
  Vec3 vm(pm, pm * c.nu_minus.c, pm * c.nu_minus.s);
  return {0.5 * (vp + vm), 0.5 * (vp - vm)};
}

double liouville_density(const BoundaryPoint& nu_minus, const BoundaryPoint& nu_plus) {
  double dx = nu_minus.c - nu_plus.c, dy = nu_minus.s - nu_plus.s;
  return 2.0 / (dx * dx + dy * dy);
}

Vec2 disc_embedding(const Vec3& x) { return Vec2(x[1], x[2]) / (x[0] + 1.0); }

Vec3 from_disc(const Vec2& z) {
  double r2 = z.squaredNorm();
  if (!(r2 < 1.0)) throw GeometryError("from_disc: point outside the open unit disc");
  double k = 1.0 / (1.0 - r2);
  return Vec3((1.0 + r2) * k, 2.0 * z[0] * k, 2.0 * z[1] * k);
}

Vec2 disc_pushforward(const Vec3& x, const Vec3& v) {
  double d = 1.0 + x[0];
  return Vec2(v[1] / d - x[1] * v[0] / (d * d), v[2] / d - x[2] * v[0] / (d * d));
}

Mat3 section(const Vec3& x) {
  Mat3 h;
  double k = 1.0 / (1.0 + x[0]);
  h << x[0], x[1], x[2],
       x[1], 1 + x[1] * x[1] * k, x[1] * x[2] * k,
       x[2], x[1] * x[2] * k, 1 + x[2] * x[2] * k;
  return h;
}

Isometry random_isometry(std::mt19937_64& rng, double max_boost) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi), dist(0.0, max_boost);
  double rot = ang(rng), dir = ang(rng), d = dist(rng);
  return boost(dir, d) * rotation(rot);
}

UnitTangent random_tangent(std::mt19937_64& rng, double max_boost) {
  return apply(random_isometry(rng, max_boost), UnitTangent::base());
}

}  // namespace anosov::lorentz
