#pragma once
// Hyperboloid model of the hyperbolic plane: points, unit tangents, isometries,
// boundary maps and the (nu_minus, nu_plus, s) chart of the unit tangent bundle.

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <stdexcept>

#include "anosov/exact.hpp"

namespace anosov::lorentz {

inline constexpr double kTauGeo = 1e-10;
inline constexpr double kPi = 3.14159265358979323846;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec2 = Eigen::Vector2d;
using MinkowskiVector = Vec3;

struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline double minkowski(const Vec3& x, const Vec3& y) {
  return x[0] * y[0] - x[1] * y[1] - x[2] * y[2];
}

inline Mat3 minkowski_matrix() { return Vec3(1.0, -1.0, -1.0).asDiagonal(); }

// Hyperbolic distance between two hyperboloid points.
double distance(const Vec3& x, const Vec3& y);

bool on_hyperboloid(const Vec3& x, double tol = kTauGeo);

struct UnitTangent {
  Vec3 x{1.0, 0.0, 0.0};
  Vec3 xi{0.0, 1.0, 0.0};

  static UnitTangent base() { return {}; }
  bool valid(double tol = kTauGeo) const;
  // Throws GeometryError when the invariants fail.
  void validate(double tol = kTauGeo) const;
  // Third frame vector eta so that [x | xi | eta] lies in SO(1,2).
  Vec3 eta() const;
  // The group element carrying the base tangent to this one.
  Mat3 frame() const;
  static UnitTangent from_frame(const Mat3& g) { return {g.col(0), g.col(1)}; }
};

struct BoundaryPoint {
  double c = 1.0, s = 0.0;  // unit vector (cos, sin)

  BoundaryPoint() = default;
  BoundaryPoint(double cx, double sy);  // normalizes
  static BoundaryPoint from_angle(double theta);
  double angle() const;  // in [0, 2 pi)
  Vec2 vec() const { return {c, s}; }
};

// Unsigned arc distance on the circle.
double angular_distance(double a, double b);
double angular_distance(const BoundaryPoint& a, const BoundaryPoint& b);

struct Isometry {
  Mat3 m = Mat3::Identity();
  std::optional<exact::Mat3Z2t> exact;

  Isometry() = default;
  explicit Isometry(const Mat3& mm) : m(mm) {}
  explicit Isometry(const exact::Mat3Z2t& e);

  static Isometry identity() { return {}; }
  Isometry inverse() const;
  friend Isometry operator*(const Isometry& a, const Isometry& b);
  bool valid(double tol = kTauGeo) const;
  void validate(double tol = kTauGeo) const;
  // Exact check of m^T J m = J; false when no exact data is attached.
  bool exact_lorentzian() const { return exact && exact::is_lorentzian(*exact); }
  double trace() const { return m.trace(); }
  // Translation length for hyperbolic elements, 0 otherwise.
  double translation_length() const;
};

UnitTangent apply(const Isometry& g, const UnitTangent& p);
Vec3 apply(const Isometry& g, const Vec3& x);

// Boost of hyperbolic distance d in the direction at angle phi.
Isometry boost(double phi, double d);
Isometry rotation(double angle);

struct FlowCoordinates {
  BoundaryPoint nu_minus, nu_plus;
  double s = 0.0;
};

struct BoundaryMaps {
  BoundaryPoint b_minus, b_plus;
  double phi_minus = 1.0, phi_plus = 1.0;
};

struct BoundaryImage {
  BoundaryPoint L;
  double N = 1.0;
};

UnitTangent geodesic_flow(const UnitTangent& p, double t);
BoundaryMaps boundary_maps(const UnitTangent& p);
BoundaryImage isometry_boundary_action(const Isometry& g, const BoundaryPoint& nu);
FlowCoordinates to_flow_coordinates(const UnitTangent& p);
UnitTangent from_flow_coordinates(const FlowCoordinates& c);

// Volume density of the Liouville measure in flow coordinates.
double liouville_density(const BoundaryPoint& nu_minus, const BoundaryPoint& nu_plus);

Vec2 disc_embedding(const Vec3& x);
Vec3 from_disc(const Vec2& z);
// Pushforward of a tangent vector at x into the disc model.
Vec2 disc_pushforward(const Vec3& x, const Vec3& v);

// Pure boost carrying (1,0,0) to x.
Mat3 section(const Vec3& x);

// Random isometry: rotation, then boost of parameter uniform in [0, max_boost]
// along a uniform direction.
Isometry random_isometry(std::mt19937_64& rng, double max_boost = 3.0);
UnitTangent random_tangent(std::mt19937_64& rng, double max_boost = 3.0);

}  // namespace anosov::lorentz
