#pragma once
// Boundary laboratory: approximate equivariant densities on the circle at
// infinity, plateau bumps, the product pairing at weight -1, the zero-pairing
// kernel bump and a time change whose pairings with the first-band states vanish.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anosov/group.hpp"
#include "anosov/lorentz.hpp"
#include "anosov/simd.hpp"
#include "anosov/trig.hpp"

namespace anosov::boundary {

using lorentz::FlowCoordinates;
using lorentz::Isometry;
using lorentz::UnitTangent;

inline constexpr double kTolPair = 1e-8;

struct BoundaryDensity {
  cplx lambda{-1.0, 0.0};
  TrigPoly w;
  double residual = 0.0;

  int K() const { return w.K(); }
  cplx eval(double theta) const { return w.eval(theta); }
  cplx integral() const;  // over the circle with d theta
  bool is_real(double tol = 1e-12) const { return w.is_real(tol); }
};

struct Bd0Options {
  int K = 32;
  int count = 4;
  int moments = 2;     // fiber moments -moments..moments in the collocation equations
  bool realify = true;  // real densities when lambda is real
  int jobs = 0;
};

// The collocation system: D w = 0 expresses equivariance, S w normalizes.
struct Bd0System {
  Eigen::MatrixXcd D, S;
  int K = 0;
  int nodes = 0;
  // ||D w|| / ||S w||.
  double residual(const TrigPoly& w) const;
};

Bd0System bd0_system(const std::vector<Isometry>& generators, cplx lambda, int K, int moments = 2, int jobs = 0);

struct Bd0Result {
  std::vector<BoundaryDensity> densities;
  std::vector<double> singular_values;  // ascending
  int rank = 0;                         // kept directions after normalization
  int nodes = 0;
  std::vector<std::string> warnings;

  // singular_values[count] / singular_values[count - 1].
  double gap(std::size_t count) const;
};

Bd0Result bd0_approximate(const std::vector<Isometry>& generators, cplx lambda, const Bd0Options& opt = {});

struct BumpFunction {
  double center = 0.0;
  double r_in = 0.1, r_out = 0.2;
  double amplitude = 1.0;

  // On the circle, by angular distance to the center.
  double eval(double theta) const;
  // On the real line, by |t - center|.
  double eval_line(double t) const;
  double line_integral() const { return amplitude * (r_in + r_out); }
};

// constant + sum_i coeff_i * bump_i(L_{pull_i} theta).
struct CircleFunction {
  struct Term {
    BumpFunction bump;
    double coeff = 1.0;
    std::optional<Isometry> pull;
  };
  double constant = 0.0;
  std::vector<Term> terms;

  double eval(double theta) const;
  // Integral of w * this over the circle, Gauss-Legendre on each bump.
  cplx pair(const TrigPoly& w, int nodes = 48) const;
};

struct KernelBump {
  CircleFunction phi;
  double eps = 0.0;
  int n = 0;  // power of gamma used; 0 when phi_eps already pairs to zero, -1 for the plain-bump fallback
  double s = 0.0;
  cplx pairing;
  bool ok = false;
  std::string diagnostics;
};

// Nonnegative phi with phi(nu_plus) > 0, phi = 0 on B_{eps/2}(nu_minus) and
// <w, phi> = 0. eps <= 0 picks the largest admissible value up to 1.
KernelBump kernel_bump(const BoundaryDensity& w, double nu_minus, double nu_plus, const Isometry& gamma,
                       double eps = 0.0);

// Fixed points (angles) of a hyperbolic isometry: {attracting, repelling}.
std::pair<double, double> fixed_points(const Isometry& g);

struct BumpTriple {
  BumpFunction phi_minus;
  CircleFunction phi_plus;
  BumpFunction psi;
  double eval(double nu_minus, double nu_plus, double s) const;
};

// (1/2) sum_i <w1, phi_minus_i> <conj w2, phi_plus_i> * integral psi_i.
cplx pair_product(const BoundaryDensity& w1, const BoundaryDensity& w2, const std::vector<BumpTriple>& chi);

struct TimeChangeOptions {
  std::size_t pool = 6000;     // candidate points for the greedy covering
  double delta = 0.5;          // target lower bound of f on the pool
  std::size_t verify = 10000;  // fresh points for the positivity check
  std::size_t max_triples = 4000;
  std::uint64_t seed = 1;
  int jobs = 0;
  double radius = 0.0;  // orbit-sum radius; 0 uses the certified value
};

struct TimeChange {
  std::vector<BumpTriple> triples;
  group::Ball ball;
  simd::Mat3Batch mats;
  double radius = 0.0;  // displacement radius of the orbit sum
  double max_x0 = 0.0;  // cosh of the largest distance of a support point from o

  // Orbit sum over the stored ball.
  double eval(const UnitTangent& p) const;
};

struct TimeChangeReport {
  double min_f = 0.0;
  std::size_t samples = 0;
  std::size_t triples = 0;
  std::vector<cplx> pairings;  // with every basis density as w1
  double max_pairing = 0.0;
  double max_phi_plus_pairing = 0.0;
  double radius = 0.0;
  std::size_t group_elements = 0;
  bool ball_complete = false;
  bool positive = false, pairings_ok = false, passed = false;
  std::vector<std::string> diagnostics;
  std::string text() const;
};

// Uniform samples of unit tangents over the Dirichlet domain of the group.
std::vector<UnitTangent> sample_fundamental_domain(const group::DirichletPolygon& poly, std::size_t n,
                                                   std::uint64_t seed);

// Builds f from bumps over a greedy covering; w2 = basis[index].
TimeChange build_time_change(const std::vector<Isometry>& generators, const Bd0Result& basis, std::size_t index,
                             const TimeChangeOptions& opt, TimeChangeReport* report);

// Orbit sum with a separately supplied ball, used for invariance checks.
double orbit_sum(const TimeChange& f, const simd::Mat3Batch& mats, const UnitTangent& p);

struct Consequence {
  bool emitted = false;
  int m1_lower_bound = 0;              // b1 + 1
  int vanishing_order_lower_bound = 0;  // -chi + 1
  std::string text;
};

Consequence timechange_consequence(const TimeChangeReport& r, int genus);

}  // namespace anosov::boundary
