#pragma once
// Winding cycles, helicity, the resonance-dimension case table, the splitting
// resonance predictor and the one-form spectrum picture.

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anosov/lorentz.hpp"

namespace anosov::invariants {

using cplx = std::complex<double>;
using lorentz::UnitTangent;
using lorentz::Vec2;

enum class Family { ContactGeodesic, Magnetic, HarmonicPerturbation, CatmapSuspension, User };

std::string family_name(Family f);
Family parse_family(const std::string& s);

// A harmonic 1-form theta = Re(h(z) dz) on the disc model, h a polynomial.
struct HarmonicSample {
  std::vector<cplx> h;  // h(z) = sum_j h[j] z^j

  // theta = d Re(z^k).
  static HarmonicSample monomial(int k);
  cplx h_at(const Vec2& z) const;
  // (theta(p), V theta(p)) = (theta_x(xi), theta_x(eta)).
  std::array<double, 2> eval(const UnitTangent& p) const;
  // Pointwise |theta|^2 dA in disc coordinates reduces to |h|^2 dx dy.
  double energy_density(const Vec2& z) const { return std::norm(h_at(z)); }
  bool empty() const { return h.empty(); }
};

// Frame coefficients at a unit tangent: (X, H, V) for vector fields and
// (alpha, beta, psi) for 1-forms.
using FrameField = std::function<std::array<double, 3>(const UnitTangent&)>;

struct FlowDescriptor {
  Family family = Family::ContactGeodesic;
  int genus = 2;
  std::array<long, 4> matrix{2, 1, 1, 1};
  double magnetic_strength = 0.0;                        // constant lambda when `magnetic` is empty
  std::function<double(const Vec2&)> magnetic;           // lambda on the surface, disc coordinates
  HarmonicSample harmonic = HarmonicSample::monomial(1);  // theta for the perturbation family
  double eps = 0.0;
  FrameField user_field;

  // The generator in frame coordinates (X, H, V).
  std::array<double, 3> field(const UnitTangent& p) const;
  double magnetic_at(const Vec2& z) const { return magnetic ? magnetic(z) : magnetic_strength; }
};

struct QuadOptions {
  int n_phi = 8;     // angular nodes per polygon side
  int n_rho = 12;    // radial nodes
  int n_fiber = 8;   // fiber-angle nodes
  int jobs = 1;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // difference between two nested grids
};

// Regular 4g-gon with interior angles 2 pi / 4g, a fundamental polygon for a
// genus g surface; sides centred at angles 2 pi k / 4g.
struct RegularPolygon {
  int sides = 8;
  double inradius = 0.0;
  double circumradius = 0.0;
  explicit RegularPolygon(int genus);
  double rho_max(double phi) const;
  double area() const;
};

double unit_tangent_volume(int genus);  // 4 pi^2 (2g - 2)

// Integral of f over the unit tangent bundle of the genus-g surface with the
// Liouville volume: Gauss-Legendre on a polar grid per side sector times an
// equispaced fiber-angle rule.
QuadratureResult integrate_unit_tangent(int genus, const std::function<double(const UnitTangent&)>& f,
                                        const QuadOptions& q = {});
// Integral over the surface with the hyperbolic area element.
QuadratureResult integrate_surface(int genus, const std::function<double(const lorentz::Vec3&)>& f,
                                   const QuadOptions& q = {});

// W_Y(theta) for a 1-form given by frame coefficients.
QuadratureResult winding_cycle(const FlowDescriptor& flow, const FrameField& theta, const QuadOptions& q = {});
// Pullback pi^* theta of a harmonic sample: coefficients (theta, V theta, 0).
FrameField pullback_form(const HarmonicSample& s);
// Mapping torus of a cat map, theta = c(x, y, t) dt, unit volume.
QuadratureResult winding_cycle_catmap(const std::function<double(double, double, double)>& dt_coeff,
                                      const QuadOptions& q = {});

// Right-hand side of the positivity identity: eps * integral of theta^2 + (V theta)^2.
QuadratureResult perturbation_winding_prediction(const HarmonicSample& s, double eps, int genus, const QuadOptions& q = {});

// Max over a grid of |X theta + H V theta| and |H theta - X V theta|, relative
// to the max of |theta|, by central differences along the frame flows.
double harmonicity_residual(const HarmonicSample& s, int genus, double step = 1e-4, int n = 6);

struct NotNullHomologous : std::domain_error {
  using std::domain_error::domain_error;
};

struct HelicityResult {
  QuadratureResult value;
  QuadratureResult shifted;  // recomputed with tau + pi^* theta
  bool primitive_independent = false;
  std::string primitive;  // description of tau
};

// For built-in families the primitive is analytic; `tau` overrides it.
// `h1_basis` are the closed forms whose winding cycles must vanish.
HelicityResult helicity(const FlowDescriptor& flow, const std::vector<HarmonicSample>& h1_basis,
                        const FrameField& tau = {}, const QuadOptions& q = {});

struct Betti {
  int b0 = 1, b1 = 0;
};

struct FlowClassification {
  bool omega_nonzero = false;
  std::optional<double> helicity;
  bool helicity_nonzero = true;
  int b0 = 1, b1 = 0;
  std::array<int, 3> dims{0, 0, 0};
  int n = 0;
  std::string verdict;
  bool ambiguous = false;
  std::vector<std::string> warnings;
  std::vector<FlowClassification> candidates;  // filled when ambiguous

  std::string report() const;
  std::string record() const;  // one-line JSON
};

// Pure case table.
FlowClassification classify_case(bool omega_nonzero, bool helicity_nonzero, Betti betti);
Betti default_betti(const FlowDescriptor& flow);
// Pullback of a rank-r flat unitary bundle with t trivial summands.
Betti pullback_twist_betti(int rank, int genus, int trivial_summands);
FlowClassification classify(const FlowDescriptor& flow, std::optional<Betti> betti = std::nullopt,
                            const QuadOptions& q = {});

// lambda_eps = -eps^2 W / vol.
double splitting_resonance_predict(double W, double vol, double eps);

struct SpectrumPoint {
  cplx s;
  int multiplicity = 1;
  std::string band;        // first-band-large, first-band-small, special, splitting
  std::string provenance;  // eigenvalue or topological origin
};

std::vector<SpectrumPoint> assemble_one_form_spectrum(const std::vector<double>& laplace_eigs, int genus);
// Adds the splitting resonance at -lambda_eps iff eps != 0 and W != 0.
std::vector<SpectrumPoint> assemble_with_splitting(const std::vector<double>& laplace_eigs, int genus, double eps,
                                                   double W);
std::string spectrum_csv(const std::vector<SpectrumPoint>& pts);

}  // namespace anosov::invariants
