#include "anosov/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "anosov/frame.hpp"
#include "anosov/parallel.hpp"
#include "anosov/quadrature.hpp"

namespace anosov::invariants {

using lorentz::kPi;
using lorentz::Mat3;
using lorentz::Vec3;

std::string family_name(Family f) {
  switch (f) {
    case Family::ContactGeodesic: return "contact-geodesic";
    case Family::Magnetic: return "magnetic";
    case Family::HarmonicPerturbation: return "harmonic-perturbation";
    case Family::CatmapSuspension: return "catmap-suspension";
    case Family::User: return "user";
  }
  return "user";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::ContactGeodesic, Family::Magnetic, Family::HarmonicPerturbation, Family::CatmapSuspension,
                   Family::User})
    if (family_name(f) == s) return f;
  if (s == "contact") return Family::ContactGeodesic;
  if (s == "catmap") return Family::CatmapSuspension;
  throw std::invalid_argument("unknown flow family: " + s);
}

HarmonicSample HarmonicSample::monomial(int k) {
  if (k < 1) throw std::invalid_argument("monomial degree must be >= 1");
  HarmonicSample s;
  s.h.assign(static_cast<std::size_t>(k), cplx(0.0));
  s.h.back() = cplx(k);
  return s;
}

cplx HarmonicSample::h_at(const Vec2& z) const {
  cplx w(z[0], z[1]), r(0.0);
  for (std::size_t j = h.size(); j-- > 0;) r = r * w + h[j];
  return r;
}

std::array<double, 2> HarmonicSample::eval(const UnitTangent& p) const {
  cplx hz = h_at(lorentz::disc_embedding(p.x));
  Vec2 a = lorentz::disc_pushforward(p.x, p.xi);
  Vec2 b = lorentz::disc_pushforward(p.x, p.eta());
  return {std::real(hz * cplx(a[0], a[1])), std::real(hz * cplx(b[0], b[1]))};
}

std::array<double, 3> FlowDescriptor::field(const UnitTangent& p) const {
  switch (family) {
    case Family::ContactGeodesic: return {1.0, 0.0, 0.0};
    case Family::Magnetic: return {1.0, 0.0, magnetic_at(lorentz::disc_embedding(p.x))};
    case Family::HarmonicPerturbation: {
      auto t = harmonic.eval(p);
      return {1.0 + eps * t[0], eps * t[1], 0.0};
    }
    case Family::User:
      if (!user_field) throw std::invalid_argument("user flow without a vector field");
      return user_field(p);
    case Family::CatmapSuspension: break;
  }
  throw std::invalid_argument("the suspension flow has no frame on a unit tangent bundle");
}

RegularPolygon::RegularPolygon(int genus) {
  if (genus < 2) throw std::invalid_argument("genus must be >= 2");
  sides = 4 * genus;
  double half = kPi / sides;  // half the interior angle and half the central angle
  inradius = std::acosh(std::cos(half) / std::sin(half));
  circumradius = std::acosh(1.0 / (std::tan(half) * std::tan(half)));
}

double RegularPolygon::rho_max(double phi) const {
  double step = 2.0 * kPi / sides;
  double d = phi - step * std::round(phi / step);
  return std::atanh(std::tanh(inradius) / std::cos(d));
}

// Gauss-Bonnet: (N - 2) pi minus the angle sum 2 pi.
double RegularPolygon::area() const { return (sides - 4) * kPi; }

double unit_tangent_volume(int genus) { return 4.0 * kPi * kPi * (2.0 * genus - 2.0); }

namespace {

// Sum of g(rho, phi) sinh(rho) drho dphi over the polygon with Gauss-Legendre
// rules in both variables, one chunk per side sector.
template <class F>
double polar_sum(const RegularPolygon& poly, int n_phi, int n_rho, int jobs, F&& g) {
  std::vector<double> part(static_cast<std::size_t>(poly.sides), 0.0);
  double step = 2.0 * kPi / poly.sides;
  GaussRule gp = gauss_legendre(n_phi), gr = gauss_legendre(n_rho);
  parallel_chunks(static_cast<std::size_t>(poly.sides), jobs, static_cast<std::size_t>(poly.sides),
                  [&](std::size_t b, std::size_t e, std::size_t) {
                    for (std::size_t k = b; k < e; ++k) {
                      double c = step * static_cast<double>(k);
                      auto [phis, wphi] = gauss_on(gp, c - 0.5 * step, c + 0.5 * step);
                      double acc = 0.0;
                      for (std::size_t i = 0; i < phis.size(); ++i) {
                        auto [rhos, wrho] = gauss_on(gr, 0.0, poly.rho_max(phis[i]));
                        double line = 0.0;
                        for (std::size_t j = 0; j < rhos.size(); ++j)
                          line += wrho[j] * g(rhos[j], phis[i]) * std::sinh(rhos[j]);
                        acc += wphi[i] * line;
                      }
                      part[k] = acc;
                    }
                  });
  double total = 0.0;
  for (double v : part) total += v;
  return total;
}

// Two nested grids; the finer value is reported.
QuadratureResult refine(double coarse, double fine) {
  QuadratureResult r;
  r.value = fine;
  r.error = std::abs(fine - coarse) + 64.0 * 2.2e-16 * std::abs(fine);
  return r;
}

Vec3 polar_point(double rho, double phi) {
  return Vec3(std::cosh(rho), std::sinh(rho) * std::cos(phi), std::sinh(rho) * std::sin(phi));
}

double unit_tangent_sum(int genus, const std::function<double(const UnitTangent&)>& f, int n_phi, int n_rho,
                        int n_fiber, int jobs) {
  RegularPolygon poly(genus);
  double dpsi = 2.0 * kPi / n_fiber;
  return polar_sum(poly, n_phi, n_rho, jobs, [&](double rho, double phi) {
    Vec3 x = polar_point(rho, phi);
    Mat3 h = lorentz::section(x);
    double s = 0.0;
    for (int k = 0; k < n_fiber; ++k) {
      double psi = (k + 0.5) * dpsi;
      UnitTangent p{x, h * Vec3(0.0, std::cos(psi), std::sin(psi))};
      s += f(p);
    }
    return s * dpsi;
  });
}

}  // namespace

QuadratureResult integrate_unit_tangent(int genus, const std::function<double(const UnitTangent&)>& f,
                                        const QuadOptions& q) {
  if (q.n_phi < 1 || q.n_rho < 1 || q.n_fiber < 2) throw std::invalid_argument("inconsistent quadrature grid");
  int jobs = resolve_jobs(q.jobs);
  double c = unit_tangent_sum(genus, f, q.n_phi, q.n_rho, q.n_fiber, jobs);
  double fn = unit_tangent_sum(genus, f, 2 * q.n_phi, 2 * q.n_rho, 2 * q.n_fiber, jobs);
  return refine(c, fn);
}

QuadratureResult integrate_surface(int genus, const std::function<double(const Vec3&)>& f, const QuadOptions& q) {
  if (q.n_phi < 1 || q.n_rho < 1) throw std::invalid_argument("inconsistent quadrature grid");
  RegularPolygon poly(genus);
  int jobs = resolve_jobs(q.jobs);
  auto g = [&](double rho, double phi) { return f(polar_point(rho, phi)); };
  double c = polar_sum(poly, q.n_phi, q.n_rho, jobs, g);
  double fn = polar_sum(poly, 2 * q.n_phi, 2 * q.n_rho, jobs, g);
  return refine(c, fn);
}

QuadratureResult winding_cycle(const FlowDescriptor& flow, const FrameField& theta, const QuadOptions& q) {
  if (flow.family == Family::CatmapSuspension)
    throw std::invalid_argument("use winding_cycle_catmap for suspension flows");
  return integrate_unit_tangent(
      flow.genus,
      [&](const UnitTangent& p) {
        auto y = flow.field(p);
        auto t = theta(p);
        return t[0] * y[0] + t[1] * y[1] + t[2] * y[2];
      },
      q);
}

FrameField pullback_form(const HarmonicSample& s) {
  return [s](const UnitTangent& p) {
    auto t = s.eval(p);
    return std::array<double, 3>{t[0], t[1], 0.0};
  };
}

QuadratureResult winding_cycle_catmap(const std::function<double(double, double, double)>& dt_coeff,
                                      const QuadOptions& q) {
  auto sum = [&](int n) {
    double h = 1.0 / n, s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) s += dt_coeff((i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h);
    return s * h * h * h;
  };
  int n = std::max(2, q.n_rho);
  return refine(sum(n), sum(2 * n));
}

QuadratureResult perturbation_winding_prediction(const HarmonicSample& s, double eps, int genus,
                                                 const QuadOptions& q) {
  // |theta|^2 dA equals |h|^2 dx dy; dx dy = (1 - r^2)^2 / 4 dA.
  QuadratureResult e = integrate_surface(
      genus,
      [&](const Vec3& x) {
        Vec2 z = lorentz::disc_embedding(x);
        double w = 1.0 - z.squaredNorm();
        return s.energy_density(z) * w * w / 4.0;
      },
      q);
  return {eps * 2.0 * kPi * e.value, std::abs(eps) * 2.0 * kPi * e.error};
}

double harmonicity_residual(const HarmonicSample& s, int genus, double step, int n) {
  using frame::Generator;
  RegularPolygon poly(genus);
  Mat3 xp = frame::exp_generator(Generator::X, step), xm = frame::exp_generator(Generator::X, -step);
  Mat3 hp = frame::exp_generator(Generator::H, step), hm = frame::exp_generator(Generator::H, -step);
  double worst = 0.0, scale = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double phi = 2.0 * kPi * (a + 0.5) / n;
        double rho = poly.rho_max(phi) * (b + 0.5) / n;
        Vec3 x = polar_point(rho, phi);
        double psi = 2.0 * kPi * (c + 0.3) / n;
        Mat3 g = lorentz::UnitTangent{x, lorentz::section(x) * Vec3(0.0, std::cos(psi), std::sin(psi))}.frame();
        auto at = [&](const Mat3& m) { return s.eval(UnitTangent::from_frame(g * m)); };
        auto fxp = at(xp), fxm = at(xm), fhp = at(hp), fhm = at(hm);
        double X_theta = (fxp[0] - fxm[0]) / (2 * step), X_vtheta = (fxp[1] - fxm[1]) / (2 * step);
        double H_theta = (fhp[0] - fhm[0]) / (2 * step), H_vtheta = (fhp[1] - fhm[1]) / (2 * step);
        worst = std::max({worst, std::abs(X_theta + H_vtheta), std::abs(H_theta - X_vtheta)});
        auto v = s.eval(UnitTangent::from_frame(g));
        scale = std::max({scale, std::abs(v[0]), std::abs(v[1])});
      }
  return scale > 0.0 ? worst / scale : worst;
}

HelicityResult helicity(const FlowDescriptor& flow, const std::vector<HarmonicSample>& h1_basis, const FrameField& tau,
                        const QuadOptions& q) {
  if (flow.family == Family::CatmapSuspension)
    throw NotNullHomologous("the suspension flow has [omega] != 0; helicity is undefined");
  for (const auto& th : h1_basis) {
    QuadratureResult w = winding_cycle(flow, pullback_form(th), q);
    if (std::abs(w.value) > 10.0 * w.error + 1e-9)
      throw NotNullHomologous("winding cycle " + std::to_string(w.value) + " is nonzero; helicity is undefined");
  }
  HelicityResult r;
  FrameField t = tau;
  if (!t) {
    switch (flow.family) {
      case Family::ContactGeodesic:
        r.primitive = "tau = -alpha";
        t = [](const UnitTangent&) { return std::array<double, 3>{-1.0, 0.0, 0.0}; };
        break;
      case Family::Magnetic: {
        // lambda dA = c K dA + d gamma with K = -1; the gamma part has zero
        // fiber average against X_lambda and is dropped.
        QuadratureResult lam = integrate_surface(
            flow.genus, [&](const Vec3& x) { return flow.magnetic_at(lorentz::disc_embedding(x)); }, q);
        double c = -lam.value / RegularPolygon(flow.genus).area();
        r.primitive = "tau = -alpha - c psi, c = " + std::to_string(c);
        t = [c](const UnitTangent&) { return std::array<double, 3>{-1.0, 0.0, -c}; };
        break;
      }
      default:
        if (flow.family == Family::HarmonicPerturbation && flow.eps == 0.0) {
          r.primitive = "tau = -alpha";
          t = [](const UnitTangent&) { return std::array<double, 3>{-1.0, 0.0, 0.0}; };
          break;
        }
        throw std::invalid_argument("no analytic primitive for this family; supply tau");
    }
  } else {
    r.primitive = "user";
  }
  r.value = winding_cycle(flow, t, q);
  HarmonicSample shift = h1_basis.empty() ? HarmonicSample::monomial(1) : h1_basis.front();
  FrameField ps = pullback_form(shift);
  r.shifted = winding_cycle(
      flow,
      [&](const UnitTangent& p) {
        auto a = t(p);
        auto b = ps(p);
        return std::array<double, 3>{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
      },
      q);
  r.primitive_independent = std::abs(r.value.value - r.shifted.value) <= 2.0 * std::max(r.value.error, r.shifted.error);
  return r;
}

FlowClassification classify_case(bool omega_nonzero, bool helicity_nonzero, Betti betti) {
  if (betti.b0 < 0 || betti.b1 < 0) throw std::invalid_argument("Betti numbers must be nonnegative");
  FlowClassification c;
  c.omega_nonzero = omega_nonzero;
  c.helicity_nonzero = helicity_nonzero;
  c.b0 = betti.b0;
  c.b1 = betti.b1;
  if (omega_nonzero) {
    c.dims = {betti.b0, betti.b1 - betti.b0, betti.b0};
    c.n = 3 * betti.b0 - betti.b1;
    c.verdict = "[omega]!=0";
  } else if (helicity_nonzero) {
    c.dims = {betti.b0, betti.b1, betti.b0};
    c.n = 2 * betti.b0 - betti.b1;
    c.verdict = "[omega]=0, H!=0";
  } else {
    c.dims = {betti.b0, betti.b1 + betti.b0, betti.b0};
    c.n = betti.b0 - betti.b1;
    c.verdict = "[omega]=0, H=0";
  }
  if (c.dims[1] < 0) throw std::invalid_argument("b1 < b0 is impossible when [omega] != 0");
  return c;
}

Betti default_betti(const FlowDescriptor& flow) {
  if (flow.family == Family::CatmapSuspension) return {1, 1};
  return {1, 2 * flow.genus};
}

Betti pullback_twist_betti(int rank, int genus, int trivial_summands) {
  if (rank < 1 || genus < 2 || trivial_summands < 0 || trivial_summands > rank)
    throw std::invalid_argument("pullback twist needs rank >= 1, genus >= 2 and 0 <= trivial summands <= rank");
  int chi = 2 - 2 * genus;
  int b0 = trivial_summands;
  return {b0, 2 * b0 - rank * chi};
}

FlowClassification classify(const FlowDescriptor& flow, std::optional<Betti> betti, const QuadOptions& q) {
  Betti b = betti.value_or(default_betti(flow));
  std::vector<std::string> warnings;
  switch (flow.family) {
    case Family::CatmapSuspension: {
      QuadratureResult w = winding_cycle_catmap([](double, double, double) { return 1.0; }, q);
      FlowClassification c = classify_case(true, true, b);
      c.helicity_nonzero = false;
      c.warnings.push_back("W_X(dt) = " + std::to_string(w.value));
      return c;
    }
    case Family::HarmonicPerturbation:
      if (flow.eps != 0.0) {
        QuadratureResult w = winding_cycle(flow, pullback_form(flow.harmonic), q);
        if (std::abs(w.value) > 10.0 * w.error) {
          FlowClassification c = classify_case(true, true, b);
          c.helicity_nonzero = false;
          c.warnings.push_back("W = " + std::to_string(w.value));
          return c;
        }
        FlowClassification a = classify_case(true, true, b), z = classify_case(false, true, b);
        FlowClassification c = z;
        c.ambiguous = true;
        c.warnings.push_back("winding cycle within tolerance of zero but eps != 0");
        c.candidates = {a, z};
        return c;
      }
      [[fallthrough]];
    case Family::ContactGeodesic:
    case Family::Magnetic: {
      HelicityResult h = helicity(flow, {flow.harmonic}, {}, q);
      double H = h.value.value;
      if (std::abs(H) > 10.0 * h.value.error) {
        FlowClassification c = classify_case(false, true, b);
        c.helicity = H;
        return c;
      }
      // No built-in family is known to have zero helicity.
      FlowClassification c = classify_case(false, true, b);
      c.helicity = H;
      c.ambiguous = true;
      c.warnings.push_back("helicity within tolerance of zero");
      c.candidates = {classify_case(false, true, b), classify_case(false, false, b)};
      return c;
    }
    case Family::User: break;
  }
  throw std::invalid_argument("user flows are classified with classify_case");
}

std::string FlowClassification::report() const {
  std::ostringstream os;
  os << "case: " << verdict << "\n";
  os << "betti: b0=" << b0 << " b1=" << b1 << "\n";
  if (helicity) os << "helicity: " << *helicity << "\n";
  os << "dims=(" << dims[0] << "," << dims[1] << "," << dims[2] << "), n=" << n << "\n";
  if (ambiguous) {
    os << "ambiguous: candidates";
    for (const auto& c : candidates)
      os << " [" << c.verdict << ": dims=(" << c.dims[0] << "," << c.dims[1] << "," << c.dims[2] << "), n=" << c.n
         << "]";
    os << "\n";
  }
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string FlowClassification::record() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"omega_nonzero\":" << (omega_nonzero ? "true" : "false") << ",\"helicity\":";
  if (helicity)
    os << *helicity;
  else
    os << "null";
  os << ",\"b0\":" << b0 << ",\"b1\":" << b1 << ",\"dims\":[" << dims[0] << "," << dims[1] << "," << dims[2]
     << "],\"n\":" << n << ",\"ambiguous\":" << (ambiguous ? "true" : "false") << "}";
  return os.str();
}

double splitting_resonance_predict(double W, double vol, double eps) {
  if (!(vol > 0.0)) throw std::invalid_argument("volume must be positive");
  return -(eps * eps) * W / vol;
}

std::vector<SpectrumPoint> assemble_one_form_spectrum(const std::vector<double>& laplace_eigs, int genus) {
  if (genus < 2) throw std::invalid_argument("genus must be >= 2");
  bool has_zero = false;
  std::vector<SpectrumPoint> pts;
  for (double mu : laplace_eigs) {
    if (!(mu >= 0.0)) throw std::invalid_argument("negative Laplace eigenvalue");
    char buf[64];
    std::snprintf(buf, sizeof buf, "mu=%.17g", mu);
    if (mu == 0.0) {
      has_zero = true;
      continue;
    }
    if (mu == 0.25) {
      pts.push_back({cplx(-0.5, 0.0), 2, "first-band", buf});
    } else if (mu > 0.25) {
      double r = std::sqrt(mu - 0.25);
      pts.push_back({cplx(-0.5, r), 1, "first-band-large", buf});
      pts.push_back({cplx(-0.5, -r), 1, "first-band-large", buf});
    } else {
      double r = std::sqrt(0.25 - mu);
      pts.push_back({cplx(-0.5 + r, 0.0), 1, "first-band-small", buf});
      pts.push_back({cplx(-0.5 - r, 0.0), 1, "first-band-small", buf});
    }
  }
  if (!has_zero) throw std::invalid_argument("eigenvalue list must contain mu = 0");
  pts.push_back({cplx(-1.0, 0.0), 1, "special", "topological (multiplicity not asserted)"});
  pts.push_back({cplx(0.0, 0.0), 2 * genus, "special", "topological b1"});
  pts.push_back({cplx(1.0, 0.0), 1, "special", "topological (multiplicity not asserted)"});
  return pts;
}

std::vector<SpectrumPoint> assemble_with_splitting(const std::vector<double>& laplace_eigs, int genus, double eps,
                                                   double W) {
  auto pts = assemble_one_form_spectrum(laplace_eigs, genus);
  if (eps != 0.0 && W != 0.0) {
    double lam = splitting_resonance_predict(W, unit_tangent_volume(genus), eps);
    char buf[96];
    std::snprintf(buf, sizeof buf, "splitting resonance lambda_eps=%.17g", lam);
    pts.push_back({cplx(-lam, 0.0), 1, "splitting", buf});
  }
  return pts;
}

std::string spectrum_csv(const std::vector<SpectrumPoint>& pts) {
  std::string out = "s_re,s_im,multiplicity,band,provenance\n";
  char buf[128];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,", p.s.real(), p.s.imag(), p.multiplicity);
    out += buf + p.band + "," + p.provenance + "\n";
  }
  return out;
}

}  // namespace anosov::invariants
