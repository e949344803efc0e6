#include "anosov/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "anosov/parallel.hpp"
#include "anosov/quadrature.hpp"

namespace anosov::boundary {

using lorentz::BoundaryPoint;
using lorentz::kPi;
using lorentz::Mat3;
using lorentz::Vec3;

namespace {

double wrap(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

double angle_of(double c, double s) { return wrap(std::atan2(s, c)); }

// Image angle and conformal factor N_g at theta.
std::pair<double, double> act(const Isometry& g, double theta) {
  Vec3 v = g.m * Vec3(1.0, std::cos(theta), std::sin(theta));
  return {angle_of(v[1], v[2]), v[0]};
}

Mat3 section_inverse(const Vec3& x) {
  // h_x is a symmetric Lorentz matrix, so its inverse is J h_x J.
  Mat3 J = lorentz::minkowski_matrix();
  return J * lorentz::section(x) * J;
}

// Rows m = -M..M of A_m[w](x) = integral of P^{lambda+1} e^{-i m phi_x(nu)} w(nu),
// columns k = -K..K for w = e^{i k nu}; P = 1 / <x, (1, nu)>.
Eigen::MatrixXcd moment_rows(const Vec3& x, cplx lambda, int M, int K, int nq) {
  Mat3 hinv = section_inverse(x);
  Eigen::MatrixXcd E(2 * M + 1, nq), F(nq, 2 * K + 1);
  for (int j = 0; j < nq; ++j) {
    double nu = 2.0 * kPi * j / nq;
    double c = std::cos(nu), s = std::sin(nu);
    double P = 1.0 / (x[0] - x[1] * c - x[2] * s);
    Vec3 xi(x[0] - P, x[1] - P * c, x[2] - P * s);
    Vec3 loc = hinv * xi;
    double phi = std::atan2(loc[2], loc[1]);
    cplx W = std::exp((lambda + 1.0) * std::log(P)) * (2.0 * kPi / nq);
    for (int m = -M; m <= M; ++m) E(m + M, j) = W * std::polar(1.0, -m * phi);
    for (int k = -K; k <= K; ++k) F(j, k + K) = std::polar(1.0, k * nu);
  }
  return E * F;
}

double rotation_angle(const Isometry& g, const Vec3& x) {
  Vec3 gx = g.m * x;
  Mat3 R = section_inverse(gx) * g.m * lorentz::section(x);
  return std::atan2(R(2, 1), R(1, 1));
}

// Collocation points on the side of the Dirichlet polygon carried by the
// bisector of o and g^{-1} o.
std::vector<Vec3> side_points(const Isometry& g, int count, double circumradius) {
  Vec3 go = g.inverse().m * Vec3(1.0, 0.0, 0.0);
  double dg = std::acosh(std::max(1.0, go[0]));
  lorentz::Vec2 u(go[1], go[2]);
  u.normalize();
  Vec3 mid(std::cosh(dg / 2), std::sinh(dg / 2) * u[0], std::sinh(dg / 2) * u[1]);
  Vec3 tv(0.0, -u[1], u[0]);
  double T = std::acosh(std::max(1.0, std::cosh(circumradius) / std::cosh(dg / 2)));
  std::vector<Vec3> pts;
  for (int i = 0; i < count; ++i) {
    double t = count == 1 ? 0.0 : -T + 2.0 * T * i / (count - 1);
    pts.push_back(std::cosh(t) * mid + std::sinh(t) * tv);
  }
  return pts;
}

Eigen::VectorXcd to_vec(const TrigPoly& w) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(w.c.size()));
  for (std::size_t i = 0; i < w.c.size(); ++i) v[static_cast<Eigen::Index>(i)] = w.c[i];
  return v;
}

TrigPoly from_vec(const Eigen::VectorXcd& v) {
  std::vector<cplx> c(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) c[static_cast<std::size_t>(i)] = v[i];
  return TrigPoly(std::move(c));
}

// Real coordinates (Re c0, sqrt2 Re c_k, sqrt2 Im c_k) of the real part of w.
Eigen::VectorXd real_coords(const TrigPoly& w) {
  int K = w.K();
  Eigen::VectorXd r(2 * K + 1);
  r[0] = w[0].real();
  for (int k = 1; k <= K; ++k) {
    cplx a = 0.5 * (w[k] + std::conj(w[-k]));
    r[2 * k - 1] = std::sqrt(2.0) * a.real();
    r[2 * k] = std::sqrt(2.0) * a.imag();
  }
  return r;
}

TrigPoly from_real_coords(const Eigen::VectorXd& r) {
  int K = static_cast<int>(r.size() / 2);
  TrigPoly w(K);
  w[0] = r[0];
  for (int k = 1; k <= K; ++k) {
    cplx a(r[2 * k - 1] / std::sqrt(2.0), r[2 * k] / std::sqrt(2.0));
    w[k] = a;
    w[-k] = std::conj(a);
  }
  return w;
}

}  // namespace

cplx BoundaryDensity::integral() const { return 2.0 * kPi * w[0]; }

double Bd0System::residual(const TrigPoly& w) const {
  if (w.K() != K) throw std::invalid_argument("density cutoff does not match the system");
  Eigen::VectorXcd v = to_vec(w);
  double s = (S * v).norm();
  return s > 0.0 ? (D * v).norm() / s : std::numeric_limits<double>::infinity();
}

Bd0System bd0_system(const std::vector<Isometry>& generators, cplx lambda, int K, int moments, int jobs) {
  if (K < 4) throw std::invalid_argument("Fourier cutoff K must be >= 4");
  if (moments < 0) throw std::invalid_argument("moment count must be >= 0");
  group::Alphabet a = group::Alphabet::from_generators(generators);
  group::DirichletPolygon poly = group::dirichlet_polygon(a);
  if (!poly.compact) throw std::invalid_argument("generators do not cut out a compact Dirichlet polygon");
  const int M = moments, rows_m = 2 * M + 1, pts = 2 * K + 1;
  const int nq = std::max(8 * K + 1, K + 260);
  const std::size_t L = a.letters.size();
  Bd0System sys;
  sys.K = K;
  sys.nodes = nq;
  const Eigen::Index block = static_cast<Eigen::Index>(rows_m) * pts;
  sys.D.resize(block * static_cast<Eigen::Index>(L), 2 * K + 1);
  sys.S.resize(block * static_cast<Eigen::Index>(L), 2 * K + 1);
  parallel_chunks(L, resolve_jobs(jobs), L, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t l = b; l < e; ++l) {
      const Isometry& g = a.letters[l];
      auto xs = side_points(g, pts, poly.circumradius);
      for (int p = 0; p < pts; ++p) {
        const Vec3& x = xs[static_cast<std::size_t>(p)];
        Eigen::MatrixXcd A0 = moment_rows(x, lambda, M, K, nq);
        Eigen::MatrixXcd A1 = moment_rows(g.m * x, lambda, M, K, nq);
        double alpha = rotation_angle(g, x);
        Eigen::Index r0 = static_cast<Eigen::Index>(l) * block + static_cast<Eigen::Index>(p) * rows_m;
        for (int m = -M; m <= M; ++m) {
          sys.D.row(r0 + m + M) = A1.row(m + M) - std::polar(1.0, -m * alpha) * A0.row(m + M);
          sys.S.row(r0 + m + M) = A0.row(m + M);
        }
      }
    }
  });
  return sys;
}

double Bd0Result::gap(std::size_t count) const {
  if (count == 0 || count >= singular_values.size()) return 0.0;
  double lo = singular_values[count - 1];
  return lo > 0.0 ? singular_values[count] / lo : std::numeric_limits<double>::infinity();
}

Bd0Result bd0_approximate(const std::vector<Isometry>& generators, cplx lambda, const Bd0Options& opt) {
  if (opt.count < 1 || opt.count > 2 * opt.K + 1) throw std::invalid_argument("count out of range");
  Bd0System sys = bd0_system(generators, lambda, opt.K, opt.moments, opt.jobs);
  Bd0Result r;
  r.nodes = sys.nodes;
  // Whiten by S, then the smallest singular directions of D in that metric.
  Eigen::BDCSVD<Eigen::MatrixXcd> ssvd(sys.S, Eigen::ComputeThinV);
  const auto& sv = ssvd.singularValues();
  Eigen::Index keep = 0;
  while (keep < sv.size() && sv[keep] > 1e-10 * sv[0]) ++keep;
  r.rank = static_cast<int>(keep);
  Eigen::MatrixXcd B = ssvd.matrixV().leftCols(keep) * sv.head(keep).cwiseInverse().asDiagonal();
  Eigen::BDCSVD<Eigen::MatrixXcd> dsvd(sys.D * B, Eigen::ComputeThinV);
  const auto& dv = dsvd.singularValues();
  for (Eigen::Index i = dv.size(); i-- > 0;) r.singular_values.push_back(dv[i]);
  int count = std::min<int>(opt.count, static_cast<int>(dv.size()));
  std::vector<TrigPoly> raw;
  for (int j = 0; j < count; ++j) {
    Eigen::VectorXcd w = B * dsvd.matrixV().col(dv.size() - 1 - j);
    raw.push_back(from_vec(w / w.norm()));
  }
  if (opt.realify && lambda.imag() == 0.0) {
    // Real and imaginary parts span the conjugation-invariant space; keep the
    // leading real directions.
    Eigen::MatrixXd R(2 * opt.K + 1, 2 * count);
    for (int j = 0; j < count; ++j) {
      R.col(2 * j) = real_coords(raw[static_cast<std::size_t>(j)]);
      TrigPoly iw = raw[static_cast<std::size_t>(j)];
      for (auto& c : iw.c) c *= cplx(0.0, -1.0);
      R.col(2 * j + 1) = real_coords(iw);
    }
    Eigen::BDCSVD<Eigen::MatrixXd> rsvd(R, Eigen::ComputeThinU);
    raw.clear();
    for (int j = 0; j < count; ++j) raw.push_back(from_real_coords(rsvd.matrixU().col(j)));
  }
  for (auto& w : raw) {
    double n = w.l2_norm();
    for (auto& c : w.c) c /= n;
    BoundaryDensity d;
    d.lambda = lambda;
    d.residual = sys.residual(w);
    d.w = std::move(w);
    r.densities.push_back(std::move(d));
  }
  std::stable_sort(r.densities.begin(), r.densities.end(),
                   [](const BoundaryDensity& x, const BoundaryDensity& y) { return x.residual < y.residual; });
  double g = r.gap(static_cast<std::size_t>(count));
  if (static_cast<std::size_t>(count) < r.singular_values.size() && g < 10.0)
    r.warnings.push_back("no clear gap after the " + std::to_string(count) + "-th singular value (ratio " +
                         std::to_string(g) + "); increase K");
  return r;
}

double BumpFunction::eval(double theta) const {
  return amplitude * simd::bump_profile(lorentz::angular_distance(theta, center), r_in, r_out);
}

double BumpFunction::eval_line(double t) const {
  return amplitude * simd::bump_profile(std::abs(t - center), r_in, r_out);
}

double CircleFunction::eval(double theta) const {
  double v = constant;
  for (const Term& t : terms) {
    double th = t.pull ? act(*t.pull, theta).first : theta;
    v += t.coeff * t.bump.eval(th);
  }
  return v;
}

cplx CircleFunction::pair(const TrigPoly& w, int nodes) const {
  cplx total = constant * 2.0 * kPi * w[0];
  GaussRule gr = gauss_legendre(nodes);
  for (const Term& t : terms) {
    std::optional<Isometry> back;
    if (t.pull) back = t.pull->inverse();
    const BumpFunction& b = t.bump;
    double edges[4] = {b.center - b.r_out, b.center - b.r_in, b.center + b.r_in, b.center + b.r_out};
    cplx acc = 0.0;
    for (int p = 0; p < 3; ++p) {
      if (edges[p + 1] <= edges[p]) continue;
      auto [xs, ws] = gauss_on(gr, edges[p], edges[p + 1]);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        double mu = xs[i];
        double bv = b.amplitude * simd::bump_profile(std::abs(mu - b.center), b.r_in, b.r_out);
        if (back) {
          auto [th, N] = act(*back, mu);
          acc += ws[i] * w.eval(th) * bv / N;
        } else {
          acc += ws[i] * w.eval(mu) * bv;
        }
      }
    }
    total += t.coeff * acc;
  }
  return total;
}

std::pair<double, double> fixed_points(const Isometry& g) {
  double tr = g.m.trace();
  if (!(tr > 3.0 + 1e-12)) throw std::invalid_argument("isometry is not hyperbolic");
  double ell = std::acosh((tr - 1.0) / 2.0);
  auto eigvec = [&](double mu) {
    Mat3 A = g.m - mu * Mat3::Identity();
    Vec3 best(0, 0, 0);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        Vec3 v = Vec3(A.row(i)).cross(Vec3(A.row(j)));
        if (v.norm() > best.norm()) best = v;
      }
    if (best[0] < 0) best = -best;
    return angle_of(best[1], best[2]);
  };
  return {eigvec(std::exp(ell)), eigvec(std::exp(-ell))};
}

namespace {

// Counterclockwise arc [a, b] (angles) contains theta.
bool arc_contains(double a, double b, double theta) {
  double len = wrap(b - a);
  return wrap(theta - a) <= len;
}

bool arc_meets_ball(double a, double b, double center, double radius) {
  if (arc_contains(a, b, center)) return true;
  return lorentz::angular_distance(a, center) <= radius || lorentz::angular_distance(b, center) <= radius;
}

Isometry power(const Isometry& g, int n) {
  Isometry r;
  for (int i = 0; i < n; ++i) r = r * g;
  return r;
}

}  // namespace

KernelBump kernel_bump(const BoundaryDensity& w, double nu_minus, double nu_plus, const Isometry& gamma, double eps) {
  KernelBump out;
  if (!w.is_real(1e-10)) throw std::invalid_argument("kernel bump needs a real density");
  double gap = lorentz::angular_distance(nu_minus, nu_plus);
  if (!(gap > 1e-9)) throw std::invalid_argument("nu_minus == nu_plus");
  auto [att, rep] = fixed_points(gamma);
  double d_rep = lorentz::angular_distance(rep, nu_minus), d_att = lorentz::angular_distance(att, nu_minus);
  if (lorentz::angular_distance(att, nu_plus) < 1e-9 || d_rep < 1e-9 || d_att < 1e-9)
    throw std::invalid_argument("fixed points of gamma meet {nu_minus, nu_plus}");
  if (eps <= 0.0) eps = std::min({1.0, 0.5 * gap, 0.5 * d_rep, 0.5 * d_att});
  out.eps = eps;
  if (!(eps < d_rep) || !(eps / 2 < d_att) || !(eps <= 0.5 * gap)) {
    out.diagnostics = "eps is not admissible for gamma";
    return out;
  }
  BumpFunction b{nu_minus, eps / 2, eps, 1.0};
  CircleFunction phi;
  phi.constant = 1.0;
  phi.terms.push_back({b, -1.0, std::nullopt});
  cplx p0 = phi.pair(w.w);
  if (std::abs(p0) <= 1e-3 * kTolPair) {
    out.phi = phi;
    out.pairing = p0;
    out.ok = true;
    return out;
  }
  std::ostringstream diag;
  for (int n = 1; n <= 64; ++n) {
    Isometry gn = power(gamma, n);
    double a = act(gn, nu_minus - eps).first, c = act(gn, nu_minus + eps).first;
    if (arc_meets_ball(a, c, nu_minus, eps / 2) || arc_contains(a, c, nu_plus)) continue;
    CircleFunction pushed;
    pushed.terms.push_back({b, 1.0, gn.inverse()});
    cplx q = pushed.pair(w.w);
    double s = -p0.real() / q.real();
    if (!(std::abs(q.real()) > 0.0) || !(s > 0.0)) continue;
    phi.terms.push_back({b, s, gn.inverse()});
    out.phi = phi;
    out.n = n;
    out.s = s;
    out.pairing = phi.pair(w.w);
    out.ok = std::abs(out.pairing) <= kTolPair;
    if (!out.ok) diag << "pairing " << std::abs(out.pairing) << " above tolerance";
    out.diagnostics = diag.str();
    return out;
  }
  // The pushed pairings equal -p0 only for exactly invariant w dnu; truncated
  // densities lose that at small scales. Fall back to a plain bump clear of
  // B_eps(nu_minus) where w has the opposite sign.
  diag << "no power of gamma up to 64 gives a positive coefficient; ";
  double best = 0.0;
  BumpFunction pick;
  for (int j = 0; j < 512; ++j) {
    double c = 2.0 * kPi * j / 512;
    if (lorentz::angular_distance(c, nu_minus) < 1.5 * eps + 1e-12) continue;
    BumpFunction cand{c, eps / 2, eps, 1.0};
    CircleFunction one;
    one.terms.push_back({cand, 1.0, std::nullopt});
    double q = one.pair(w.w).real();
    if (-q / p0.real() > 0.0 && std::abs(q) > best) {
      best = std::abs(q);
      pick = cand;
    }
  }
  if (best > 0.0) {
    double s = std::abs(p0.real()) / best;
    phi.terms.push_back({pick, s, std::nullopt});
    out.phi = phi;
    out.n = -1;
    out.s = s;
    out.pairing = phi.pair(w.w);
    out.ok = std::abs(out.pairing) <= kTolPair;
    diag << "plain bump at " << pick.center << (out.ok ? "" : ", pairing above tolerance");
    out.diagnostics = diag.str();
    return out;
  }
  diag << "no bump of the opposite sign outside B_eps(nu_minus)";
  out.diagnostics = diag.str();
  return out;
}

double BumpTriple::eval(double nu_minus, double nu_plus, double s) const {
  double a = psi.eval_line(s);
  if (a == 0.0) return 0.0;
  double m = phi_minus.eval(nu_minus);
  if (m == 0.0) return 0.0;
  return a * m * phi_plus.eval(nu_plus);
}

cplx pair_product(const BoundaryDensity& w1, const BoundaryDensity& w2, const std::vector<BumpTriple>& chi) {
  if (std::abs(w1.lambda - cplx(-1.0)) > 1e-12 || std::abs(w2.lambda - cplx(-1.0)) > 1e-12)
    throw std::invalid_argument("the product pairing is defined at lambda = -1 only");
  TrigPoly w2c = w2.w.conj();
  cplx total = 0.0;
  for (const BumpTriple& t : chi) {
    CircleFunction m;
    m.terms.push_back({t.phi_minus, 1.0, std::nullopt});
    total += 0.5 * m.pair(w1.w) * t.phi_plus.pair(w2c) * t.psi.line_integral();
  }
  return total;
}

std::vector<UnitTangent> sample_fundamental_domain(const group::DirichletPolygon& poly, std::size_t n,
                                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<UnitTangent> out;
  out.reserve(n);
  double ch = std::cosh(poly.circumradius);
  while (out.size() < n) {
    double rho = std::acosh(1.0 + U(rng) * (ch - 1.0));
    double phi = 2.0 * kPi * U(rng), psi = 2.0 * kPi * U(rng);
    Vec3 x(std::cosh(rho), std::sinh(rho) * std::cos(phi), std::sinh(rho) * std::sin(phi));
    if (!poly.contains(x)) continue;
    out.push_back({x, lorentz::section(x) * Vec3(0.0, std::cos(psi), std::sin(psi))});
  }
  return out;
}

namespace {

struct OrbitPoint {
  double nu_minus, nu_plus, s;
};

// Flow coordinates of g p for every matrix with (g x)_0 <= max_x0.
void near_orbit(const simd::Mat3Batch& mats, const UnitTangent& p, double max_x0, std::vector<OrbitPoint>& out) {
  thread_local std::vector<double> buf;
  const std::size_t n = mats.size();
  buf.resize(6 * n);
  double* x0 = buf.data();
  double *x1 = x0 + n, *x2 = x1 + n, *y0 = x2 + n, *y1 = y0 + n, *y2 = y1 + n;
  double xv[3] = {p.x[0], p.x[1], p.x[2]}, yv[3] = {p.xi[0], p.xi[1], p.xi[2]};
  simd::apply_batch(mats, xv, x0, x1, x2);
  simd::apply_batch(mats, yv, y0, y1, y2);
  out.clear();
  for (std::size_t k = 0; k < n; ++k) {
    if (x0[k] > max_x0) continue;
    double pp = x0[k] + y0[k], pm = x0[k] - y0[k];
    out.push_back({angle_of((x1[k] - y1[k]) / pm, (x2[k] - y2[k]) / pm),
                   angle_of((x1[k] + y1[k]) / pp, (x2[k] + y2[k]) / pp), 0.5 * std::log(pp / pm)});
  }
}

double sum_triples(const std::vector<BumpTriple>& triples, const std::vector<OrbitPoint>& pts) {
  double f = 0.0;
  for (const OrbitPoint& o : pts)
    for (const BumpTriple& t : triples) f += t.eval(o.nu_minus, o.nu_plus, o.s);
  return f;
}

// Largest x0 of a point in the support of a triple built at endpoint gap
// >= eps / 4 and |s| <= s_max.
double support_x0(double eps, double s_max) { return std::cosh(s_max + 0.5) / std::sin(eps / 8.0); }

double triple_eps(double nu_minus, double nu_plus) {
  return std::min(1.0, 0.5 * lorentz::angular_distance(nu_minus, nu_plus));
}

}  // namespace

double orbit_sum(const TimeChange& f, const simd::Mat3Batch& mats, const UnitTangent& p) {
  thread_local std::vector<OrbitPoint> pts;
  near_orbit(mats, p, f.max_x0, pts);
  return sum_triples(f.triples, pts);
}

double TimeChange::eval(const UnitTangent& p) const { return orbit_sum(*this, mats, p); }

TimeChange build_time_change(const std::vector<Isometry>& generators, const Bd0Result& basis, std::size_t index,
                             const TimeChangeOptions& opt, TimeChangeReport* report) {
  if (index >= basis.densities.size()) throw std::invalid_argument("density index out of range");
  const BoundaryDensity& w2 = basis.densities[index];
  if (std::abs(w2.lambda - cplx(-1.0)) > 1e-12) throw std::invalid_argument("time change needs lambda = -1 states");
  group::Alphabet a = group::Alphabet::from_generators(generators);
  group::DirichletPolygon poly = group::dirichlet_polygon(a);
  if (!poly.compact) throw std::invalid_argument("generators do not cut out a compact Dirichlet polygon");
  const double Rc = poly.circumradius;
  const int jobs = resolve_jobs(opt.jobs);
  TimeChangeReport rep;

  // Candidate isometries for the kernel bumps: letters and two-letter words.
  std::vector<Isometry> words;
  std::vector<std::pair<double, double>> fix;
  for (const auto& w : group::reduced_words(a, 2)) {
    if (w.empty()) continue;
    Isometry g = group::evaluate(a, w);
    if (g.m.trace() <= 3.0 + 1e-9) continue;
    words.push_back(g);
    fix.push_back(fixed_points(g));
  }

  // Every triple has eps >= eps_min because covering points lie in the polygon.
  double eps_min = std::min(1.0, std::asin(1.0 / std::cosh(Rc)));
  double pool_x0 = support_x0(eps_min, Rc);
  double pool_radius = std::acosh(pool_x0) + Rc;
  group::Ball ball = group::enumerate_ball(a, pool_radius, Rc, {jobs, 3'000'000});
  simd::Mat3Batch mats;
  mats.reserve(ball.elements.size());
  for (const auto& e : ball.elements) {
    Mat3 rm = e.g.m.transpose();  // Eigen is column major; row-major data for the batch
    mats.push_back(rm.data());
  }

  auto pool = sample_fundamental_domain(poly, opt.pool, opt.seed);
  std::vector<std::vector<OrbitPoint>> near(pool.size());
  parallel_chunks(pool.size(), jobs, static_cast<std::size_t>(jobs) * 8, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) near_orbit(mats, pool[i], pool_x0, near[i]);
  });
  std::vector<double> fval(pool.size(), 0.0);

  TimeChange tc;
  double eps_used = 1.0, s_used = 0.0;
  while (tc.triples.size() < opt.max_triples) {
    auto it = std::min_element(fval.begin(), fval.end());
    if (it == fval.end() || *it >= opt.delta) break;
    const UnitTangent& p = pool[static_cast<std::size_t>(it - fval.begin())];
    FlowCoordinates fc = lorentz::to_flow_coordinates(p);
    double nm = fc.nu_minus.angle(), np = fc.nu_plus.angle();
    double eps = triple_eps(nm, np);
    // Words ordered by how far their fixed points sit from the forbidden zones;
    // the first one giving a positive coefficient wins.
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t j = 0; j < words.size(); ++j) {
      double m = std::min({lorentz::angular_distance(fix[j].second, nm) - eps,
                           lorentz::angular_distance(fix[j].first, nm) - eps / 2,
                           lorentz::angular_distance(fix[j].first, np)});
      if (m > 1e-3) order.emplace_back(-m, j);
    }
    std::sort(order.begin(), order.end());
    KernelBump kb;
    for (const auto& [m, j] : order) {
      kb = kernel_bump(w2, nm, np, words[j], eps);
      if (kb.ok) break;
    }
    if (!kb.ok) {
      rep.diagnostics.push_back("kernel bump failed at a covering point for every candidate word");
      fval[static_cast<std::size_t>(it - fval.begin())] = std::numeric_limits<double>::infinity();
      continue;
    }
    BumpTriple t{BumpFunction{nm, 0.125 * eps, 0.25 * eps, 1.0}, kb.phi, BumpFunction{fc.s, 0.25, 0.5, 1.0}};
    rep.max_phi_plus_pairing = std::max(rep.max_phi_plus_pairing, std::abs(kb.pairing));
    eps_used = std::min(eps_used, eps);
    s_used = std::max(s_used, std::abs(fc.s));
    std::vector<BumpTriple> one{t};
    parallel_chunks(pool.size(), jobs, static_cast<std::size_t>(jobs) * 8,
                    [&](std::size_t b, std::size_t e, std::size_t) {
                      for (std::size_t i = b; i < e; ++i)
                        if (std::isfinite(fval[i])) fval[i] += sum_triples(one, near[i]);
                    });
    tc.triples.push_back(std::move(t));
  }

  // Orbit-sum radius from the triples actually built: every gamma with gamma p
  // in some support lies in this displacement ball when p is in the polygon.
  tc.max_x0 = support_x0(eps_used, s_used);
  const double certified = std::acosh(tc.max_x0) + Rc;
  tc.radius = opt.radius > 0.0 ? opt.radius : certified;
  bool truncated = tc.radius < certified - 1e-12;
  if (truncated)
    rep.diagnostics.push_back("orbit-sum radius " + std::to_string(tc.radius) + " is below the certified radius " +
                              std::to_string(certified) + "; the tail is not controlled");
  if (std::abs(tc.radius - pool_radius) > 1e-12) {
    ball = group::enumerate_ball(a, tc.radius, Rc, {jobs, 3'000'000});
    mats = simd::Mat3Batch{};
    for (const auto& e : ball.elements) {
      Mat3 rm = e.g.m.transpose();
      mats.push_back(rm.data());
    }
  }
  tc.ball = std::move(ball);
  tc.mats = std::move(mats);

  // Positivity on fresh points.
  auto fresh = sample_fundamental_domain(poly, opt.verify, opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<double> fv(fresh.size());
  parallel_chunks(fresh.size(), jobs, static_cast<std::size_t>(jobs) * 8, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) fv[i] = tc.eval(fresh[i]);
  });
  rep.samples = fresh.size();
  rep.min_f = fv.empty() ? 0.0 : *std::min_element(fv.begin(), fv.end());
  rep.triples = tc.triples.size();
  rep.radius = tc.radius;
  rep.group_elements = tc.ball.elements.size();
  rep.ball_complete = tc.ball.complete;
  for (const auto& w1 : basis.densities) {
    cplx v = pair_product(w1, w2, tc.triples);
    rep.pairings.push_back(v);
    rep.max_pairing = std::max(rep.max_pairing, std::abs(v));
  }
  rep.positive = rep.min_f > 0.0;
  rep.pairings_ok = rep.max_pairing <= kTolPair;
  if (!rep.ball_complete) rep.diagnostics.push_back("group ball incomplete; increase the element budget");
  if (tc.triples.size() >= opt.max_triples) rep.diagnostics.push_back("triple budget exhausted before covering");
  rep.passed = rep.positive && rep.pairings_ok && rep.ball_complete && !truncated;
  if (report) *report = rep;
  return tc;
}

std::string TimeChangeReport::text() const {
  std::ostringstream os;
  os.precision(10);
  os << "positivity_min " << min_f << " over " << samples << " samples\n";
  os << "triples " << triples << "\n";
  os << "orbit_sum_radius " << radius << " group_elements " << group_elements
     << " complete " << (ball_complete ? "true" : "false") << " tail 0 (certified by displacement)\n";
  os << "max_phi_plus_pairing " << max_phi_plus_pairing << "\n";
  for (std::size_t i = 0; i < pairings.size(); ++i)
    os << "pairing w" << i << " " << pairings[i].real() << " " << pairings[i].imag() << " abs " << std::abs(pairings[i])
       << "\n";
  os << "verdict " << (passed ? "pass" : "fail") << "\n";
  os << "caveat: the densities only approximately satisfy equivariance; the vanishing pairings are a numerical "
        "check of the pairing criterion, not a certificate\n";
  for (const auto& d : diagnostics) os << "diagnostic: " << d << "\n";
  return os.str();
}

Consequence timechange_consequence(const TimeChangeReport& r, int genus) {
  Consequence c;
  if (!r.passed) {
    c.text = "verification failed; no claim";
    return c;
  }
  int chi = 2 - 2 * genus;
  c.emitted = true;
  c.m1_lower_bound = 2 * genus + 1;
  c.vanishing_order_lower_bound = -chi + 1;
  c.text = "m1(0) >= " + std::to_string(c.m1_lower_bound) + ", zeta vanishing order at 0 >= " +
           std::to_string(c.vanishing_order_lower_bound);
  return c;
}

}  // namespace anosov::boundary
