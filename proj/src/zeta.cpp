#include "anosov/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace anosov::zeta {

using orbits::ClosedOrbit;
using orbits::HolonomyCharacter;
using orbits::OrbitCatalog;

void CompensatedSum::add(cplx x) {
  auto step = [](double& s, double& c, double v) {
    double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  };
  step(re_, cre_, x.real());
  step(im_, cim_, x.imag());
}

namespace {

constexpr double kLengthTol = 1e-9;

// log(1 + w) accurate for small |w|.
cplx log1p_c(cplx w) {
  double a = w.real(), b = w.imag();
  return {0.5 * std::log1p(2.0 * a + a * a + b * b), std::atan2(b, 1.0 + a)};
}

void check_domain(cplx s, const ZetaOptions& opt) {
  if (!(s.real() >= opt.h_top + opt.margin - 1e-12))
    throw ConvergenceDomainError("Re s = " + std::to_string(s.real()) + " is below the convergence margin " +
                                 std::to_string(opt.h_top + opt.margin));
}

// Catalog indices by length, then word.
std::vector<std::size_t> summation_order(const OrbitCatalog& cat) {
  std::vector<std::size_t> idx(cat.orbits.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto &x = cat.orbits[a], &y = cat.orbits[b];
    if (x.length != y.length) return x.length < y.length;
    return x.word < y.word;
  });
  return idx;
}

TraceTerm make_term(const OrbitCatalog& cat, std::size_t i, int k, cplx base_hol) {
  const ClosedOrbit& o = cat.orbits[i];
  TraceTerm t;
  t.orbit = i;
  t.iterate = k;
  t.length = k * o.length;
  t.primitive_length = o.primitive_length;
  double lk = std::pow(o.expansion, k);
  t.weight = {1.0, lk + 1.0 / lk, 1.0};
  t.denom = lk + 1.0 / lk - 2.0;
  t.hol = std::polar(1.0, k * std::arg(base_hol));
  return t;
}

// Iterates of every orbit; Converged stops once e^{-Re s * length} is negligible.
std::vector<TraceTerm> iterates_for(const OrbitCatalog& cat, const HolonomyCharacter& chi, cplx s,
                                    const ZetaOptions& opt) {
  if (opt.iterates == IterateMode::Cutoff) return expand_iterates(cat, chi, cat.cutoff);
  std::vector<TraceTerm> out;
  for (std::size_t i : summation_order(cat)) {
    const ClosedOrbit& o = cat.orbits[i];
    cplx h = orbits::holonomy(o, chi);
    for (int k = 1; k <= 4096; ++k) {
      if (s.real() * k * o.length > 45.0 && k > 1) break;
      out.push_back(make_term(cat, i, k, h));
    }
  }
  return out;
}

std::array<cplx, 3> trace_sums(const OrbitCatalog& cat, const HolonomyCharacter& chi, cplx s, const ZetaOptions& opt) {
  check_domain(s, opt);
  std::array<CompensatedSum, 3> acc;
  for (const TraceTerm& t : iterates_for(cat, chi, s, opt)) {
    cplx common = t.hol * std::exp(-s * t.length) * t.primitive_length / t.denom;
    for (int k = 0; k < 3; ++k) acc[static_cast<std::size_t>(k)].add(-t.weight[static_cast<std::size_t>(k)] * common);
  }
  return {acc[0].value(), acc[1].value(), acc[2].value()};
}

// Tail bound on |log zeta - log zeta_N| for a complete cat-map catalog: the
// primitive count of period n is at most Fix(n) / n.
double catmap_log_tail(const orbits::IMat2& A, int N, double sigma) {
  double tr = static_cast<double>(A[0] + A[3]);
  double lam = 0.5 * (std::abs(tr) + std::sqrt(tr * tr - 4.0));
  double E = 0.0;
  for (int n = N + 1; n < N + 100000; ++n) {
    double fix = std::pow(lam, n) + std::pow(lam, -n) + (tr > 0 ? -2.0 : 2.0);  // >= |tr(A^n) - 2|
    double term = fix / n * -std::log1p(-std::exp(-sigma * n));
    E += term;
    if (term < 1e-30 || term < 1e-20 * E) break;
  }
  return E;
}

}  // namespace

std::vector<TraceTerm> expand_iterates(const OrbitCatalog& cat, const HolonomyCharacter& chi, double max_length) {
  std::vector<TraceTerm> out;
  for (std::size_t i : summation_order(cat)) {
    const ClosedOrbit& o = cat.orbits[i];
    cplx h = orbits::holonomy(o, chi);
    for (int k = 1; k * o.length <= max_length + kLengthTol; ++k) out.push_back(make_term(cat, i, k, h));
  }
  std::stable_sort(out.begin(), out.end(), [](const TraceTerm& a, const TraceTerm& b) { return a.length < b.length; });
  return out;
}

ZetaEvaluation ruelle_zeta(const OrbitCatalog& cat, const HolonomyCharacter& chi, cplx s, const ZetaOptions& opt) {
  check_domain(s, opt);
  ZetaEvaluation r;
  r.s = s;
  r.cutoff = cat.cutoff;
  if (!cat.complete) r.warnings.push_back("catalog is incomplete up to its cutoff; the error bound does not cover missing orbits");
  CompensatedSum acc;
  for (std::size_t i : summation_order(cat)) {
    const ClosedOrbit& o = cat.orbits[i];
    if (o.multiplicity() != 1) continue;  // the product runs over primitive orbits
    acc.add(log1p_c(-orbits::holonomy(o, chi) * std::exp(-s * o.length)));
  }
  r.log_value = acc.value();
  r.value = std::exp(r.log_value);
  double sigma = s.real();
  double E = 0.0;
  if (cat.is_catmap() && cat.complete) {
    E = catmap_log_tail(cat.catmap_matrix(), static_cast<int>(std::llround(cat.cutoff)), sigma);
    r.rigorous_bound = true;
  } else if (!cat.orbits.empty()) {
    // Counting function modelled as C e^{h l} / l with C fitted to the catalog.
    double C = 0.0;
    std::size_t count = 0;
    auto idx = summation_order(cat);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      ++count;
      double l = cat.orbits[idx[j]].length;
      C = std::max(C, static_cast<double>(count) * l * std::exp(-opt.h_top * l));
    }
    double L = std::max(cat.cutoff, 1e-9);
    E = C / L * std::exp((opt.h_top - sigma) * L) / (sigma - opt.h_top);
    r.warnings.push_back("truncation bound uses an empirical tail constant C = " + std::to_string(C));
  } else if (!cat.is_catmap()) {
    r.warnings.push_back("empty catalog; no tail estimate");
  }
  r.err_bound = std::abs(r.value) * (std::expm1(E) + 1e-15);
  return r;
}

cplx trace_sum_Fk(const OrbitCatalog& cat, const HolonomyCharacter& chi, int k, cplx s, const ZetaOptions& opt) {
  if (k < 0 || k > 2) throw std::invalid_argument("k must be 0, 1 or 2");
  return trace_sums(cat, chi, s, opt)[static_cast<std::size_t>(k)];
}

Factorization factorization_check(const OrbitCatalog& cat, const HolonomyCharacter& chi, cplx s,
                                  const ZetaOptions& opt, double step) {
  Factorization f;
  f.s = s;
  f.F = trace_sums(cat, chi, s, opt);
  cplx up = ruelle_zeta(cat, chi, s + step, opt).log_value;
  cplx dn = ruelle_zeta(cat, chi, s - step, opt).log_value;
  f.dlog_zeta = (up - dn) / (2.0 * step);
  CompensatedSum t;
  for (int k = 0; k < 3; ++k) {
    double sign = ((k + opt.beta + 1) % 2 == 0) ? 1.0 : -1.0;
    t.add(sign * f.F[static_cast<std::size_t>(k)]);
  }
  f.trace_side = t.value();
  f.residual = std::abs(f.dlog_zeta - f.trace_side);
  return f;
}

namespace {

void check_hyperbolic(const orbits::IMat2& A) {
  long det = A[0] * A[3] - A[1] * A[2];
  long tr = A[0] + A[3];
  if (det != 1 || std::abs(tr) <= 2) throw std::invalid_argument("cat map must have det 1 and |trace| > 2");
}

// Multiplicity of z0 = +-1 as a root of an integer polynomial (highest degree first).
int root_multiplicity(std::vector<long long> p, long long z0) {
  int m = 0;
  while (p.size() > 1) {
    long long v = 0;
    for (long long c : p) v = v * z0 + c;
    if (v != 0) break;
    std::vector<long long> q(p.size() - 1);
    long long carry = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      carry = carry * z0 + p[i];
      q[i] = carry;
    }
    p = q;
    ++m;
  }
  return m;
}

}  // namespace

cplx catmap_closed_form(const IMat2& A, double theta, cplx s) {
  check_hyperbolic(A);
  double tr = static_cast<double>(A[0] + A[3]);
  cplx z = std::exp(-s + cplx(0.0, theta));
  return (z * z - tr * z + 1.0) / ((z - 1.0) * (z - 1.0));
}

int catmap_vanishing_order(const IMat2& A, double theta) {
  check_hyperbolic(A);
  long long tr = A[0] + A[3];
  // At s = 0 the variable z = e^{i theta}; theta is reduced to (-pi, pi].
  double t = std::remainder(theta, 2.0 * lorentz::kPi);
  std::vector<long long> num{1, -tr, 1}, den{1, -2, 1};
  if (std::abs(t) < 1e-12) return root_multiplicity(num, 1) - root_multiplicity(den, 1);
  if (std::abs(std::abs(t) - lorentz::kPi) < 1e-12) return root_multiplicity(num, -1) - root_multiplicity(den, -1);
  // Otherwise z is non-real: the numerator has real roots (tr^2 > 4) and the
  // denominator vanishes only at 1.
  return 0;
}

int vanishing_order_prediction(const invariants::FlowClassification& c) { return c.n; }

}  // namespace anosov::zeta
