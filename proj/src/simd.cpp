#include "anosov/simd.hpp"

#include <immintrin.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>

namespace anosov::simd {

namespace {

// -1 means "not chosen yet".
std::atomic<int> g_active{-1};

Isa detect() {
  if (const char* env = std::getenv("ANOSOV_SIMD"))
    if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

// ---- scalar reference kernels ----

void apply_scalar(const Mat3Batch& m, const double v[3], double* o0, double* o1, double* o2) {
  const std::size_t n = m.size();
  const auto& e = m.e;
  for (std::size_t k = 0; k < n; ++k) {
    o0[k] = e[0][k] * v[0] + e[1][k] * v[1] + e[2][k] * v[2];
    o1[k] = e[3][k] * v[0] + e[4][k] * v[1] + e[5][k] * v[2];
    o2[k] = e[6][k] * v[0] + e[7][k] * v[1] + e[8][k] * v[2];
  }
}

void boundary_scalar(const double* x0, const double* x1, const double* x2, const double* xi0, const double* xi1,
                     const double* xi2, std::size_t n, BoundaryBatch& out) {
  for (std::size_t k = 0; k < n; ++k) {
    double pp = x0[k] + xi0[k], pm = x0[k] - xi0[k];
    out.phi_plus[k] = pp;
    out.phi_minus[k] = pm;
    out.bp_c[k] = (x1[k] + xi1[k]) / pp;
    out.bp_s[k] = (x2[k] + xi2[k]) / pp;
    out.bm_c[k] = (x1[k] - xi1[k]) / pm;
    out.bm_s[k] = (x2[k] - xi2[k]) / pm;
  }
}

// Horner in z for k >= 0 and in conj(z) for k < 0.
void trig_scalar(const std::complex<double>* c, int K, const double* zc, const double* zs, std::size_t n, double* ore,
                 double* oim) {
  for (std::size_t j = 0; j < n; ++j) {
    double a = zc[j], b = zs[j];
    double pr = 0.0, pi = 0.0;
    for (int k = K; k >= 0; --k) {
      double r = pr * a - pi * b + c[k + K].real();
      double i = pr * b + pi * a + c[k + K].imag();
      pr = r;
      pi = i;
    }
    double qr = 0.0, qi = 0.0;
    for (int k = K; k >= 1; --k) {
      double r = qr * a + qi * b + c[K - k].real();
      double i = -qr * b + qi * a + c[K - k].imag();
      qr = r;
      qi = i;
    }
    // q was accumulated as sum_{k>=1} c_{-k} conj(z)^{k-1}.
    ore[j] = pr + (qr * a + qi * b);
    oim[j] = pi + (-qr * b + qi * a);
  }
}

void bump_scalar(const double* d, std::size_t n, double r_in, double r_out, double amp, double* out) {
  for (std::size_t k = 0; k < n; ++k) out[k] = amp * bump_profile(d[k], r_in, r_out);
}

// ---- AVX2 / FMA kernels ----

__attribute__((target("avx2,fma"))) void apply_avx2(const Mat3Batch& m, const double v[3], double* o0, double* o1,
                                                     double* o2) {
  const std::size_t n = m.size();
  const auto& e = m.e;
  __m256d v0 = _mm256_set1_pd(v[0]), v1 = _mm256_set1_pd(v[1]), v2 = _mm256_set1_pd(v[2]);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    double* outs[3] = {o0, o1, o2};
    for (int r = 0; r < 3; ++r) {
      __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(&e[3 * r][k]), v0);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(&e[3 * r + 1][k]), v1, acc);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(&e[3 * r + 2][k]), v2, acc);
      _mm256_storeu_pd(outs[r] + k, acc);
    }
  }
  for (; k < n; ++k) {
    o0[k] = e[0][k] * v[0] + e[1][k] * v[1] + e[2][k] * v[2];
    o1[k] = e[3][k] * v[0] + e[4][k] * v[1] + e[5][k] * v[2];
    o2[k] = e[6][k] * v[0] + e[7][k] * v[1] + e[8][k] * v[2];
  }
}

__attribute__((target("avx2,fma"))) void boundary_avx2(const double* x0, const double* x1, const double* x2,
                                                        const double* xi0, const double* xi1, const double* xi2,
                                                        std::size_t n, BoundaryBatch& out) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d a0 = _mm256_loadu_pd(x0 + k), a1 = _mm256_loadu_pd(x1 + k), a2 = _mm256_loadu_pd(x2 + k);
    __m256d b0 = _mm256_loadu_pd(xi0 + k), b1 = _mm256_loadu_pd(xi1 + k), b2 = _mm256_loadu_pd(xi2 + k);
    __m256d pp = _mm256_add_pd(a0, b0), pm = _mm256_sub_pd(a0, b0);
    _mm256_storeu_pd(out.phi_plus.data() + k, pp);
    _mm256_storeu_pd(out.phi_minus.data() + k, pm);
    _mm256_storeu_pd(out.bp_c.data() + k, _mm256_div_pd(_mm256_add_pd(a1, b1), pp));
    _mm256_storeu_pd(out.bp_s.data() + k, _mm256_div_pd(_mm256_add_pd(a2, b2), pp));
    _mm256_storeu_pd(out.bm_c.data() + k, _mm256_div_pd(_mm256_sub_pd(a1, b1), pm));
    _mm256_storeu_pd(out.bm_s.data() + k, _mm256_div_pd(_mm256_sub_pd(a2, b2), pm));
  }
  if (k < n) {
    BoundaryBatch tail;
    tail.resize(n - k);
    boundary_scalar(x0 + k, x1 + k, x2 + k, xi0 + k, xi1 + k, xi2 + k, n - k, tail);
    std::copy(tail.phi_plus.begin(), tail.phi_plus.end(), out.phi_plus.begin() + static_cast<long>(k));
    std::copy(tail.phi_minus.begin(), tail.phi_minus.end(), out.phi_minus.begin() + static_cast<long>(k));
    std::copy(tail.bp_c.begin(), tail.bp_c.end(), out.bp_c.begin() + static_cast<long>(k));
    std::copy(tail.bp_s.begin(), tail.bp_s.end(), out.bp_s.begin() + static_cast<long>(k));
    std::copy(tail.bm_c.begin(), tail.bm_c.end(), out.bm_c.begin() + static_cast<long>(k));
    std::copy(tail.bm_s.begin(), tail.bm_s.end(), out.bm_s.begin() + static_cast<long>(k));
  }
}

__attribute__((target("avx2,fma"))) void trig_avx2(const std::complex<double>* c, int K, const double* zc,
                                                    const double* zs, std::size_t n, double* ore, double* oim) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d a = _mm256_loadu_pd(zc + j), b = _mm256_loadu_pd(zs + j);
    __m256d pr = _mm256_setzero_pd(), pi = _mm256_setzero_pd();
    for (int k = K; k >= 0; --k) {
      __m256d cr = _mm256_set1_pd(c[k + K].real()), ci = _mm256_set1_pd(c[k + K].imag());
      __m256d r = _mm256_fmadd_pd(pr, a, _mm256_fnmadd_pd(pi, b, cr));
      __m256d i = _mm256_fmadd_pd(pr, b, _mm256_fmadd_pd(pi, a, ci));
      pr = r;
      pi = i;
    }
    __m256d qr = _mm256_setzero_pd(), qi = _mm256_setzero_pd();
    for (int k = K; k >= 1; --k) {
      __m256d cr = _mm256_set1_pd(c[K - k].real()), ci = _mm256_set1_pd(c[K - k].imag());
      __m256d r = _mm256_fmadd_pd(qr, a, _mm256_fmadd_pd(qi, b, cr));
      __m256d i = _mm256_fmadd_pd(qi, a, _mm256_fnmadd_pd(qr, b, ci));
      qr = r;
      qi = i;
    }
    __m256d tr = _mm256_fmadd_pd(qr, a, _mm256_mul_pd(qi, b));
    __m256d ti = _mm256_fmsub_pd(qi, a, _mm256_mul_pd(qr, b));
    _mm256_storeu_pd(ore + j, _mm256_add_pd(pr, tr));
    _mm256_storeu_pd(oim + j, _mm256_add_pd(pi, ti));
  }
  if (j < n) trig_scalar(c, K, zc + j, zs + j, n - j, ore + j, oim + j);
}

__attribute__((target("avx2,fma"))) void bump_avx2(const double* d, std::size_t n, double r_in, double r_out,
                                                    double amp, double* out) {
  const double inv = 1.0 / (r_out - r_in);
  __m256d vin = _mm256_set1_pd(r_in), vinv = _mm256_set1_pd(inv), vamp = _mm256_set1_pd(amp);
  __m256d zero = _mm256_setzero_pd(), one = _mm256_set1_pd(1.0);
  __m256d c6 = _mm256_set1_pd(6.0), c15 = _mm256_set1_pd(15.0), c10 = _mm256_set1_pd(10.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d u = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(d + k), vin), vinv);
    u = _mm256_min_pd(_mm256_max_pd(u, zero), one);
    // 1 - u^3 (10 - 15 u + 6 u^2)
    __m256d p = _mm256_fmadd_pd(_mm256_fmsub_pd(c6, u, c15), u, c10);
    __m256d u3 = _mm256_mul_pd(_mm256_mul_pd(u, u), u);
    __m256d q = _mm256_fnmadd_pd(u3, p, one);
    q = _mm256_min_pd(_mm256_max_pd(q, zero), one);
    _mm256_storeu_pd(out + k, _mm256_mul_pd(vamp, q));
  }
  if (k < n) bump_scalar(d + k, n - k, r_in, r_out, amp, out + k);
}

}  // namespace

const char* name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

Isa active() {
  int v = g_active.load(std::memory_order_relaxed);
  if (v < 0) {
    v = static_cast<int>(detect());
    g_active.store(v, std::memory_order_relaxed);
  }
  return static_cast<Isa>(v);
}

void set_active(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported()) isa = Isa::Scalar;
  g_active.store(static_cast<int>(isa));
}

void reset_active() { g_active.store(-1); }

void Mat3Batch::push_back(const double* m) {
  for (int i = 0; i < 9; ++i) e[static_cast<std::size_t>(i)].push_back(m[i]);
}

void Mat3Batch::reserve(std::size_t n) {
  for (auto& v : e) v.reserve(n);
}

void BoundaryBatch::resize(std::size_t n) {
  for (auto* v : {&phi_plus, &phi_minus, &bp_c, &bp_s, &bm_c, &bm_s}) v->resize(n);
}

void apply_batch(const Mat3Batch& m, const double v[3], double* o0, double* o1, double* o2, Isa isa) {
  if (isa == Isa::Avx2 && avx2_supported())
    apply_avx2(m, v, o0, o1, o2);
  else
    apply_scalar(m, v, o0, o1, o2);
}

void boundary_maps_batch(const double* x0, const double* x1, const double* x2, const double* xi0, const double* xi1,
                         const double* xi2, std::size_t n, BoundaryBatch& out, Isa isa) {
  if (out.phi_plus.size() < n) out.resize(n);
  if (isa == Isa::Avx2 && avx2_supported())
    boundary_avx2(x0, x1, x2, xi0, xi1, xi2, n, out);
  else
    boundary_scalar(x0, x1, x2, xi0, xi1, xi2, n, out);
}

void trig_eval_batch(const std::complex<double>* c, int K, const double* zc, const double* zs, std::size_t n,
                     double* out_re, double* out_im, Isa isa) {
  if (isa == Isa::Avx2 && avx2_supported())
    trig_avx2(c, K, zc, zs, n, out_re, out_im);
  else
    trig_scalar(c, K, zc, zs, n, out_re, out_im);
}

double bump_profile(double d, double r_in, double r_out) {
  double u = (d - r_in) / (r_out - r_in);
  u = std::min(std::max(u, 0.0), 1.0);
  double q = 1.0 - u * u * u * ((6.0 * u - 15.0) * u + 10.0);
  return std::min(std::max(q, 0.0), 1.0);
}

void bump_profile_batch(const double* d, std::size_t n, double r_in, double r_out, double amp, double* out, Isa isa) {
  if (isa == Isa::Avx2 && avx2_supported())
    bump_avx2(d, n, r_in, r_out, amp, out);
  else
    bump_scalar(d, n, r_in, r_out, amp, out);
}

}  // namespace anosov::simd
