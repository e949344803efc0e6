#pragma once
// Batch kernels with a scalar reference path and an AVX2/FMA path chosen at
// runtime. ANOSOV_SIMD=scalar forces the reference path.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace anosov::simd {

enum class Isa { Scalar, Avx2 };

const char* name(Isa isa);
bool avx2_supported();
// Best supported ISA unless overridden by the environment or set_active.
Isa active();
void set_active(Isa isa);  // tests; falls back to Scalar when unsupported
void reset_active();

// Structure-of-arrays batch of 3x3 matrices, e[3 * i + j][k] = entry (i, j) of matrix k.
struct Mat3Batch {
  std::array<std::vector<double>, 9> e;
  std::size_t size() const { return e[0].size(); }
  void push_back(const double* row_major9);
  void reserve(std::size_t n);
};

// out_i[k] = sum_j m_k(i, j) v[j] for every matrix in the batch.
void apply_batch(const Mat3Batch& m, const double v[3], double* out0, double* out1, double* out2, Isa isa);
inline void apply_batch(const Mat3Batch& m, const double v[3], double* o0, double* o1, double* o2) {
  apply_batch(m, v, o0, o1, o2, active());
}

// Boundary factors and endpoints (cos, sin) for tangents (x, xi) in SoA form.
struct BoundaryBatch {
  std::vector<double> phi_plus, phi_minus, bp_c, bp_s, bm_c, bm_s;
  void resize(std::size_t n);
};
void boundary_maps_batch(const double* x0, const double* x1, const double* x2, const double* xi0, const double* xi1,
                         const double* xi2, std::size_t n, BoundaryBatch& out, Isa isa);
inline void boundary_maps_batch(const double* x0, const double* x1, const double* x2, const double* xi0,
                                const double* xi1, const double* xi2, std::size_t n, BoundaryBatch& out) {
  boundary_maps_batch(x0, x1, x2, xi0, xi1, xi2, n, out, active());
}

// w(z) = sum_{k=-K..K} c[k + K] z^k on unit complex numbers z = (zc, zs).
void trig_eval_batch(const std::complex<double>* c, int K, const double* zc, const double* zs, std::size_t n,
                     double* out_re, double* out_im, Isa isa);
inline void trig_eval_batch(const std::complex<double>* c, int K, const double* zc, const double* zs, std::size_t n,
                            double* out_re, double* out_im) {
  trig_eval_batch(c, K, zc, zs, n, out_re, out_im, active());
}

// Plateau profile amp * q(d): 1 on [0, r_in], smootherstep descent to 0 at r_out.
double bump_profile(double d, double r_in, double r_out);
void bump_profile_batch(const double* d, std::size_t n, double r_in, double r_out, double amp, double* out, Isa isa);
inline void bump_profile_batch(const double* d, std::size_t n, double r_in, double r_out, double amp, double* out) {
  bump_profile_batch(d, n, r_in, r_out, amp, out, active());
}

}  // namespace anosov::simd
