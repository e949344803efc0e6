#pragma once
// Truncated Fourier series on the circle, w(theta) = sum_{k=-K..K} c_k e^{i k theta}.

#include <complex>
#include <stdexcept>
#include <vector>

namespace anosov {

using cplx = std::complex<double>;

struct TrigPoly {
  std::vector<cplx> c;  // c[k + K]

  TrigPoly() : c(1, cplx(0.0)) {}
  explicit TrigPoly(int K) : c(2 * static_cast<std::size_t>(K) + 1, cplx(0.0)) {
    if (K < 0) throw std::invalid_argument("TrigPoly: negative cutoff");
  }
  explicit TrigPoly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {
    if (c.size() % 2 == 0) throw std::invalid_argument("TrigPoly: coefficient count must be odd");
  }

  int K() const { return static_cast<int>(c.size() / 2); }
  cplx& operator[](int k) { return c[static_cast<std::size_t>(k + K())]; }
  const cplx& operator[](int k) const { return c[static_cast<std::size_t>(k + K())]; }

  cplx eval(double theta) const;
  // True when c_{-k} = conj(c_k) within tol.
  bool is_real(double tol = 1e-14) const;
  double l2_norm() const;  // (sum |c_k|^2)^{1/2}
  TrigPoly conj() const;   // coefficients of the pointwise conjugate
};

}  // namespace anosov
