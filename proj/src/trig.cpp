#include "anosov/trig.hpp"

#include <cmath>

namespace anosov {

cplx TrigPoly::eval(double theta) const {
  const int K = this->K();
  cplx z = std::polar(1.0, theta);
  // Horner in z for the nonnegative part and in conj(z) for the negative part.
  cplx pos(0.0), neg(0.0);
  for (int k = K; k >= 1; --k) pos = (pos + (*this)[k]) * z;
  cplx zc = std::conj(z);
  for (int k = K; k >= 1; --k) neg = (neg + (*this)[-k]) * zc;
  return (*this)[0] + pos + neg;
}

bool TrigPoly::is_real(double tol) const {
  const int K = this->K();
  double scale = std::max(1.0, l2_norm());
  for (int k = 0; k <= K; ++k)
    if (std::abs((*this)[-k] - std::conj((*this)[k])) > tol * scale) return false;
  return true;
}

double TrigPoly::l2_norm() const {
  double s = 0.0;
  for (const auto& x : c) s += std::norm(x);
  return std::sqrt(s);
}

TrigPoly TrigPoly::conj() const {
  TrigPoly r(K());
  for (int k = -K(); k <= K(); ++k) r[k] = std::conj((*this)[-k]);
  return r;
}

}  // namespace anosov
