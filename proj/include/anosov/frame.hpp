#pragma once
// The frame {X, H, V} of the unit tangent bundle as generators of so(1,2),
// horocyclic fields U+- = H -+ V, and time reversal.

#include <array>
#include <complex>
#include <string>

#include "anosov/lorentz.hpp"
#include "anosov/trig.hpp"

namespace anosov::frame {

using IMat3 = std::array<std::array<long long, 3>, 3>;

enum class Generator { X, H, V, UPlus, UMinus };

std::string name(Generator g);

struct FrameGenerator {
  Generator name;
  IMat3 mat;
};

FrameGenerator generator(Generator g);

IMat3 multiply(const IMat3& a, const IMat3& b);
IMat3 commutator(const IMat3& a, const IMat3& b);
bool is_zero(const IMat3& a);
// m^T J + J m == 0.
bool in_so12(const IMat3& m);

// Structure constants: [e_i, e_j] = sum_k c[i][j][k] e_k for e = (X, H, V).
struct BracketTable {
  std::array<std::array<std::array<long long, 3>, 3>, 3> c{};
};

// Computed from integer commutators; throws std::logic_error when a
// commutator leaves span{X, H, V} or disagrees with the K = -1 relations.
BracketTable bracket_table();

struct NilpotencyReport {
  bool cube_zero_plus = false;
  bool cube_zero_minus = false;
  bool exp_quadratic = false;  // series terms of order >= 3 vanish for t in {1,2,3}
  bool ok() const { return cube_zero_plus && cube_zero_minus && exp_quadratic; }
};

NilpotencyReport horocycle_nilpotency_check();

// exp(t * A) in closed form.
lorentz::Mat3 exp_generator(Generator g, double t);

lorentz::UnitTangent time_reversal(const lorentz::UnitTangent& p);

struct CoframeValue {
  double a = 0.0, b = 0.0, p = 0.0;  // coefficients on alpha, beta, psi
};

CoframeValue time_reversal_pullback(const CoframeValue& u);

struct TransportResidual {
  double r_x = 0.0, r_u = 0.0;
};

// Finite-difference residuals of (X + lambda) v and U_- v for
// v = Phi_-^lambda * (w o B_-), differentiated along right multiplication by
// exp(t X) and exp(t U_-).
TransportResidual first_band_transport_residual(const TrigPoly& w, std::complex<double> lambda,
                                                const lorentz::UnitTangent& p, double step = 1e-5);

}  // namespace anosov::frame
