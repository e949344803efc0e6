#pragma once
// Truncated Euler products for the (twisted) Ruelle zeta function, trace sums
// F_k(s) over closed orbits, and closed forms for cat-map suspensions.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "anosov/invariants.hpp"
#include "anosov/orbits.hpp"

namespace anosov::zeta {

using cplx = std::complex<double>;

struct ConvergenceDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class IterateMode {
  Converged,  // all iterates k >= 1 until the terms fall below double precision
  Cutoff,     // iterates with k * l# <= catalog cutoff only
};

struct ZetaOptions {
  int beta = 1;            // dim E_s
  double h_top = 1.0;      // topological entropy bound used for the margin
  double margin = 0.5;     // require Re s >= h_top + margin
  IterateMode iterates = IterateMode::Converged;
};

struct TraceTerm {
  std::size_t orbit = 0;  // index into the catalog
  int iterate = 1;
  double length = 0.0;            // k * l#
  double primitive_length = 0.0;  // l#
  std::array<double, 3> weight{1.0, 2.0, 1.0};  // Tr(wedge^k P)
  double denom = 0.0;                           // |det(id - P)|
  cplx hol{1.0, 0.0};
};

struct ZetaEvaluation {
  cplx s;
  cplx value{1.0, 0.0};
  cplx log_value{0.0, 0.0};
  double cutoff = 0.0;
  double err_bound = 0.0;
  bool rigorous_bound = false;  // false when the tail constant is estimated
  std::vector<std::string> warnings;
};

// Iterate view: every orbit of the catalog and its iterates, deterministic order.
std::vector<TraceTerm> expand_iterates(const orbits::OrbitCatalog& cat, const orbits::HolonomyCharacter& chi,
                                       double max_length);

ZetaEvaluation ruelle_zeta(const orbits::OrbitCatalog& cat, const orbits::HolonomyCharacter& chi, cplx s,
                           const ZetaOptions& opt = {});

cplx trace_sum_Fk(const orbits::OrbitCatalog& cat, const orbits::HolonomyCharacter& chi, int k, cplx s,
                  const ZetaOptions& opt = {});

struct Factorization {
  cplx s;
  std::array<cplx, 3> F{};
  cplx dlog_zeta;   // central difference of log ruelle_zeta
  cplx trace_side;  // sum_k (-1)^(k+beta+1) F_k
  double residual = 0.0;
};

Factorization factorization_check(const orbits::OrbitCatalog& cat, const orbits::HolonomyCharacter& chi, cplx s,
                                  const ZetaOptions& opt = {}, double step = 1e-5);

using IMat2 = orbits::IMat2;

cplx catmap_closed_form(const IMat2& A, double theta, cplx s);
// Order of vanishing at s = 0 (negative for poles), by exact Laurent analysis.
int catmap_vanishing_order(const IMat2& A, double theta);

// n(M, X) or n(M, X, A) from a classification.
int vanishing_order_prediction(const invariants::FlowClassification& c);

// Compensated complex accumulator (Neumaier, componentwise).
class CompensatedSum {
 public:
  void add(cplx x);
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  double re_ = 0, im_ = 0, cre_ = 0, cim_ = 0;
};

}  // namespace anosov::zeta
