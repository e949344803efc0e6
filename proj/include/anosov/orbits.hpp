#pragma once
// Primitive closed orbits of geodesic flows on compact hyperbolic surfaces and
// of suspensions of hyperbolic toral automorphisms.

#include <array>
#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "anosov/group.hpp"

namespace anosov::orbits {

inline constexpr const char* kFormatVersion = "anosov-orbits/1";

struct ClosedOrbit {
  double length = 0.0;
  double primitive_length = 0.0;
  double expansion = 1.0;  // unstable eigenvalue of the linearized return map
  std::string word;        // cyclic word (surface groups) or "n.i" (cat maps)
  std::vector<long> h1_class;

  // |det(id - P)| = lambda + 1/lambda - 2.
  double det_abs() const { return expansion + 1.0 / expansion - 2.0; }
  int multiplicity() const;  // length / primitive_length, rounded
};

struct OrbitCatalog {
  std::string source;  // "catmap:a,b,c,d" or "fuchsian:<name>"
  double cutoff = 0.0;
  bool complete = false;
  std::vector<ClosedOrbit> orbits;
  std::vector<std::string> diagnostics;
  std::vector<std::string> header_extra;  // provenance lines echoed into files

  std::size_t count_up_to(double L) const;
  bool is_catmap() const { return source.rfind("catmap:", 0) == 0; }
  std::array<long, 4> catmap_matrix() const;  // throws unless is_catmap()
};

struct HolonomyCharacter {
  std::vector<double> angles;
  static HolonomyCharacter trivial(std::size_t rank) { return {std::vector<double>(rank, 0.0)}; }
  std::size_t rank() const { return angles.size(); }
  std::complex<double> eval(const std::vector<long>& h1) const;
};

// exp(i <angles, h1_class>).
std::complex<double> holonomy(const ClosedOrbit& orbit, const HolonomyCharacter& chi);

struct FuchsianOptions {
  int jobs = 1;
  double slack = 8.0;  // heuristic pruning slack when no certified bound exists
  std::size_t max_elements = 3'000'000;
  std::string name = "user";
};

struct FuchsianReport {
  double circumradius = 0.0;
  double ball_radius = 0.0;
  std::size_t elements = 0;
  std::size_t candidates = 0;
  std::size_t classes = 0;
  bool certified = false;
};

OrbitCatalog fuchsian_orbits(const std::vector<lorentz::Isometry>& generators, double cutoff,
                             const FuchsianOptions& opt = {}, FuchsianReport* report = nullptr);

using IMat2 = std::array<long, 4>;  // row major a b / c d

OrbitCatalog catmap_orbits(const IMat2& A, int max_period);

// Integer helpers for cat maps.
long long catmap_trace_power(const IMat2& A, int n);  // tr(A^n)
long long catmap_fixed_points(const IMat2& A, int n);  // |tr(A^n) - 2|
long long catmap_primitive_count(const IMat2& A, int n);
int mobius(int n);

void write_catalog(std::ostream& os, const OrbitCatalog& c);
OrbitCatalog read_catalog(std::istream& is);
void save_catalog(const std::string& path, const OrbitCatalog& c);
OrbitCatalog load_catalog(const std::string& path);

struct CatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace anosov::orbits
