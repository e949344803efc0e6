#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "anosov/orbits.hpp"

using namespace anosov;
using namespace anosov::orbits;

namespace {
// Fixed points of A^n on the torus, by brute force over the grid (1/D) Z^2
// with D = |det(A^n - I)|, which contains every fixed point.
long long brute_fixed_points(const IMat2& A, int n) {
  long long a = 1, b = 0, c = 0, d = 1;
  for (int i = 0; i < n; ++i) {
    long long na = a * A[0] + b * A[2], nb = a * A[1] + b * A[3];
    long long nc = c * A[0] + d * A[2], nd = c * A[1] + d * A[3];
    a = na, b = nb, c = nc, d = nd;
  }
  long long D = std::llabs((a - 1) * (d - 1) - b * c);
  long long count = 0;
  for (long long i = 0; i < D; ++i)
    for (long long j = 0; j < D; ++j) {
      long long x = (a - 1) * i + b * j, y = c * i + (d - 1) * j;
      if (x % D == 0 && y % D == 0) ++count;
    }
  return count;
}
}  // namespace

TEST_CASE("cat-map counts against the brute-force oracle") {
  const IMat2 A{2, 1, 1, 1};
  for (int n = 1; n <= 4; ++n) CHECK(catmap_fixed_points(A, n) == brute_fixed_points(A, n));
  const IMat2 B{3, 1, 2, 1};
  for (int n = 1; n <= 3; ++n) CHECK(catmap_fixed_points(B, n) == brute_fixed_points(B, n));
  CHECK(catmap_primitive_count(A, 1) == 1);
  CHECK(catmap_primitive_count(A, 2) == 2);
  CHECK(catmap_primitive_count(A, 3) == 5);
  CHECK(catmap_trace_power(A, 2) == 7);
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(7) == -1);
}

TEST_CASE("primitive counts satisfy the divisor sum") {
  const IMat2 A{2, 1, 1, 1};
  for (int n = 1; n <= 12; ++n) {
    long long s = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s += d * catmap_primitive_count(A, d);
    CHECK(s == catmap_fixed_points(A, n));
  }
}

TEST_CASE("cat-map catalog and holonomy") {
  auto cat = catmap_orbits({2, 1, 1, 1}, 6);
  CHECK(cat.is_catmap());
  CHECK(cat.complete);
  CHECK(cat.count_up_to(3) == 8);
  double lam = 0.5 * (3 + std::sqrt(5.0));
  for (const auto& o : cat.orbits) {
    CHECK(o.multiplicity() == 1);
    CHECK(o.expansion == doctest::Approx(std::pow(lam, o.length)));
    CHECK(o.det_abs() == doctest::Approx(std::abs(catmap_trace_power({2, 1, 1, 1}, static_cast<int>(o.length)) - 2)));
    auto h = holonomy(o, HolonomyCharacter{{0.3}});
    CHECK(std::abs(h - std::polar(1.0, 0.3 * o.length)) < 1e-14);
  }
  CHECK_THROWS(holonomy(cat.orbits[0], HolonomyCharacter::trivial(2)));
}

TEST_CASE("catalog I/O round trip") {
  auto cat = catmap_orbits({2, 1, 1, 1}, 5);
  cat.header_extra.push_back("generated by test");
  std::stringstream ss;
  write_catalog(ss, cat);
  auto back = read_catalog(ss);
  CHECK(back.source == cat.source);
  CHECK(back.complete);
  REQUIRE(back.orbits.size() == cat.orbits.size());
  for (std::size_t i = 0; i < cat.orbits.size(); ++i) {
    CHECK(back.orbits[i].length == cat.orbits[i].length);
    CHECK(back.orbits[i].expansion == cat.orbits[i].expansion);
    CHECK(back.orbits[i].word == cat.orbits[i].word);
    CHECK(back.orbits[i].h1_class == cat.orbits[i].h1_class);
  }
  std::stringstream again;
  write_catalog(again, back);
  std::stringstream first;
  write_catalog(first, cat);
  CHECK(again.str() == first.str());
  std::stringstream bad("not a catalog\n");
  CHECK_THROWS_AS(read_catalog(bad), CatalogError);
}

TEST_CASE("Bolza catalog") {
  FuchsianReport rep;
  FuchsianOptions opt;
  opt.name = "bolza";
  auto cat = fuchsian_orbits(group::bolza_generators(), 3.5, opt, &rep);
  CHECK(rep.certified);
  CHECK(cat.complete);
  REQUIRE(!cat.orbits.empty());
  double sys = cat.orbits.front().length;
  for (const auto& o : cat.orbits) sys = std::min(sys, o.length);
  CHECK(sys == doctest::Approx(group::bolza_systole()).epsilon(1e-12));
  auto a = group::Alphabet::from_generators(group::bolza_generators());
  for (const auto& o : cat.orbits) {
    CHECK(o.length <= 3.5 + 1e-9);
    // The length is recovered from the trace of the word.
    auto g = group::evaluate(a, group::parse_word(a, o.word));
    double tr = g.m.trace();
    CHECK(std::acosh(0.5 * (tr - 1.0)) == doctest::Approx(o.length).epsilon(1e-9));
    CHECK(o.h1_class.size() == 4);
  }
  // The relator is trivial on homology, so its holonomy is 1.
  HolonomyCharacter chi{{0.4, -1.1, 0.7, 2.0}};
  auto rel = group::exponent_sums(a, group::bolza_relator());
  CHECK(std::abs(chi.eval(rel) - 1.0) < 1e-15);
}
