#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "anosov/group.hpp"

using namespace anosov;
using namespace anosov::group;

namespace {
double displacement(const Isometry& g) { return std::acosh(std::max(1.0, g.m(0, 0))); }
}  // namespace

TEST_CASE("reduced words of the free group on four letters") {
  auto a = Alphabet::from_generators(bolza_generators());
  CHECK(a.rank == 4);
  auto words = reduced_words(a, 4);
  std::map<std::size_t, long> by_length;
  for (const auto& w : words) {
    ++by_length[w.size()];
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] != a.inverse(w[i - 1]));
  }
  long expect = 8;
  for (std::size_t n = 1; n <= 4; ++n, expect *= 7) CHECK(by_length[n] == expect);
}

TEST_CASE("word helpers") {
  auto a = Alphabet::from_generators(bolza_generators());
  auto w = parse_word(a, "aBcD");
  CHECK(word_string(a, w) == "aBcD");
  CHECK(cyclic_reduce(a, parse_word(a, "AaBcDd")) == parse_word(a, "Bc"));
  CHECK(cyclic_reduce(a, parse_word(a, "abA")) == parse_word(a, "b"));
  CHECK(word_string(a, least_rotation(parse_word(a, "cab"))) == "abc");
  auto e = exponent_sums(a, parse_word(a, "aaBcA"));
  CHECK(e == std::vector<long>{1, -1, 1, 0});
  CHECK(word_string(a, bolza_relator()) == "aBcDAbCd");
  auto g = evaluate(a, parse_word(a, "aA"));
  CHECK((g.m - lorentz::Mat3::Identity()).norm() < 1e-12);
}

TEST_CASE("Dirichlet octagon") {
  auto a = Alphabet::from_generators(bolza_generators());
  auto p = dirichlet_polygon(a);
  CHECK(p.compact);
  CHECK(p.all_letters_are_sides);
  CHECK(p.vertices.size() == 8);
  CHECK(p.area == doctest::Approx(4.0 * lorentz::kPi).epsilon(1e-10));
  // Side pairings translate across opposite sides.
  CHECK(2.0 * p.inradius == doctest::Approx(bolza_systole()).epsilon(1e-10));
  CHECK(p.contains(lorentz::Vec3(1, 0, 0)));
  CHECK(bolza_systole() == doctest::Approx(2.0 * std::acosh(1.0 + std::sqrt(2.0))));
}

TEST_CASE("ball enumeration is closed and deterministic") {
  auto a = Alphabet::from_generators(bolza_generators());
  auto p = dirichlet_polygon(a);
  const double R = 4.5;
  Ball b1 = enumerate_ball(a, R, p.circumradius, {1});
  Ball b2 = enumerate_ball(a, R, p.circumradius, {2});
  CHECK(b1.complete);
  CHECK(b1.exact);
  REQUIRE(b1.elements.size() == b2.elements.size());
  for (std::size_t i = 0; i < b1.elements.size(); ++i) {
    CHECK(b1.word(i) == b2.word(i));
    CHECK((b1.elements[i].g.m - b2.elements[i].g.m).norm() == 0.0);
  }
  // Closure: every one-letter neighbour strictly inside the radius is present.
  auto key = [](const Isometry& g) {
    return std::make_tuple(std::llround(g.m(0, 0) * 1e6), std::llround(g.m(1, 0) * 1e6), std::llround(g.m(2, 0) * 1e6),
                           std::llround(g.m(0, 1) * 1e6));
  };
  std::set<decltype(key(Isometry{}))> keys;
  for (const auto& e : b1.elements) {
    CHECK(displacement(e.g) <= b1.prune + 1e-9);
    keys.insert(key(e.g));
  }
  CHECK(keys.size() == b1.elements.size());
  std::size_t inside = 0;
  for (const auto& e : b1.elements) inside += displacement(e.g) <= R ? 1 : 0;
  // Independent count from every reduced word of length <= 5.
  std::set<decltype(key(Isometry{}))> brute;
  for (const auto& w : reduced_words(a, 5)) {
    auto g = evaluate(a, w);
    if (displacement(g) <= R) brute.insert(key(g));
  }
  CHECK(inside == brute.size());
  for (const auto& e : b1.elements)
    for (const auto& l : a.letters) {
      Isometry h = e.g * l;
      if (displacement(e.g) < R && displacement(h) < R - 1e-6) CHECK(keys.count(key(h)) == 1);
    }
}
