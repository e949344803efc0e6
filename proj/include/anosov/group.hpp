#pragma once
// Finitely generated Fuchsian groups: the Bolza generators, Dirichlet polygons
// and breadth-first enumeration of group elements by displacement of the origin.

#include <cstdint>
#include <string>
#include <vector>

#include "anosov/lorentz.hpp"

namespace anosov::group {

using lorentz::Isometry;

// Generators followed by their inverses. Letter i < n is generator i, letter
// n + i its inverse. Printed as 'a'.. for generators and 'A'.. for inverses.
struct Alphabet {
  std::vector<Isometry> letters;
  std::size_t rank = 0;  // number of generators

  static Alphabet from_generators(const std::vector<Isometry>& gens);
  int inverse(int letter) const {
    return letter < static_cast<int>(rank) ? letter + static_cast<int>(rank) : letter - static_cast<int>(rank);
  }
  bool exact() const;
  char symbol(int letter) const;
  int letter_of(char c) const;
};

// Word helpers over letter indices.
std::string word_string(const Alphabet& a, const std::vector<int>& w);
std::vector<int> parse_word(const Alphabet& a, const std::string& s);
Isometry evaluate(const Alphabet& a, const std::vector<int>& w);
// Removes cancelling neighbours and cancelling ends.
std::vector<int> cyclic_reduce(const Alphabet& a, std::vector<int> w);
// Lexicographically least rotation by letter index.
std::vector<int> least_rotation(std::vector<int> w);
// Exponent-sum vector of length rank.
std::vector<long> exponent_sums(const Alphabet& a, const std::vector<int>& w);

// Side pairings of the genus-2 octagon, entries in Z[sqrt 2][t] with
// t^2 = 2 + 2 sqrt 2. Generator k is the boost of length 2 arccosh(1 + sqrt 2)
// toward angle k pi / 4.
std::vector<Isometry> bolza_generators();
// Indices into the alphabet of bolza_generators(): a B c D A b C d.
std::vector<int> bolza_relator();
double bolza_systole();  // 2 arccosh(1 + sqrt 2)

// Dirichlet polygon at the origin cut out by the bisectors of o and h o over
// all letters h.
struct DirichletPolygon {
  std::vector<lorentz::Vec2> vertices;  // Klein model, counterclockwise
  std::vector<int> side_letter;         // letter whose bisector carries each side
  bool compact = false;
  bool all_letters_are_sides = false;
  double circumradius = 0.0;
  double inradius = 0.0;
  double area = 0.0;  // hyperbolic, from Gauss-Bonnet

  bool contains(const lorentz::Vec3& x, double tol = 1e-12) const;
};

DirichletPolygon dirichlet_polygon(const Alphabet& a);

struct Element {
  Isometry g;
  std::int32_t parent = -1;  // index of the prefix, -1 for the identity
  std::int16_t letter = -1;  // last letter
  std::int16_t depth = 0;
};

struct EnumOptions {
  int jobs = 1;
  std::size_t max_elements = 3'000'000;
};

struct Ball {
  Alphabet alphabet;
  std::vector<Element> elements;  // shortlex order of the first word reaching each element
  double radius = 0.0;            // every element with displacement <= radius is present (when complete)
  double prune = 0.0;             // prefixes kept while displacement <= prune
  bool complete = true;           // false when the element budget ran out
  bool exact = false;             // deduplicated by exact matrices

  std::vector<int> word(std::size_t i) const;
};

// All elements g with cosh d(o, g o) <= cosh(radius), reached through prefixes
// with displacement <= radius + slack. When the letters are the side pairings
// of the Dirichlet polygon, slack = circumradius makes the search exhaustive.
Ball enumerate_ball(const Alphabet& a, double radius, double slack, const EnumOptions& opt = {});

// Every reduced word up to the given length; used for sanity checks.
std::vector<std::vector<int>> reduced_words(const Alphabet& a, int max_length);

}  // namespace anosov::group
