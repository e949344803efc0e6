#include "anosov/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "anosov/parallel.hpp"

namespace anosov::group {

using exact::Int;
using exact::Mat3Z2t;
using exact::Z2;
using exact::Z2t;
using lorentz::Mat3;
using lorentz::Vec2;
using lorentz::Vec3;

Alphabet Alphabet::from_generators(const std::vector<Isometry>& gens) {
  if (gens.empty()) throw std::invalid_argument("alphabet needs at least one generator");
  if (gens.size() > 26) throw std::invalid_argument("at most 26 generators are supported");
  Alphabet a;
  a.rank = gens.size();
  for (const auto& g : gens) {
    g.validate(1e-8);
    a.letters.push_back(g);
  }
  for (const auto& g : gens) a.letters.push_back(g.inverse());
  return a;
}

bool Alphabet::exact() const {
  return std::all_of(letters.begin(), letters.end(), [](const Isometry& g) { return g.exact.has_value(); });
}

char Alphabet::symbol(int letter) const {
  int r = static_cast<int>(rank);
  return letter < r ? static_cast<char>('a' + letter) : static_cast<char>('A' + letter - r);
}

int Alphabet::letter_of(char c) const {
  int r = static_cast<int>(rank);
  if (c >= 'a' && c < 'a' + r) return c - 'a';
  if (c >= 'A' && c < 'A' + r) return r + (c - 'A');
  throw std::invalid_argument(std::string("letter outside the alphabet: ") + c);
}

std::string word_string(const Alphabet& a, const std::vector<int>& w) {
  std::string s;
  for (int l : w) s.push_back(a.symbol(l));
  return s.empty() ? "1" : s;
}

std::vector<int> parse_word(const Alphabet& a, const std::string& s) {
  std::vector<int> w;
  if (s == "1") return w;
  for (char c : s) w.push_back(a.letter_of(c));
  return w;
}

Isometry evaluate(const Alphabet& a, const std::vector<int>& w) {
  Isometry g;
  if (a.exact()) g.exact = Mat3Z2t::identity();
  for (int l : w) g = g * a.letters.at(static_cast<std::size_t>(l));
  return g;
}

std::vector<int> cyclic_reduce(const Alphabet& a, std::vector<int> w) {
  std::vector<int> st;
  for (int l : w) {
    if (!st.empty() && st.back() == a.inverse(l))
      st.pop_back();
    else
      st.push_back(l);
  }
  std::size_t b = 0, e = st.size();
  while (e - b >= 2 && st[b] == a.inverse(st[e - 1])) {
    ++b;
    --e;
  }
  return {st.begin() + static_cast<std::ptrdiff_t>(b), st.begin() + static_cast<std::ptrdiff_t>(e)};
}

std::vector<int> least_rotation(std::vector<int> w) {
  std::vector<int> best = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    std::rotate(w.begin(), w.begin() + 1, w.end());
    if (w < best) best = w;
  }
  return best;
}

std::vector<long> exponent_sums(const Alphabet& a, const std::vector<int>& w) {
  std::vector<long> h(a.rank, 0);
  for (int l : w) {
    if (l < static_cast<int>(a.rank))
      ++h[static_cast<std::size_t>(l)];
    else
      --h[static_cast<std::size_t>(l) - a.rank];
  }
  return h;
}

std::vector<Isometry> bolza_generators() {
  const Z2t C(Z2(Int(5), Int(4)));
  const Z2t one(1);
  const Z2t zero(0);
  // S = 2(1 + sqrt 2) t, S / sqrt 2 = (2 + sqrt 2) t.
  const Z2t S(Z2(0), Z2(Int(2), Int(2)));
  const Z2t Sd(Z2(0), Z2(Int(2), Int(1)));
  const Z2t P(Z2(Int(3), Int(2)));  // 1 + (C - 1)/2
  const Z2t Q(Z2(Int(2), Int(2)));  // (C - 1)/2
  auto make = [](std::array<Z2t, 9> e) {
    Mat3Z2t m;
    m.e = e;
    return Isometry(m);
  };
  std::vector<Isometry> g;
  g.push_back(make({C, S, zero, S, C, zero, zero, zero, one}));
  g.push_back(make({C, Sd, Sd, Sd, P, Q, Sd, Q, P}));
  g.push_back(make({C, zero, S, zero, one, zero, S, zero, C}));
  g.push_back(make({C, -Sd, Sd, -Sd, P, -Q, Sd, -Q, P}));
  return g;
}

std::vector<int> bolza_relator() { return {0, 5, 2, 7, 4, 1, 6, 3}; }

double bolza_systole() { return 2.0 * std::acosh(1.0 + std::sqrt(2.0)); }

namespace {

struct HalfPlane {
  Vec2 n;    // n . k <= c in Klein coordinates
  double c;
  int letter;
};

double eval(const HalfPlane& h, const Vec2& p) { return h.n.dot(p) - h.c; }

Vec3 klein_to_hyperboloid(const Vec2& k) {
  double w = 1.0 / std::sqrt(1.0 - k.squaredNorm());
  return {w, w * k[0], w * k[1]};
}

double vertex_angle(const Vec3& v, const Vec3& u, const Vec3& w) {
  Vec3 tu = u - lorentz::minkowski(u, v) * v;
  Vec3 tw = w - lorentz::minkowski(w, v) * v;
  double g = -lorentz::minkowski(tu, tw);
  double nu = -lorentz::minkowski(tu, tu), nw = -lorentz::minkowski(tw, tw);
  return std::acos(std::clamp(g / std::sqrt(nu * nw), -1.0, 1.0));
}

std::vector<HalfPlane> half_planes(const Alphabet& a) {
  std::vector<HalfPlane> hp;
  for (std::size_t l = 0; l < a.letters.size(); ++l) {
    Vec3 q = a.letters[l].m.col(0);
    if (q[0] - 1.0 < 1e-12) continue;  // fixes the origin
    hp.push_back({Vec2(q[1], q[2]), q[0] - 1.0, static_cast<int>(l)});
  }
  return hp;
}

}  // namespace

bool DirichletPolygon::contains(const Vec3& x, double tol) const {
  Vec2 k(x[1] / x[0], x[2] / x[0]);
  std::size_t n = vertices.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = vertices[i];
    const Vec2& q = vertices[(i + 1) % n];
    double cross = (q[0] - p[0]) * (k[1] - p[1]) - (q[1] - p[1]) * (k[0] - p[0]);
    if (cross < -tol) return false;
  }
  return true;
}

DirichletPolygon dirichlet_polygon(const Alphabet& a) {
  struct V {
    Vec2 p;
    int label;
  };
  std::vector<V> poly{{{-2, -2}, -1}, {{2, -2}, -1}, {{2, 2}, -1}, {{-2, 2}, -1}};
  for (const HalfPlane& h : half_planes(a)) {
    std::vector<V> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const V& P = poly[i];
      const V& Q = poly[(i + 1) % poly.size()];
      double fp = eval(h, P.p), fq = eval(h, Q.p);
      bool inP = fp <= 0.0, inQ = fq <= 0.0;
      if (inP) out.push_back(P);
      if (inP != inQ) {
        Vec2 I = P.p + (Q.p - P.p) * (fp / (fp - fq));
        out.push_back({I, inP ? h.letter : P.label});
      }
    }
    poly = out;
    if (poly.empty()) break;
  }
  DirichletPolygon d;
  // Drop degenerate (zero length) edges.
  std::vector<V> clean;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const V& P = poly[i];
    const V& Q = poly[(i + 1) % poly.size()];
    if ((Q.p - P.p).norm() > 1e-12) clean.push_back(P);
  }
  d.compact = clean.size() >= 3;
  for (const V& v : clean) {
    d.vertices.push_back(v.p);
    d.side_letter.push_back(v.label);
    if (v.label < 0 || v.p.norm() >= 1.0 - 1e-12) d.compact = false;
  }
  std::vector<bool> seen(a.letters.size(), false);
  for (int l : d.side_letter)
    if (l >= 0) seen[static_cast<std::size_t>(l)] = true;
  d.all_letters_are_sides = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  d.inradius = INFINITY;
  for (const auto& g : a.letters) d.inradius = std::min(d.inradius, 0.5 * std::acosh(std::max(1.0, g.m(0, 0))));
  if (d.compact) {
    std::size_t n = d.vertices.size();
    double angle_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Vec3 v = klein_to_hyperboloid(d.vertices[i]);
      d.circumradius = std::max(d.circumradius, std::acosh(std::max(1.0, v[0])));
      angle_sum += vertex_angle(v, klein_to_hyperboloid(d.vertices[(i + n - 1) % n]),
                                klein_to_hyperboloid(d.vertices[(i + 1) % n]));
    }
    d.area = (static_cast<double>(n) - 2.0) * lorentz::kPi - angle_sum;
  } else {
    d.circumradius = INFINITY;
  }
  return d;
}

std::vector<int> Ball::word(std::size_t i) const {
  std::vector<int> w;
  for (auto k = static_cast<std::int32_t>(i); k > 0; k = elements[static_cast<std::size_t>(k)].parent)
    w.push_back(elements[static_cast<std::size_t>(k)].letter);
  std::reverse(w.begin(), w.end());
  return w;
}

namespace {

// Float-only deduplication key: entries rounded on a grid relative to m00.
struct FloatKey {
  std::array<long long, 9> v;
  bool operator==(const FloatKey& o) const { return v == o.v; }
};
struct FloatKeyHash {
  std::size_t operator()(const FloatKey& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (long long x : k.v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};
FloatKey float_key(const Mat3& m) {
  FloatKey k;
  double q = 1e-7 * std::max(1.0, m(0, 0));
  for (int i = 0; i < 9; ++i) k.v[static_cast<std::size_t>(i)] = std::llround(m(i / 3, i % 3) / q);
  return k;
}

struct Candidate {
  std::int32_t parent;
  std::int16_t letter;
  Isometry g;
};

}  // namespace

Ball enumerate_ball(const Alphabet& a, double radius, double slack, const EnumOptions& opt) {
  Ball b;
  b.alphabet = a;
  b.radius = radius;
  b.prune = radius + slack;
  b.exact = a.exact();
  const double prune_cosh = std::cosh(b.prune) * (1.0 + 1e-9) + 1e-9;

  std::unordered_map<Mat3Z2t, std::int32_t, exact::Mat3Hash> seen_exact;
  std::unordered_map<FloatKey, std::int32_t, FloatKeyHash> seen_float;
  auto lookup_insert = [&](const Isometry& g, std::int32_t idx) -> bool {
    if (b.exact) return seen_exact.emplace(*g.exact, idx).second;
    return seen_float.emplace(float_key(g.m), idx).second;
  };

  Element id;
  if (b.exact) id.g.exact = Mat3Z2t::identity();
  b.elements.push_back(id);
  lookup_insert(id.g, 0);

  const int jobs = resolve_jobs(opt.jobs);
  std::size_t level_begin = 0, level_end = 1;
  std::int16_t depth = 0;
  while (level_begin < level_end) {
    std::size_t n = level_end - level_begin;
    std::size_t chunks = std::min<std::size_t>(n, static_cast<std::size_t>(jobs) * 4);
    std::vector<std::vector<Candidate>> parts(chunks);
    parallel_chunks(n, jobs, chunks, [&](std::size_t lo, std::size_t hi, std::size_t c) {
      auto& out = parts[c];
      for (std::size_t i = level_begin + lo; i < level_begin + hi; ++i) {
        const Element& e = b.elements[i];
        for (std::size_t l = 0; l < a.letters.size(); ++l) {
          if (e.letter >= 0 && static_cast<int>(l) == a.inverse(e.letter)) continue;
          const Isometry& s = a.letters[l];
          double m00 = e.g.m.row(0).dot(s.m.col(0));
          if (m00 > prune_cosh) continue;
          Candidate cand{static_cast<std::int32_t>(i), static_cast<std::int16_t>(l), {}};
          if (b.exact) {
            cand.g = Isometry(*e.g.exact * *s.exact);
          } else {
            cand.g.m = e.g.m * s.m;
          }
          out.push_back(std::move(cand));
        }
      }
    });
    ++depth;
    for (auto& part : parts)
      for (auto& cand : part) {
        if (b.elements.size() >= opt.max_elements) {
          b.complete = false;
          break;
        }
        auto idx = static_cast<std::int32_t>(b.elements.size());
        if (!lookup_insert(cand.g, idx)) continue;
        Element e;
        e.g = std::move(cand.g);
        e.parent = cand.parent;
        e.letter = cand.letter;
        e.depth = depth;
        b.elements.push_back(std::move(e));
      }
    if (!b.complete) break;
    level_begin = level_end;
    level_end = b.elements.size();
  }
  return b;
}

std::vector<std::vector<int>> reduced_words(const Alphabet& a, int max_length) {
  std::vector<std::vector<int>> out{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t l = 0; l < a.letters.size(); ++l) {
        const auto& w = out[i];
        if (!w.empty() && static_cast<int>(l) == a.inverse(w.back())) continue;
        auto nw = w;
        nw.push_back(static_cast<int>(l));
        out.push_back(std::move(nw));
      }
    begin = end;
  }
  return out;
}

}  // namespace anosov::group
