#include "anosov/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace anosov::orbits {

using group::Alphabet;
using group::Ball;
using lorentz::Isometry;

int ClosedOrbit::multiplicity() const {
  return static_cast<int>(std::llround(length / primitive_length));
}

std::size_t OrbitCatalog::count_up_to(double L) const {
  return static_cast<std::size_t>(std::count_if(orbits.begin(), orbits.end(), [&](const ClosedOrbit& o) { return o.length <= L; }));
}

std::array<long, 4> OrbitCatalog::catmap_matrix() const {
  if (!is_catmap()) throw CatalogError("catalog source is not a cat map: " + source);
  std::array<long, 4> A{};
  std::string body = source.substr(7);
  std::stringstream ss(body);
  std::string tok;
  for (int i = 0; i < 4; ++i) {
    if (!std::getline(ss, tok, ',')) throw CatalogError("malformed cat map source: " + source);
    A[static_cast<std::size_t>(i)] = std::stol(tok);
  }
  return A;
}

std::complex<double> HolonomyCharacter::eval(const std::vector<long>& h1) const {
  if (h1.size() != angles.size())
    throw std::invalid_argument("holonomy: character rank " + std::to_string(angles.size()) + " does not match class rank " +
                                std::to_string(h1.size()));
  double phase = 0.0;
  for (std::size_t i = 0; i < h1.size(); ++i) phase += angles[i] * static_cast<double>(h1[i]);
  return std::polar(1.0, phase);
}

std::complex<double> holonomy(const ClosedOrbit& orbit, const HolonomyCharacter& chi) { return chi.eval(orbit.h1_class); }

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

bool is_identity(const Isometry& g) {
  if (g.exact) return *g.exact == exact::Mat3Z2t::identity();
  return (g.m - lorentz::Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-9;
}

// Negative when x has smaller displacement than y; exact when possible.
int compare_displacement(const Isometry& x, const Isometry& y) {
  if (x.exact && y.exact) {
    int c = exact::compare((*x.exact)(0, 0), (*y.exact)(0, 0));
    if (c != 0) return c;
    return x.exact->lex_compare(*y.exact);
  }
  double dx = x.m(0, 0), dy = y.m(0, 0);
  if (std::abs(dx - dy) > 1e-9 * std::max(1.0, dx)) return dx < dy ? -1 : 1;
  for (int k = 0; k < 9; ++k) {
    double a = x.m(k / 3, k % 3), b = y.m(k / 3, k % 3);
    if (std::abs(a - b) > 1e-9 * std::max(1.0, dx)) return a < b ? -1 : 1;
  }
  return 0;
}

double spin_length(double trace) {
  // tr_2^2 = trace + 1, length = 2 arccosh(|tr_2| / 2).
  return 2.0 * std::acosh(std::sqrt(trace + 1.0) / 2.0);
}

}  // namespace

OrbitCatalog fuchsian_orbits(const std::vector<Isometry>& generators, double cutoff, const FuchsianOptions& opt,
                             FuchsianReport* report) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw std::invalid_argument("fuchsian_orbits: cutoff must be positive");
  Alphabet a = Alphabet::from_generators(generators);

  for (const auto& w : group::reduced_words(a, 4)) {
    if (w.empty()) continue;
    Isometry g = group::evaluate(a, w);
    if (is_identity(g)) continue;
    double tr2 = std::sqrt(std::max(0.0, g.trace() + 1.0));
    if (tr2 < 2.0 - 1e-9)
      throw std::invalid_argument("fuchsian_orbits: elliptic element " + group::word_string(a, w) + " (group not discrete or not torsion free)");
  }

  group::DirichletPolygon poly = group::dirichlet_polygon(a);
  const bool certified = a.exact() && poly.compact && poly.all_letters_are_sides;
  const double rc = poly.compact ? poly.circumradius : opt.slack;
  const double margin = 0.01;
  const double cosh_L = std::cosh(cutoff);
  const double cosh_far = std::cosh(2.0 * rc + margin);
  const double cosh_rho = 1.0 + cosh_far * cosh_far * (cosh_L - 1.0);
  const double rho = std::acosh(cosh_rho);

  OrbitCatalog cat;
  cat.source = "fuchsian:" + opt.name;
  cat.cutoff = cutoff;

  Ball ball = group::enumerate_ball(a, rho, poly.compact ? rc : opt.slack, {opt.jobs, opt.max_elements});
  cat.complete = certified && ball.complete;
  if (!certified)
    cat.diagnostics.push_back(a.exact() ? "generators are not the side pairings of a compact Dirichlet polygon; completeness is heuristic"
                                        : "no exact arithmetic for these generators; completeness is heuristic");
  if (!ball.complete) cat.diagnostics.push_back("element budget exhausted; raise max_elements or lower the cutoff");

  // Short hyperbolic elements whose axis passes within 2 rc + margin of o.
  struct Cand {
    std::size_t elem;
    double length, delta;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    const Isometry& g = ball.elements[i].g;
    double m00 = g.m(0, 0);
    if (m00 > cosh_rho * (1.0 + 1e-12)) continue;
    double tr = g.exact ? g.exact->trace().to_double() : g.trace();
    if (tr <= 3.0 + 1e-12) continue;
    double len = spin_length(tr);
    if (len > cutoff + 1e-9) continue;
    double ch2 = (m00 - 1.0) / (std::cosh(len) - 1.0);
    double delta = std::acosh(std::sqrt(std::max(1.0, ch2)));
    if (delta > 2.0 * rc + margin) continue;
    cands.push_back({i, len, delta});
  }

  std::unordered_map<exact::Mat3Z2t, std::size_t, exact::Mat3Hash> index_exact;
  std::map<std::array<long long, 9>, std::size_t> index_float;
  auto key_float = [](const lorentz::Mat3& m) {
    std::array<long long, 9> k{};
    double q = 1e-7 * std::max(1.0, m(0, 0));
    for (int i = 0; i < 9; ++i) k[static_cast<std::size_t>(i)] = std::llround(m(i / 3, i % 3) / q);
    return k;
  };
  for (std::size_t c = 0; c < cands.size(); ++c) {
    const Isometry& g = ball.elements[cands[c].elem].g;
    if (ball.exact)
      index_exact.emplace(*g.exact, c);
    else
      index_float.emplace(key_float(g.m), c);
  }
  auto find = [&](const Isometry& g) -> long {
    if (ball.exact) {
      auto it = index_exact.find(*g.exact);
      return it == index_exact.end() ? -1 : static_cast<long>(it->second);
    }
    auto it = index_float.find(key_float(g.m));
    return it == index_float.end() ? -1 : static_cast<long>(it->second);
  };

  DisjointSets ds(cands.size());
  for (std::size_t c = 0; c < cands.size(); ++c) {
    const Isometry& g = ball.elements[cands[c].elem].g;
    for (std::size_t l = 0; l < a.rank; ++l) {
      const Isometry& s = a.letters[l];
      Isometry conj = a.letters[static_cast<std::size_t>(a.inverse(static_cast<int>(l)))] * g * s;
      long j = find(conj);
      if (j >= 0) ds.unite(c, static_cast<std::size_t>(j));
    }
  }

  struct Cls {
    std::size_t rep;  // candidate index
    double min_delta = INFINITY;
  };
  std::map<std::size_t, Cls> comps;
  for (std::size_t c = 0; c < cands.size(); ++c) {
    std::size_t r = ds.find(c);
    auto it = comps.find(r);
    if (it == comps.end()) {
      comps.emplace(r, Cls{c, cands[c].delta});
      continue;
    }
    Cls& k = it->second;
    k.min_delta = std::min(k.min_delta, cands[c].delta);
    if (compare_displacement(ball.elements[cands[c].elem].g, ball.elements[cands[k.rep].elem].g) < 0) k.rep = c;
  }

  std::vector<std::pair<std::size_t, Cls>> classes;
  for (auto& [root, k] : comps)
    if (k.min_delta <= rc + 1e-6) classes.emplace_back(root, k);

  double shortest = INFINITY;
  for (auto& [root, k] : classes) shortest = std::min(shortest, cands[k.rep].length);

  for (auto& [root, k] : classes) {
    const Cand& cd = cands[k.rep];
    bool primitive = true;
    for (auto& [root2, k2] : classes) {
      if (root2 == root) continue;
      double l2 = cands[k2.rep].length;
      double ratio = cd.length / l2;
      long m = std::lround(ratio);
      if (m < 2 || std::abs(ratio - static_cast<double>(m)) > 1e-7) continue;
      Isometry p = ball.elements[cands[k2.rep].elem].g;
      Isometry pw = p;
      for (long e = 1; e < m; ++e) pw = pw * p;
      long j = find(pw);
      if (j >= 0 && ds.find(static_cast<std::size_t>(j)) == root) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    std::vector<int> w = ball.word(cd.elem);
    ClosedOrbit o;
    o.length = cd.length;
    o.primitive_length = cd.length;
    o.expansion = std::exp(cd.length);
    o.word = group::word_string(a, group::least_rotation(group::cyclic_reduce(a, w)));
    o.h1_class = group::exponent_sums(a, w);
    cat.orbits.push_back(std::move(o));
  }
  std::sort(cat.orbits.begin(), cat.orbits.end(), [](const ClosedOrbit& x, const ClosedOrbit& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.word < y.word;
  });
  if (std::isfinite(shortest)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", shortest);
    cat.header_extra.push_back(std::string("systole=") + buf);
  }
  if (report) {
    report->circumradius = rc;
    report->ball_radius = rho;
    report->elements = ball.elements.size();
    report->candidates = cands.size();
    report->classes = cat.orbits.size();
    report->certified = cat.complete;
  }
  return cat;
}

int mobius(int n) {
  if (n < 1) throw std::invalid_argument("mobius: n < 1");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

namespace {

void check_catmap(const IMat2& A) {
  __int128 det = static_cast<__int128>(A[0]) * A[3] - static_cast<__int128>(A[1]) * A[2];
  if (det != 1) throw std::invalid_argument("cat map must have determinant 1");
  long tr = A[0] + A[3];
  if (tr >= -2 && tr <= 2) throw std::invalid_argument("cat map is not hyperbolic (|trace| <= 2)");
  if (tr < -2) throw std::invalid_argument("cat map with trace < -2 has a non-orientable stable bundle; unsupported");
}

}  // namespace

long long catmap_trace_power(const IMat2& A, int n) {
  if (n < 0) throw std::invalid_argument("negative power");
  __int128 tr = A[0] + A[3];
  __int128 prev = 2, cur = tr;
  if (n == 0) return 2;
  for (int k = 2; k <= n; ++k) {
    __int128 next = tr * cur - prev;
    prev = cur;
    cur = next;
    if (cur > (static_cast<__int128>(1) << 62) || cur < -(static_cast<__int128>(1) << 62))
      throw exact::OverflowError("cat map trace power overflows 64 bits");
  }
  return static_cast<long long>(cur);
}

long long catmap_fixed_points(const IMat2& A, int n) {
  long long t = catmap_trace_power(A, n);
  return t >= 2 ? t - 2 : 2 - t;
}

long long catmap_primitive_count(const IMat2& A, int n) {
  long long s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) s += mobius(n / d) * catmap_fixed_points(A, d);
  if (s % n != 0) throw std::logic_error("primitive orbit count is not an integer");
  return s / n;
}

OrbitCatalog catmap_orbits(const IMat2& A, int max_period) {
  check_catmap(A);
  if (max_period < 1) throw std::invalid_argument("catmap_orbits: max_period must be >= 1");
  OrbitCatalog cat;
  cat.source = "catmap:" + std::to_string(A[0]) + "," + std::to_string(A[1]) + "," + std::to_string(A[2]) + "," + std::to_string(A[3]);
  cat.cutoff = max_period;
  cat.complete = true;
  double tr = static_cast<double>(A[0] + A[3]);
  double lambda = 0.5 * (tr + std::sqrt(tr * tr - 4.0));
  for (int n = 1; n <= max_period; ++n) {
    long long p = catmap_primitive_count(A, n);
    double expn = std::pow(lambda, n);
    for (long long i = 0; i < p; ++i) {
      ClosedOrbit o;
      o.length = n;
      o.primitive_length = n;
      o.expansion = expn;
      o.word = std::to_string(n) + "." + std::to_string(i);
      o.h1_class = {n};
      cat.orbits.push_back(std::move(o));
    }
  }
  return cat;
}

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_catalog(std::ostream& os, const OrbitCatalog& c) {
  os << "# " << kFormatVersion << " source=" << c.source << " cutoff=" << fmt17(c.cutoff)
     << " complete=" << (c.complete ? "true" : "false") << " count=" << c.orbits.size() << "\n";
  for (const auto& h : c.header_extra) os << "# " << h << "\n";
  for (const auto& d : c.diagnostics) os << "# diagnostic: " << d << "\n";
  for (const auto& o : c.orbits) {
    os << fmt17(o.length) << '\t' << fmt17(o.primitive_length) << '\t' << fmt17(o.expansion) << '\t' << o.word << '\t';
    if (o.h1_class.empty()) os << '-';
    for (std::size_t i = 0; i < o.h1_class.size(); ++i) os << (i ? "," : "") << o.h1_class[i];
    os << '\n';
  }
}

OrbitCatalog read_catalog(std::istream& is) {
  OrbitCatalog c;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw CatalogError("missing catalog header");
  std::stringstream hs(line.substr(2));
  std::string tok;
  hs >> tok;
  if (tok != kFormatVersion) throw CatalogError("unsupported catalog format: " + tok);
  bool have_source = false;
  while (hs >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
    if (k == "source") {
      c.source = v;
      have_source = true;
    } else if (k == "cutoff") {
      c.cutoff = std::stod(v);
    } else if (k == "complete") {
      c.complete = v == "true";
    }
  }
  if (!have_source) throw CatalogError("catalog header lacks source");
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.size() > 2 ? line.substr(2) : "";
      if (body.rfind("diagnostic: ", 0) == 0)
        c.diagnostics.push_back(body.substr(12));
      else
        c.header_extra.push_back(body);
      continue;
    }
    std::stringstream ls(line);
    std::string f[5];
    for (auto& x : f)
      if (!std::getline(ls, x, '\t')) throw CatalogError("catalog line " + std::to_string(lineno) + ": expected 5 fields");
    ClosedOrbit o;
    try {
      o.length = std::stod(f[0]);
      o.primitive_length = std::stod(f[1]);
      o.expansion = std::stod(f[2]);
    } catch (const std::exception&) {
      throw CatalogError("catalog line " + std::to_string(lineno) + ": bad number");
    }
    o.word = f[3];
    if (f[4] != "-") {
      std::stringstream hs2(f[4]);
      std::string n;
      while (std::getline(hs2, n, ',')) o.h1_class.push_back(std::stol(n));
    }
    if (!(o.primitive_length > 0.0) || !(o.expansion > 1.0) || o.length < o.primitive_length * (1 - 1e-12))
      throw CatalogError("catalog line " + std::to_string(lineno) + ": orbit invariants violated");
    c.orbits.push_back(std::move(o));
  }
  return c;
}

void save_catalog(const std::string& path, const OrbitCatalog& c) {
  std::ofstream os(path);
  if (!os) throw CatalogError("cannot write " + path);
  write_catalog(os, c);
}

OrbitCatalog load_catalog(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CatalogError("cannot read " + path);
  return read_catalog(is);
}

}  // namespace anosov::orbits
