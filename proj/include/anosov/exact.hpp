#pragma once
// Exact arithmetic in towers of real quadratic extensions over the integers.
//
// QuadExt<B, D> represents a + b*r with a, b in B and r the positive square
// root of D::value() (an element of B that must be positive). Coefficients at
// the bottom are int64 with overflow-checked 128-bit intermediates.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace anosov::exact {

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

inline std::int64_t narrow(__int128 v) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw OverflowError("exact coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

// Integer base ring with the same interface as QuadExt.
struct Int {
  std::int64_t v = 0;

  constexpr Int() = default;
  constexpr Int(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)

  friend Int operator+(Int a, Int b) { return Int(narrow(static_cast<__int128>(a.v) + b.v)); }
  friend Int operator-(Int a, Int b) { return Int(narrow(static_cast<__int128>(a.v) - b.v)); }
  friend Int operator*(Int a, Int b) { return Int(narrow(static_cast<__int128>(a.v) * b.v)); }
  Int operator-() const { return Int(narrow(-static_cast<__int128>(v))); }
  Int& operator+=(Int o) { return *this = *this + o; }
  Int& operator-=(Int o) { return *this = *this - o; }
  friend bool operator==(Int a, Int b) { return a.v == b.v; }
  friend bool operator!=(Int a, Int b) { return a.v != b.v; }

  int sign() const { return (v > 0) - (v < 0); }
  bool is_zero() const { return v == 0; }
  double to_double() const { return static_cast<double>(v); }
  // Lexicographic total order on coefficients (not the real order).
  int lex_compare(Int o) const { return (v > o.v) - (v < o.v); }
  std::size_t hash() const { return std::hash<std::int64_t>{}(v); }
  std::string str() const { return std::to_string(v); }
  // Coefficient count at this level, used for flattening.
  static constexpr int kWidth = 1;
  void flatten(std::int64_t* out) const { out[0] = v; }
};

// Sign of a^2 - b^2 * d computed without overflow when B is Int.
template <class B>
int sign_of_norm_form(const B& a, const B& b, const B& d) {
  return (a * a - b * b * d).sign();
}

template <>
inline int sign_of_norm_form<Int>(const Int& a, const Int& b, const Int& d) {
  __int128 aa = static_cast<__int128>(a.v) * a.v;
  __int128 bb = static_cast<__int128>(b.v) * b.v;
  // bb * d may overflow 128 bits only for |b| near 2^63 with large d.
  if (d.v != 0 && bb > (static_cast<__int128>(1) << 120) / (d.v < 0 ? -d.v : d.v))
    throw OverflowError("norm form exceeds 128 bits");
  __int128 r = aa - bb * d.v;
  return (r > 0) - (r < 0);
}

template <class B, class D>
struct QuadExt {
  B a{}, b{};

  QuadExt() = default;
  QuadExt(B x) : a(x) {}  // NOLINT(google-explicit-constructor)
  QuadExt(std::int64_t x) : a(B(x)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(B x, B y) : a(x), b(y) {}

  static B d() { return D::value(); }
  static double root() { return std::sqrt(d().to_double()); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b}; }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b}; }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    return {x.a * y.a + x.b * y.b * d(), x.a * y.b + x.b * y.a};
  }
  QuadExt operator-() const { return {-a, -b}; }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  // Galois conjugate a - b*r.
  QuadExt conj() const { return {a, -b}; }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }

  // Sign of the real number a + b*r, exact.
  int sign() const {
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
    int c = sign_of_norm_form(a, b, d());
    return c > 0 ? sa : (c < 0 ? sb : 0);
  }

  double to_double() const { return a.to_double() + b.to_double() * root(); }

  int lex_compare(const QuadExt& o) const {
    int c = a.lex_compare(o.a);
    return c != 0 ? c : b.lex_compare(o.b);
  }
  std::size_t hash() const { return a.hash() * 0x9e3779b97f4a7c15ULL ^ (b.hash() + 0x7f4a7c15ULL); }

  static constexpr int kWidth = 2 * B::kWidth;
  void flatten(std::int64_t* out) const {
    a.flatten(out);
    b.flatten(out + B::kWidth);
  }
  std::string str() const { return "(" + a.str() + " + " + b.str() + "*r" + std::to_string(kWidth) + ")"; }
};

template <class T>
int compare(const T& x, const T& y) {
  return (x - y).sign();
}

struct Two {
  static Int value() { return Int(2); }
};
using Z2 = QuadExt<Int, Two>;  // Z[sqrt 2]

struct TwoPlusTwoRootTwo {
  static Z2 value() { return Z2(Int(2), Int(2)); }
};
using Z2t = QuadExt<Z2, TwoPlusTwoRootTwo>;  // Z[sqrt 2][t], t^2 = 2 + 2 sqrt 2

template <class R>
struct Mat3 {
  std::array<R, 9> e{};

  R& operator()(int i, int j) { return e[3 * i + j]; }
  const R& operator()(int i, int j) const { return e[3 * i + j]; }

  static Mat3 identity() {
    Mat3 m;
    for (int i = 0; i < 3; ++i) m(i, i) = R(1);
    return m;
  }

  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        R s = x(i, 0) * y(0, j);
        s += x(i, 1) * y(1, j);
        s += x(i, 2) * y(2, j);
        r(i, j) = s;
      }
    return r;
  }
  friend bool operator==(const Mat3& x, const Mat3& y) { return x.e == y.e; }
  friend bool operator!=(const Mat3& x, const Mat3& y) { return !(x == y); }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  // Inverse of an element of SO(1,2): J m^T J.
  Mat3 lorentz_inverse() const {
    Mat3 r = transpose();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if ((i == 0) != (j == 0)) r(i, j) = -r(i, j);
    return r;
  }

  R trace() const { return e[0] + e[4] + e[8]; }

  R det() const {
    const Mat3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }

  // m^T J m with J = diag(1, -1, -1).
  Mat3 gram() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Mat3& m = *this;
        r(i, j) = m(0, i) * m(0, j) - m(1, i) * m(1, j) - m(2, i) * m(2, j);
      }
    return r;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& x : e) h = (h ^ x.hash()) * 1099511628211ULL;
    return h;
  }

  int lex_compare(const Mat3& o) const {
    for (int k = 0; k < 9; ++k) {
      int c = e[k].lex_compare(o.e[k]);
      if (c != 0) return c;
    }
    return 0;
  }

  std::array<double, 9> to_double() const {
    std::array<double, 9> r{};
    for (int k = 0; k < 9; ++k) r[k] = e[k].to_double();
    return r;
  }
};

using Mat3Z2t = Mat3<Z2t>;

struct Mat3Hash {
  template <class R>
  std::size_t operator()(const Mat3<R>& m) const {
    return m.hash();
  }
};

template <class R>
Mat3<R> minkowski_form() {
  Mat3<R> j;
  j(0, 0) = R(1);
  j(1, 1) = R(-1);
  j(2, 2) = R(-1);
  return j;
}

// m^T J m == J with zero residual.
template <class R>
bool is_lorentzian(const Mat3<R>& m) {
  return m.gram() == minkowski_form<R>();
}

}  // namespace anosov::exact
