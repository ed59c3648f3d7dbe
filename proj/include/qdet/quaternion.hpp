#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

#include "qdet/errors.hpp"

namespace qdet {

using Rational = mpq_class;

enum class Mode { exact, floating };

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Mode mode = Mode::exact;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
};

template <>
struct ScalarTraits<double> {
  static constexpr Mode mode = Mode::floating;
  static bool is_zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
  static double magnitude(double x) { return std::fabs(x); }
};

template <typename T>
concept Scalar = std::is_same_v<T, Rational> || std::is_same_v<T, double>;

/// a0 + a1 i + a2 j + a3 k over either exact rationals or doubles.
///
/// The mode is the template argument, so exact and float values cannot meet
/// in one expression. Rational components are kept canonical by GMP.
template <Scalar T>
class Quaternion {
 public:
  using value_type = T;

  Quaternion() = default;
  Quaternion(T a0) : c_{std::move(a0), T(0), T(0), T(0)} {}  // NOLINT: reals embed implicitly
  Quaternion(T a0, T a1, T a2, T a3) : c_{std::move(a0), std::move(a1), std::move(a2), std::move(a3)} {}
  Quaternion(int a0) : Quaternion(T(a0)) {}  // NOLINT
  Quaternion(int a0, int a1, int a2, int a3) : Quaternion(T(a0), T(a1), T(a2), T(a3)) {}

  static Quaternion unit_i() { return {T(0), T(1), T(0), T(0)}; }
  static Quaternion unit_j() { return {T(0), T(0), T(1), T(0)}; }
  static Quaternion unit_k() { return {T(0), T(0), T(0), T(1)}; }

  const T& operator[](std::size_t p) const { return c_[p]; }
  T& operator[](std::size_t p) { return c_[p]; }
  const std::array<T, 4>& components() const { return c_; }

  bool is_zero() const {
    return ScalarTraits<T>::is_zero(c_[0]) && ScalarTraits<T>::is_zero(c_[1]) &&
           ScalarTraits<T>::is_zero(c_[2]) && ScalarTraits<T>::is_zero(c_[3]);
  }
  bool is_real() const {
    return ScalarTraits<T>::is_zero(c_[1]) && ScalarTraits<T>::is_zero(c_[2]) &&
           ScalarTraits<T>::is_zero(c_[3]);
  }

  T norm_squared() const {
    T n = c_[0] * c_[0];
    n += c_[1] * c_[1];
    n += c_[2] * c_[2];
    n += c_[3] * c_[3];
    return n;
  }

  /// Largest absolute component, as a double. Used for float tolerances.
  double max_abs() const {
    double m = 0.0;
    for (const T& x : c_) m = std::max(m, ScalarTraits<T>::magnitude(x));
    return m;
  }

  Quaternion conj() const { return {c_[0], T(-c_[1]), T(-c_[2]), T(-c_[3])}; }

  Quaternion& operator+=(const Quaternion& o) {
    for (std::size_t p = 0; p < 4; ++p) c_[p] += o.c_[p];
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    for (std::size_t p = 0; p < 4; ++p) c_[p] -= o.c_[p];
    return *this;
  }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator-(const Quaternion& a) { return {T(-a.c_[0]), T(-a.c_[1]), T(-a.c_[2]), T(-a.c_[3])}; }

  /// Hamilton product. For doubles the evaluation order matches the SIMD
  /// kernels term for term, which keeps the two paths bit-identical.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    const auto& x = a.c_;
    const auto& y = b.c_;
    Quaternion r;
    r.c_[0] = x[0] * y[0];
    r.c_[0] -= x[1] * y[1];
    r.c_[0] -= x[2] * y[2];
    r.c_[0] -= x[3] * y[3];
    r.c_[1] = x[0] * y[1];
    r.c_[1] += x[1] * y[0];
    r.c_[1] += x[2] * y[3];
    r.c_[1] -= x[3] * y[2];
    r.c_[2] = x[0] * y[2];
    r.c_[2] -= x[1] * y[3];
    r.c_[2] += x[2] * y[0];
    r.c_[2] += x[3] * y[1];
    r.c_[3] = x[0] * y[3];
    r.c_[3] += x[1] * y[2];
    r.c_[3] -= x[2] * y[1];
    r.c_[3] += x[3] * y[0];
    return r;
  }

  /// Real scaling (reals are central, so side does not matter).
  friend Quaternion operator*(const Quaternion& a, const T& s) {
    return {T(a.c_[0] * s), T(a.c_[1] * s), T(a.c_[2] * s), T(a.c_[3] * s)};
  }
  friend Quaternion operator*(const T& s, const Quaternion& a) { return a * s; }
  friend Quaternion operator/(const Quaternion& a, const T& s) {
    if (ScalarTraits<T>::is_zero(s)) throw DivisionByZero("quaternion divided by zero");
    return {T(a.c_[0] / s), T(a.c_[1] / s), T(a.c_[2] / s), T(a.c_[3] / s)};
  }

  friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }

 private:
  std::array<T, 4> c_{};
};

using QuaternionQ = Quaternion<Rational>;
using QuaternionD = Quaternion<double>;

static_assert(sizeof(QuaternionD) == 4 * sizeof(double));
static_assert(std::is_standard_layout_v<QuaternionD>);

template <Scalar T>
Quaternion<T> qmul(const Quaternion<T>& a, const Quaternion<T>& b) {
  return a * b;
}

template <Scalar T>
Quaternion<T> qconj(const Quaternion<T>& a) {
  return a.conj();
}

/// conj(a) / |a|^2. Throws DivisionByZero for a == 0.
template <Scalar T>
Quaternion<T> qinv(const Quaternion<T>& a) {
  if (a.is_zero()) throw DivisionByZero("inverse of the zero quaternion");
  return a.conj() / a.norm_squared();
}

inline QuaternionD to_double(const QuaternionQ& q) {
  return {q[0].get_d(), q[1].get_d(), q[2].get_d(), q[3].get_d()};
}

/// A literal split into components before a mode is chosen.
struct ParsedLiteral {
  std::array<Rational, 4> exact{};  ///< exact value; decimals are exact rationals too
  std::array<double, 4> approx{};   ///< correctly rounded doubles
  bool has_decimal = false;
  bool has_fraction = false;
};

/// Parses `1+2i-3j+1/2k`, `-k`, `0`, `2.5e-3j`, ... No whitespace allowed.
/// Errors carry the 1-based column inside `text` (line 0).
ParsedLiteral parse_literal(std::string_view text);

template <Scalar T>
Quaternion<T> parse_quaternion(std::string_view text);

/// Canonical literal. Float literals always carry a decimal point or an
/// exponent, so they read back in float mode.
std::string to_literal(const QuaternionQ& q);
std::string to_literal(const QuaternionD& q);

template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Quaternion<T>& q) {
  return os << to_literal(q);
}

}  // namespace qdet
