#pragma once

#include <random>
#include <string>
#include <vector>

#include "qdet/matrix.hpp"

namespace qdet::testing {

inline const QuaternionQ qi = QuaternionQ::unit_i();
inline const QuaternionQ qj = QuaternionQ::unit_j();
inline const QuaternionQ qk = QuaternionQ::unit_k();

inline std::string data_path(const std::string& name) { return std::string(QDET_DATA_DIR) + "/" + name; }

class Random {
 public:
  explicit Random(unsigned seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::size_t size(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_); }

  /// Components in [-bound, bound]; roughly one component in three is zero.
  QuaternionQ quaternion(int bound = 2) {
    QuaternionQ q;
    for (std::size_t p = 0; p < 4; ++p) q[p] = integer(0, 2) == 0 ? 0 : integer(-bound, bound);
    return q;
  }

  QuaternionQ nonzero_quaternion(int bound = 2) {
    for (;;) {
      QuaternionQ q = quaternion(bound);
      if (!q.is_zero()) return q;
    }
  }

  QuaternionD quaternion_d() { return {real(-1, 1), real(-1, 1), real(-1, 1), real(-1, 1)}; }

  QMatrixQ matrix(std::size_t m, std::size_t n, int bound = 2) {
    QMatrixQ a(m, n);
    for (auto& q : a.entries()) q = quaternion(bound);
    return a;
  }

  QMatrixD matrix_d(std::size_t m, std::size_t n) {
    QMatrixD a(m, n);
    for (auto& q : a.entries()) q = quaternion_d();
    return a;
  }

  QMatrixQ hermitian(std::size_t n, int bound = 2) {
    QMatrixQ a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = QuaternionQ(Rational(integer(-bound - 1, bound + 1)));
      for (std::size_t j = i + 1; j < n; ++j) {
        a(i, j) = quaternion(bound);
        a(j, i) = a(i, j).conj();
      }
    }
    return a;
  }

  /// m x n product of random m x r and r x n factors: rank at most r.
  QMatrixQ low_rank(std::size_t m, std::size_t n, std::size_t r, int bound = 1) {
    return matrix(m, r, bound) * matrix(r, n, bound);
  }

 private:
  std::mt19937 gen_;
};

/// Textbook Hamilton product written from the unit table, independent of the
/// library's operator order.
inline QuaternionQ hamilton_oracle(const QuaternionQ& x, const QuaternionQ& y) {
  const Rational& a1 = x[0]; const Rational& b1 = x[1]; const Rational& c1 = x[2]; const Rational& d1 = x[3];
  const Rational& a2 = y[0]; const Rational& b2 = y[1]; const Rational& c2 = y[2]; const Rational& d2 = y[3];
  return {Rational(a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2), Rational(a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2),
          Rational(a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2), Rational(a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)};
}

/// Exact coefficients (highest degree first) of the polynomial of degree
/// values.size()-1 through (points[s], values[s]), by Lagrange interpolation.
inline std::vector<Rational> interpolate(const std::vector<Rational>& points, const std::vector<Rational>& values) {
  const std::size_t n = points.size();
  std::vector<Rational> result(n, Rational(0));  // ascending degree
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom(1);
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t p = 0; p < basis.size(); ++p) {
        next[p + 1] += basis[p];
        next[p] -= basis[p] * points[t];
      }
      basis = std::move(next);
      denom *= points[s] - points[t];
    }
    for (std::size_t p = 0; p < n; ++p) result[p] += basis[p] * values[s] / denom;
  }
  return {result.rbegin(), result.rend()};
}

}  // namespace qdet::testing
