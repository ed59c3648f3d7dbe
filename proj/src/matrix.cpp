#include "qdet/matrix.hpp"

#include <algorithm>
#include <utility>

#include "qdet/kernels.hpp"

namespace qdet {
namespace {

template <Scalar T>
double scale_of(const QMatrix<T>& a) {
  double s = 0.0;
  for (const auto& q : a.entries()) s = std::max(s, q.max_abs());
  return s;
}

// Exact mode: nonzero. Float mode: above the absolute threshold.
template <Scalar T>
bool usable_pivot(const Quaternion<T>& q, double threshold) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)threshold;
    return !q.is_zero();
  } else {
    return q.max_abs() > threshold;
  }
}

// Picks the pivot row for column c among rows [from, rows): the first nonzero
// entry in exact mode, the largest one in float mode.
template <Scalar T>
std::ptrdiff_t find_pivot(const QMatrix<T>& m, std::size_t c, std::size_t from, double threshold) {
  std::ptrdiff_t best = -1;
  double best_mag = 0.0;
  for (std::size_t r = from; r < m.rows(); ++r) {
    const auto& q = m(r, c);
    if (!usable_pivot(q, threshold)) continue;
    if constexpr (std::is_same_v<T, Rational>) {
      return static_cast<std::ptrdiff_t>(r);
    } else {
      if (q.max_abs() > best_mag) {
        best_mag = q.max_abs();
        best = static_cast<std::ptrdiff_t>(r);
      }
    }
  }
  return best;
}

template <Scalar T>
void swap_rows(QMatrix<T>& m, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(r1, c), m(r2, c));
}

// row[target] -= f * row[source], columns [from, cols).
template <Scalar T>
void row_sub_left(QMatrix<T>& m, std::size_t target, std::size_t source, const Quaternion<T>& f, std::size_t from) {
  if constexpr (std::is_same_v<T, double>) {
    auto* base = reinterpret_cast<double*>(m.entries().data());
    const std::size_t n = m.cols();
    kernels::qrow_sub_left(reinterpret_cast<const double*>(&f), base + 4 * (source * n + from),
                           base + 4 * (target * n + from), n - from);
  } else {
    for (std::size_t c = from; c < m.cols(); ++c) m(target, c) -= f * m(source, c);
  }
}

template <Scalar T>
void row_scale_left(QMatrix<T>& m, std::size_t r, const Quaternion<T>& f) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = f * m(r, c);
}

}  // namespace

template <Scalar T>
QMatrix<T> matmul(const QMatrix<T>& a, const QMatrix<T>& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  QMatrix<T> c(a.rows(), b.cols());
  if constexpr (std::is_same_v<T, double>) {
    kernels::qgemm(reinterpret_cast<const double*>(a.entries().data()),
                   reinterpret_cast<const double*>(b.entries().data()),
                   reinterpret_cast<double*>(c.entries().data()), a.rows(), a.cols(), b.cols());
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        Quaternion<T> acc;
        for (std::size_t s = 0; s < a.cols(); ++s) acc += a(i, s) * b(s, j);
        c(i, j) = std::move(acc);
      }
  }
  return c;
}

template <Scalar T>
QMatrix<T> conj_transpose(const QMatrix<T>& a) {
  QMatrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j).conj();
  return t;
}

template <Scalar T>
QMatrix<T> mat_pow(const QMatrix<T>& a, std::size_t p) {
  if (!a.is_square()) throw DimensionError("mat_pow: matrix is not square");
  QMatrix<T> r = QMatrix<T>::identity(a.rows());
  for (std::size_t s = 0; s < p; ++s) r = matmul(r, a);
  return r;
}

template <Scalar T>
std::size_t rank(const QMatrix<T>& a, double tol) {
  QMatrix<T> m = a;
  const double threshold = tol * scale_of(a);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const std::ptrdiff_t p = find_pivot(m, c, r, threshold);
    if (p < 0) continue;
    swap_rows(m, r, static_cast<std::size_t>(p));
    const Quaternion<T> pivot_inv = qinv(m(r, c));
    for (std::size_t q = r + 1; q < m.rows(); ++q) {
      if (m(q, c).is_zero()) continue;
      const Quaternion<T> f = m(q, c) * pivot_inv;
      row_sub_left(m, q, r, f, c);
    }
    ++r;
  }
  return r;
}

template <Scalar T>
std::size_t index_of(const QMatrix<T>& a, double tol) {
  if (!a.is_square()) throw DimensionError("index_of: matrix is not square");
  const std::size_t n = a.rows();
  std::size_t previous = n;  // rank of a^0
  QMatrix<T> power = QMatrix<T>::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    power = matmul(power, a);
    const std::size_t next = rank(power, tol);
    if (next == previous) return k;
    previous = next;
  }
  throw InconsistencyError("index_of: rank of powers did not stabilise");
}

template <Scalar T>
QMatrix<T> submatrix(const QMatrix<T>& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  QMatrix<T> s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
  return s;
}

template <Scalar T>
std::vector<Quaternion<T>> column(const QMatrix<T>& a, std::size_t j) {
  std::vector<Quaternion<T>> v;
  v.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) v.push_back(a(i, j));
  return v;
}

template <Scalar T>
std::vector<Quaternion<T>> row(const QMatrix<T>& a, std::size_t i) {
  auto r = a.row(i);
  return {r.begin(), r.end()};
}

template <Scalar T>
QMatrix<T> replace_column(QMatrix<T> a, std::size_t j, std::span<const Quaternion<T>> b) {
  if (b.size() != a.rows() || j >= a.cols()) throw DimensionError("replace_column: shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = b[i];
  return a;
}

template <Scalar T>
QMatrix<T> replace_row(QMatrix<T> a, std::size_t i, std::span<const Quaternion<T>> b) {
  if (b.size() != a.cols() || i >= a.rows()) throw DimensionError("replace_row: shape mismatch");
  for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = b[j];
  return a;
}

template <Scalar T>
QMatrix<T> hstack(const QMatrix<T>& a, const QMatrix<T>& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
  QMatrix<T> s(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) s(i, a.cols() + j) = b(i, j);
  }
  return s;
}

template <Scalar T>
QMatrix<T> solve_left(const QMatrix<T>& m, const QMatrix<T>& b) {
  if (!m.is_square()) throw DimensionError("solve_left: coefficient matrix is not square");
  if (b.rows() != m.rows()) throw DimensionError("solve_left: right-hand side has the wrong row count");
  const std::size_t n = m.rows();
  QMatrix<T> aug = hstack(m, b);
  const double threshold = 1e-13 * scale_of(m);
  for (std::size_t c = 0; c < n; ++c) {
    const std::ptrdiff_t p = find_pivot(aug, c, c, threshold);
    if (p < 0) throw PreconditionError("matrix is singular");
    swap_rows(aug, c, static_cast<std::size_t>(p));
    row_scale_left(aug, c, qinv(aug(c, c)));
    for (std::size_t q = 0; q < n; ++q) {
      if (q == c || aug(q, c).is_zero()) continue;
      const Quaternion<T> f = aug(q, c);
      row_sub_left(aug, q, c, f, 0);
    }
  }
  QMatrix<T> x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
  return x;
}

template <Scalar T>
QMatrix<T> inverse(const QMatrix<T>& a) {
  return solve_left(a, QMatrix<T>::identity(a.rows()));
}

template <Scalar T>
ComplexMatrix embed_complex(const QMatrix<T>& a) {
  ComplexMatrix c(2 * a.rows(), 2 * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& q = a(i, j);
      const double w = ScalarTraits<T>::to_double(q[0]);
      const double x = ScalarTraits<T>::to_double(q[1]);
      const double y = ScalarTraits<T>::to_double(q[2]);
      const double z = ScalarTraits<T>::to_double(q[3]);
      const auto r = static_cast<Eigen::Index>(2 * i);
      const auto s = static_cast<Eigen::Index>(2 * j);
      c(r, s) = {w, x};
      c(r, s + 1) = {y, z};
      c(r + 1, s) = {-y, z};
      c(r + 1, s + 1) = {w, -x};
    }
  return c;
}

QMatrixD unembed_complex(const ComplexMatrix& c) {
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0) throw DimensionError("unembed_complex: odd dimensions");
  QMatrixD a(static_cast<std::size_t>(c.rows() / 2), static_cast<std::size_t>(c.cols() / 2));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto r = static_cast<Eigen::Index>(2 * i);
      const auto s = static_cast<Eigen::Index>(2 * j);
      a(i, j) = {c(r, s).real(), c(r, s).imag(), c(r, s + 1).real(), c(r, s + 1).imag()};
    }
  return a;
}

QMatrixD to_double(const QMatrixQ& a) {
  QMatrixD d(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d(i, j) = to_double(a(i, j));
  return d;
}

double max_abs_difference(const QMatrixD& a, const QMatrixD& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_difference: shapes differ");
  double m = 0.0;
  for (std::size_t p = 0; p < a.entries().size(); ++p) m = std::max(m, (a.entries()[p] - b.entries()[p]).max_abs());
  return m;
}

#define QDET_INSTANTIATE(T)                                                                                   \
  template QMatrix<T> matmul(const QMatrix<T>&, const QMatrix<T>&);                                          \
  template QMatrix<T> conj_transpose(const QMatrix<T>&);                                                     \
  template QMatrix<T> mat_pow(const QMatrix<T>&, std::size_t);                                               \
  template std::size_t rank(const QMatrix<T>&, double);                                                      \
  template std::size_t index_of(const QMatrix<T>&, double);                                                  \
  template QMatrix<T> submatrix(const QMatrix<T>&, std::span<const std::size_t>, std::span<const std::size_t>); \
  template std::vector<Quaternion<T>> column(const QMatrix<T>&, std::size_t);                                \
  template std::vector<Quaternion<T>> row(const QMatrix<T>&, std::size_t);                                   \
  template QMatrix<T> replace_column(QMatrix<T>, std::size_t, std::span<const Quaternion<T>>);               \
  template QMatrix<T> replace_row(QMatrix<T>, std::size_t, std::span<const Quaternion<T>>);                  \
  template QMatrix<T> hstack(const QMatrix<T>&, const QMatrix<T>&);                                          \
  template QMatrix<T> inverse(const QMatrix<T>&);                                                            \
  template QMatrix<T> solve_left(const QMatrix<T>&, const QMatrix<T>&);                                      \
  template ComplexMatrix embed_complex(const QMatrix<T>&);

QDET_INSTANTIATE(Rational)
QDET_INSTANTIATE(double)

#undef QDET_INSTANTIATE

}  // namespace qdet
