#include "qdet/ncdet.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace qdet::ncdet {
namespace {

template <Scalar T>
void require_determinant_input(const QMatrix<T>& a, std::size_t anchor, const Limits& limits) {
  if (!a.is_square()) throw DimensionError("determinant of a non-square matrix");
  if (a.rows() > limits.max_order) throw GuardExceeded(a.rows(), limits.max_order);
  if (a.rows() > 31) throw GuardExceeded(a.rows(), 31);
  if (anchor >= a.rows()) throw DimensionError("determinant anchor out of range");
}

template <Scalar T>
void require_hermitian(const QMatrix<T>& a, const char* what) {
  if (!a.is_hermitian()) throw PreconditionError(std::string(what) + " requires a Hermitian matrix");
}

template <Scalar T>
Quaternion<T> with_sign(Quaternion<T> q, std::size_t n, std::size_t cycles) {
  return (n - cycles) % 2 == 0 ? q : -q;
}

template <Scalar T>
Quaternion<T> reference(std::size_t anchor, const QMatrix<T>& a, AnchorKind kind, const Limits& limits) {
  require_determinant_input(a, anchor, limits);
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Quaternion<T> sum;
  do {
    sum += signed_term(a, canonical_form(perm, anchor, kind));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

// rdet: cycles are generated left to right; `prefix` is the product so far.
template <Scalar T>
class RowExpansion {
 public:
  explicit RowExpansion(const QMatrix<T>& a) : a_(a), n_(a.rows()), full_((std::uint32_t{1} << n_) - 1) {}

  Quaternion<T> run(std::size_t anchor) {
    sum_ = Quaternion<T>();
    walk(std::uint32_t{1} << anchor, anchor, anchor, Quaternion<T>(T(1)), 1);
    return sum_;
  }

 private:
  void walk(std::uint32_t used, std::size_t head, std::size_t cur, const Quaternion<T>& prefix, std::size_t cycles) {
    const Quaternion<T> closed = prefix * a_(cur, head);
    if (used == full_) {
      sum_ += with_sign(closed, n_, cycles);
    } else {
      const auto next = static_cast<std::size_t>(std::countr_one(used));
      walk(used | (std::uint32_t{1} << next), next, next, closed, cycles + 1);
    }
    for (std::size_t u = 0; u < n_; ++u) {
      if (used & (std::uint32_t{1} << u)) continue;
      walk(used | (std::uint32_t{1} << u), head, u, prefix * a_(cur, u), cycles);
    }
  }

  const QMatrix<T>& a_;
  std::size_t n_;
  std::uint32_t full_;
  Quaternion<T> sum_;
};

// cdet: cycles are generated right to left; `suffix` is the product so far
// and every new factor is multiplied on the left.
template <Scalar T>
class ColumnExpansion {
 public:
  explicit ColumnExpansion(const QMatrix<T>& a) : a_(a), n_(a.rows()), full_((std::uint32_t{1} << n_) - 1) {}

  Quaternion<T> run(std::size_t anchor) {
    sum_ = Quaternion<T>();
    walk(std::uint32_t{1} << anchor, anchor, anchor, Quaternion<T>(T(1)), 1);
    return sum_;
  }

 private:
  void walk(std::uint32_t used, std::size_t head, std::size_t cur, const Quaternion<T>& suffix, std::size_t cycles) {
    const Quaternion<T> closed = a_(head, cur) * suffix;
    if (used == full_) {
      sum_ += with_sign(closed, n_, cycles);
    } else {
      const auto next = static_cast<std::size_t>(std::countr_one(used));
      walk(used | (std::uint32_t{1} << next), next, next, closed, cycles + 1);
    }
    for (std::size_t u = 0; u < n_; ++u) {
      if (used & (std::uint32_t{1} << u)) continue;
      walk(used | (std::uint32_t{1} << u), head, u, a_(u, cur) * suffix, cycles);
    }
  }

  const QMatrix<T>& a_;
  std::size_t n_;
  std::uint32_t full_;
  Quaternion<T> sum_;
};

template <Scalar T>
T real_part_checked(const Quaternion<T>& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (!q.is_real()) throw InconsistencyError("determinant of a Hermitian matrix has a nonzero imaginary part");
  }
  return q[0];
}

// Determinant of a matrix already known to be Hermitian.
template <Scalar T>
T hermitian_det(const QMatrix<T>& a, const Limits& limits) {
  if (a.rows() == 0) return T(1);
  return real_part_checked(rdet(std::size_t{0}, a, limits));
}

void collect_sets(std::size_t k, std::size_t n, std::size_t start, std::vector<std::size_t>& current,
                  std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t v = start; v + (k - current.size()) <= n; ++v) {
    current.push_back(v);
    collect_sets(k, n, v + 1, current, out);
    current.pop_back();
  }
}

std::size_t position_of(const std::vector<std::size_t>& set, std::size_t value) {
  return static_cast<std::size_t>(std::find(set.begin(), set.end(), value) - set.begin());
}

// Indices {0..n-1} without `skip`.
std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> idx;
  for (std::size_t v = 0; v < n; ++v)
    if (v != skip) idx.push_back(v);
  return idx;
}

}  // namespace

std::size_t CycleForm::order() const {
  std::size_t n = 0;
  for (const auto& c : cycles) n += c.size();
  return n;
}

CycleForm canonical_form(std::span<const std::size_t> perm, std::size_t anchor, AnchorKind kind) {
  const std::size_t n = perm.size();
  if (anchor >= n) throw DimensionError("canonical_form: anchor out of range");
  std::vector<bool> seen(n, false);
  auto trace = [&](std::size_t lead) {
    std::vector<std::size_t> cycle;
    for (std::size_t c = lead; !seen[c]; c = perm[c]) {
      seen[c] = true;
      cycle.push_back(c);
    }
    return cycle;
  };
  CycleForm form;
  form.anchor = anchor;
  form.kind = kind;
  std::vector<std::size_t> anchor_cycle = trace(anchor);
  std::vector<std::vector<std::size_t>> others;  // ascending by leading (= smallest) element
  for (std::size_t c = 0; c < n; ++c)
    if (!seen[c]) others.push_back(trace(c));
  if (kind == AnchorKind::row) {
    form.cycles.push_back(std::move(anchor_cycle));
    for (auto& c : others) form.cycles.push_back(std::move(c));
  } else {
    for (auto it = others.rbegin(); it != others.rend(); ++it) form.cycles.push_back(std::move(*it));
    form.cycles.push_back(std::move(anchor_cycle));
  }
  return form;
}

template <Scalar T>
Quaternion<T> signed_term(const QMatrix<T>& a, const CycleForm& form) {
  Quaternion<T> product(T(1));
  for (const auto& cycle : form.cycles)
    for (std::size_t p = 0; p < cycle.size(); ++p) product = product * a(cycle[p], cycle[(p + 1) % cycle.size()]);
  return with_sign(product, form.order(), form.cycle_count());
}

template <Scalar T>
Quaternion<T> rdet_reference(std::size_t i, const QMatrix<T>& a, const Limits& limits) {
  return reference(i, a, AnchorKind::row, limits);
}

template <Scalar T>
Quaternion<T> cdet_reference(std::size_t j, const QMatrix<T>& a, const Limits& limits) {
  return reference(j, a, AnchorKind::column, limits);
}

template <Scalar T>
Quaternion<T> rdet(std::size_t i, const QMatrix<T>& a, const Limits& limits) {
  require_determinant_input(a, i, limits);
  return RowExpansion<T>(a).run(i);
}

template <Scalar T>
Quaternion<T> cdet(std::size_t j, const QMatrix<T>& a, const Limits& limits) {
  require_determinant_input(a, j, limits);
  return ColumnExpansion<T>(a).run(j);
}

template <Scalar T>
T ddet(const QMatrix<T>& a, const Limits& limits) {
  require_hermitian(a, "ddet");
  return hermitian_det(a, limits);
}

template <Scalar T>
T principal_minor_sum(const QMatrix<T>& a, std::size_t s, const Limits& limits) {
  require_hermitian(a, "principal_minor_sum");
  if (s < 1 || s > a.rows()) throw DimensionError("principal_minor_sum: order out of range");
  T sum(0);
  for (const auto& beta : index_sets(s, a.rows())) sum += hermitian_det(principal_submatrix<T>(a, beta), limits);
  return sum;
}

template <Scalar T>
std::vector<T> CharPoly<T>::coefficients() const {
  std::vector<T> c{T(1)};
  for (std::size_t s = 0; s < d.size(); ++s) c.push_back(s % 2 == 0 ? T(-d[s]) : d[s]);
  return c;
}

template <Scalar T>
T CharPoly<T>::evaluate(const T& t) const {
  T value(0);
  for (const T& c : coefficients()) value = value * t + c;
  return value;
}

template <Scalar T>
CharPoly<T> char_poly(const QMatrix<T>& a, const Limits& limits) {
  require_hermitian(a, "char_poly");
  CharPoly<T> p;
  for (std::size_t s = 1; s <= a.rows(); ++s) p.d.push_back(principal_minor_sum(a, s, limits));
  return p;
}

template <Scalar T>
QMatrix<T> hermitian_inverse_right(const QMatrix<T>& a, const Limits& limits) {
  const T det = ddet(a, limits);
  if (ScalarTraits<T>::is_zero(det)) throw PreconditionError("hermitian_inverse: matrix is singular");
  const std::size_t n = a.rows();
  QMatrix<T> x(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<std::size_t> keep = all_but(n, i);
    for (std::size_t j = 0; j < n; ++j) {
      Quaternion<T> cofactor(T(1));
      if (n > 1) {
        if (i == j) {
          cofactor = rdet(std::size_t{0}, principal_submatrix<T>(a, keep), limits);
        } else {
          const auto col_i = column(a, i);
          const QMatrix<T> swapped = replace_column<T>(a, j, col_i);
          cofactor = -rdet(j - (j > i ? 1 : 0), principal_submatrix<T>(swapped, keep), limits);
        }
      }
      x(j, i) = cofactor / det;
    }
  }
  return x;
}

template <Scalar T>
QMatrix<T> hermitian_inverse_left(const QMatrix<T>& a, const Limits& limits) {
  const T det = ddet(a, limits);
  if (ScalarTraits<T>::is_zero(det)) throw PreconditionError("hermitian_inverse: matrix is singular");
  const std::size_t n = a.rows();
  QMatrix<T> x(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<std::size_t> keep = all_but(n, j);
    for (std::size_t i = 0; i < n; ++i) {
      Quaternion<T> cofactor(T(1));
      if (n > 1) {
        if (i == j) {
          cofactor = cdet(std::size_t{0}, principal_submatrix<T>(a, keep), limits);
        } else {
          const auto row_j = row(a, j);
          const QMatrix<T> swapped = replace_row<T>(a, i, row_j);
          cofactor = -cdet(i - (i > j ? 1 : 0), principal_submatrix<T>(swapped, keep), limits);
        }
      }
      x(j, i) = cofactor / det;
    }
  }
  return x;
}

template <Scalar T>
QMatrix<T> hermitian_inverse(const QMatrix<T>& a, const Limits& limits) {
  QMatrix<T> right = hermitian_inverse_right(a, limits);
  if constexpr (std::is_same_v<T, Rational>) {
    if (right != hermitian_inverse_left(a, limits))
      throw InconsistencyError("hermitian_inverse: right and left cofactor assemblies differ");
  }
  return right;
}

template <Scalar T>
Quaternion<T> cdet_minor_sum(const QMatrix<T>& m, std::size_t i, std::span<const Quaternion<T>> b, std::size_t s,
                             const Limits& limits) {
  const QMatrix<T> replaced = replace_column(m, i, b);
  Quaternion<T> sum;
  for (const auto& beta : index_sets_containing(s, m.rows(), i))
    sum += cdet(position_of(beta, i), principal_submatrix<T>(replaced, beta), limits);
  return sum;
}

template <Scalar T>
Quaternion<T> rdet_minor_sum(const QMatrix<T>& m, std::size_t j, std::span<const Quaternion<T>> b, std::size_t s,
                             const Limits& limits) {
  const QMatrix<T> replaced = replace_row(m, j, b);
  Quaternion<T> sum;
  for (const auto& alpha : index_sets_containing(s, m.rows(), j))
    sum += rdet(position_of(alpha, j), principal_submatrix<T>(replaced, alpha), limits);
  return sum;
}

std::vector<std::vector<std::size_t>> index_sets(std::size_t k, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  if (k <= n) collect_sets(k, n, 0, current, out);
  return out;
}

std::vector<std::vector<std::size_t>> index_sets_containing(std::size_t k, std::size_t n, std::size_t must) {
  std::vector<std::vector<std::size_t>> out;
  for (auto& set : index_sets(k, n))
    if (std::find(set.begin(), set.end(), must) != set.end()) out.push_back(std::move(set));
  return out;
}

#define QDET_INSTANTIATE(T)                                                                                         \
  template Quaternion<T> signed_term(const QMatrix<T>&, const CycleForm&);                                         \
  template Quaternion<T> rdet_reference(std::size_t, const QMatrix<T>&, const Limits&);                            \
  template Quaternion<T> cdet_reference(std::size_t, const QMatrix<T>&, const Limits&);                            \
  template Quaternion<T> rdet(std::size_t, const QMatrix<T>&, const Limits&);                                      \
  template Quaternion<T> cdet(std::size_t, const QMatrix<T>&, const Limits&);                                      \
  template T ddet(const QMatrix<T>&, const Limits&);                                                               \
  template T principal_minor_sum(const QMatrix<T>&, std::size_t, const Limits&);                                   \
  template struct CharPoly<T>;                                                                                     \
  template CharPoly<T> char_poly(const QMatrix<T>&, const Limits&);                                                \
  template QMatrix<T> hermitian_inverse_right(const QMatrix<T>&, const Limits&);                                   \
  template QMatrix<T> hermitian_inverse_left(const QMatrix<T>&, const Limits&);                                    \
  template QMatrix<T> hermitian_inverse(const QMatrix<T>&, const Limits&);                                         \
  template Quaternion<T> cdet_minor_sum(const QMatrix<T>&, std::size_t, std::span<const Quaternion<T>>, std::size_t, \
                                        const Limits&);                                                            \
  template Quaternion<T> rdet_minor_sum(const QMatrix<T>&, std::size_t, std::span<const Quaternion<T>>, std::size_t, \
                                        const Limits&);

QDET_INSTANTIATE(Rational)
QDET_INSTANTIATE(double)

#undef QDET_INSTANTIATE

}  // namespace qdet::ncdet
