#pragma once

// Row and column determinants of square quaternion matrices, the determinant
// of a Hermitian matrix, principal-minor sums, the Hermitian characteristic
// polynomial and the cofactor inverse of a Hermitian matrix.
//
// Indices are 0-based. A determinant of order n is a signed sum over all n!
// permutations; each permutation is written as disjoint cycles (fixed points
// included) and contributes (-1)^(n - r) times the product of its entry chains
// a(c1,c2) a(c2,c3) ... a(cp,c1), r being the number of cycles.
//
//   rdet_i: the cycle through i comes first and starts at i; the remaining
//           cycles follow in ascending order of their smallest element, each
//           starting there.
//   cdet_j: the mirror image. Remaining cycles in descending order of their
//           smallest element, the cycle through j written last, every chain
//           ending back at its leading element (j for the last one).

#include <cstddef>
#include <span>
#include <vector>

#include "qdet/matrix.hpp"

namespace qdet::ncdet {

/// Enumeration guard: determinants of order above max_order are refused.
struct Limits {
  std::size_t max_order = 8;
};

enum class AnchorKind { row, column };

/// A permutation's disjoint cycles in the canonical order of rdet_anchor or
/// cdet_anchor. Each cycle lists its elements starting from the leading one
/// and following the permutation.
struct CycleForm {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t anchor = 0;
  AnchorKind kind = AnchorKind::row;

  std::size_t cycle_count() const { return cycles.size(); }
  std::size_t order() const;
};

/// Canonical cycle form of `perm` (perm[c] is the image of c).
CycleForm canonical_form(std::span<const std::size_t> perm, std::size_t anchor, AnchorKind kind);

/// (-1)^(n-r) times the ordered chain product of `form` over `a`.
template <Scalar T>
Quaternion<T> signed_term(const QMatrix<T>& a, const CycleForm& form);

/// Reference enumerator: walks S_n, builds each CycleForm, multiplies it out.
template <Scalar T>
Quaternion<T> rdet_reference(std::size_t i, const QMatrix<T>& a, const Limits& limits = {});
template <Scalar T>
Quaternion<T> cdet_reference(std::size_t j, const QMatrix<T>& a, const Limits& limits = {});

/// Canonical-cycle enumerators used by everything else: they generate the
/// cycle forms directly, sharing prefix (rdet) or suffix (cdet) products.
template <Scalar T>
Quaternion<T> rdet(std::size_t i, const QMatrix<T>& a, const Limits& limits = {});
template <Scalar T>
Quaternion<T> cdet(std::size_t j, const QMatrix<T>& a, const Limits& limits = {});

/// Determinant of a Hermitian matrix (the common real value of all row and
/// column determinants). An empty matrix has determinant 1.
template <Scalar T>
T ddet(const QMatrix<T>& a, const Limits& limits = {});

/// Sum of the principal minors of order s of a Hermitian matrix, 1 <= s <= n.
template <Scalar T>
T principal_minor_sum(const QMatrix<T>& a, std::size_t s, const Limits& limits = {});

/// p(t) = det(tI - a) = t^n - d1 t^(n-1) + d2 t^(n-2) - ... + (-1)^n dn.
template <Scalar T>
struct CharPoly {
  std::vector<T> d;  ///< d[s-1] = principal_minor_sum(a, s)

  /// Monic coefficients, highest degree first: {1, -d1, d2, ...}.
  std::vector<T> coefficients() const;
  T evaluate(const T& t) const;
};

template <Scalar T>
CharPoly<T> char_poly(const QMatrix<T>& a, const Limits& limits = {});

/// Inverse of a nonsingular Hermitian matrix assembled from right cofactors
/// (a right inverse) and from left cofactors (a left inverse).
template <Scalar T>
QMatrix<T> hermitian_inverse_right(const QMatrix<T>& a, const Limits& limits = {});
template <Scalar T>
QMatrix<T> hermitian_inverse_left(const QMatrix<T>& a, const Limits& limits = {});

/// Both assemblies; throws InconsistencyError if they differ (exact mode).
template <Scalar T>
QMatrix<T> hermitian_inverse(const QMatrix<T>& a, const Limits& limits = {});

/// Sum over index sets beta of size s containing i of
/// cdet_i((m with column i replaced by b) restricted to rows and columns beta).
template <Scalar T>
Quaternion<T> cdet_minor_sum(const QMatrix<T>& m, std::size_t i, std::span<const Quaternion<T>> b, std::size_t s,
                             const Limits& limits = {});

/// Sum over index sets alpha of size s containing j of
/// rdet_j((m with row j replaced by b) restricted to rows and columns alpha).
template <Scalar T>
Quaternion<T> rdet_minor_sum(const QMatrix<T>& m, std::size_t j, std::span<const Quaternion<T>> b, std::size_t s,
                             const Limits& limits = {});

/// Strictly increasing index sets of size k from {0..n-1}; only those
/// containing `must` if it is given.
std::vector<std::vector<std::size_t>> index_sets(std::size_t k, std::size_t n);
std::vector<std::vector<std::size_t>> index_sets_containing(std::size_t k, std::size_t n, std::size_t must);

}  // namespace qdet::ncdet
