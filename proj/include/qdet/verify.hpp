#pragma once

// Defining-equation checkers and the complex-embedding reference. Nothing in
// here depends on geninv, so the checkers stay independent of the code they
// judge.

#include <complex>
#include <string>
#include <vector>

#include "qdet/matrix.hpp"

namespace qdet::verify {

/// One checked equation. In exact mode `passed` is structural equality and
/// `residual` is unused; in float mode `residual` is the max-abs entrywise
/// difference of the two sides and `passed` means residual <= tolerance.
struct Verdict {
  std::string key;
  std::string equation;
  bool passed = false;
  bool exact = true;
  double residual = 0.0;
};

struct VerifyReport {
  std::string kind;        ///< "penrose", "drazin" or "wdrazin"
  std::string provenance;  ///< which route or source produced the candidate
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;

  bool passed() const;
  /// nullptr if no verdict has that key.
  const Verdict* find(const std::string& key) const;

  /// Human-readable block, every line prefixed with "% ".
  std::string to_text() const;
  /// "<prefix>.<key> = pass|fail" lines plus kind, provenance, residuals and notes.
  std::string to_kv(const std::string& prefix = "check") const;
};

struct CheckOptions {
  double tolerance = 1e-9;  ///< float mode only
};

/// AXA = A, XAX = X, (AX)* = AX, (XA)* = XA.
template <Scalar T>
VerifyReport check_penrose(const QMatrix<T>& a, const QMatrix<T>& x, const CheckOptions& opts = {});

/// XAX = X, AX = XA, A^(k+1) X = A^k with k = Ind A.
template <Scalar T>
VerifyReport check_drazin(const QMatrix<T>& a, const QMatrix<T>& x, const CheckOptions& opts = {});

/// (AW)^(k+1) XW = (AW)^k, XWAWX = X, AWX = XWA with k = max(Ind AW, Ind WA),
/// plus the Drazin equations for XW against AW and for WX against WA.
template <Scalar T>
VerifyReport check_wdrazin(const QMatrix<T>& a, const QMatrix<T>& w, const QMatrix<T>& x,
                           const CheckOptions& opts = {});

/// Moore-Penrose inverse computed by SVD of the complex embedding and mapped
/// back. Singular values below 1e-10 times the largest count as zero.
QMatrixD mp_oracle_embedding(const QMatrixD& a);

/// Determinant of embed_complex(a) for square a.
std::complex<double> embedding_determinant(const QMatrixD& a);

/// Half the numerical rank of embed_complex(a).
std::size_t embedding_rank(const QMatrixD& a, double rel_tol = 1e-10);

}  // namespace qdet::verify
