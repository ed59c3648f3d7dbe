#include "qdet/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <Eigen/SVD>

namespace qdet::verify {
namespace {

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

template <Scalar T>
Verdict compare(std::string key, std::string equation, const QMatrix<T>& lhs, const QMatrix<T>& rhs,
                const CheckOptions& opts) {
  Verdict v{std::move(key), std::move(equation), false, std::is_same_v<T, Rational>, 0.0};
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) throw DimensionError("verify: sides differ in shape");
  if constexpr (std::is_same_v<T, Rational>) {
    v.passed = lhs == rhs;
  } else {
    v.residual = max_abs_difference(lhs, rhs);
    v.passed = v.residual <= opts.tolerance;
  }
  return v;
}

template <Scalar T>
void require_shape(const QMatrix<T>& x, std::size_t rows, std::size_t cols, const char* what) {
  if (x.rows() != rows || x.cols() != cols)
    throw DimensionError(std::string(what) + ": candidate must be " + std::to_string(rows) + " x " +
                         std::to_string(cols));
}

// All three Drazin equations for x against a, folded into one verdict.
template <Scalar T>
Verdict drazin_verdict(std::string key, std::string equation, const QMatrix<T>& a, const QMatrix<T>& x,
                       const CheckOptions& opts) {
  const QMatrix<T> ak = mat_pow(a, index_of(a));
  Verdict v = compare(std::move(key), std::move(equation), x * a * x, x, opts);
  const Verdict c = compare("", "", a * x, x * a, opts);
  const Verdict p = compare("", "", a * ak * x, ak, opts);
  v.passed = v.passed && c.passed && p.passed;
  v.residual = std::max({v.residual, c.residual, p.residual});
  return v;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

const Verdict* VerifyReport::find(const std::string& key) const {
  for (const auto& v : verdicts)
    if (v.key == key) return &v;
  return nullptr;
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "% check " << kind;
  if (!provenance.empty()) os << " (" << provenance << ")";
  os << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& v : verdicts) {
    os << "%   " << v.key << std::string(v.key.size() < 14 ? 14 - v.key.size() : 1, ' ') << (v.passed ? "pass" : "FAIL");
    if (!v.exact) os << "  residual " << format_residual(v.residual);
    os << "  " << v.equation << "\n";
  }
  for (const auto& n : notes) os << "%   note: " << n << "\n";
  return os.str();
}

std::string VerifyReport::to_kv(const std::string& prefix) const {
  std::ostringstream os;
  os << prefix << ".kind = " << kind << "\n";
  if (!provenance.empty()) os << prefix << ".provenance = " << provenance << "\n";
  for (const auto& v : verdicts) {
    os << prefix << "." << v.key << " = " << (v.passed ? "pass" : "fail") << "\n";
    if (!v.exact) os << prefix << "." << v.key << ".residual = " << format_residual(v.residual) << "\n";
  }
  for (std::size_t i = 0; i < notes.size(); ++i) os << prefix << ".note." << i + 1 << " = " << notes[i] << "\n";
  os << prefix << ".passed = " << (passed() ? "true" : "false") << "\n";
  return os.str();
}

template <Scalar T>
VerifyReport check_penrose(const QMatrix<T>& a, const QMatrix<T>& x, const CheckOptions& opts) {
  require_shape(x, a.cols(), a.rows(), "check_penrose");
  VerifyReport rep;
  rep.kind = "penrose";
  const QMatrix<T> ax = a * x;
  const QMatrix<T> xa = x * a;
  rep.verdicts.push_back(compare("axa", "AXA = A", ax * a, a, opts));
  rep.verdicts.push_back(compare("xax", "XAX = X", xa * x, x, opts));
  rep.verdicts.push_back(compare("ax_hermitian", "(AX)* = AX", conj_transpose(ax), ax, opts));
  rep.verdicts.push_back(compare("xa_hermitian", "(XA)* = XA", conj_transpose(xa), xa, opts));
  return rep;
}

template <Scalar T>
VerifyReport check_drazin(const QMatrix<T>& a, const QMatrix<T>& x, const CheckOptions& opts) {
  if (!a.is_square()) throw DimensionError("check_drazin: matrix is not square");
  require_shape(x, a.rows(), a.cols(), "check_drazin");
  VerifyReport rep;
  rep.kind = "drazin";
  const std::size_t k = index_of(a);
  const QMatrix<T> ak = mat_pow(a, k);
  rep.verdicts.push_back(compare("xax", "XAX = X", x * a * x, x, opts));
  rep.verdicts.push_back(compare("commute", "AX = XA", a * x, x * a, opts));
  rep.verdicts.push_back(compare("power", "A^(k+1) X = A^k, k = " + std::to_string(k), a * ak * x, ak, opts));
  return rep;
}

template <Scalar T>
VerifyReport check_wdrazin(const QMatrix<T>& a, const QMatrix<T>& w, const QMatrix<T>& x, const CheckOptions& opts) {
  if (w.rows() != a.cols() || w.cols() != a.rows()) throw DimensionError("check_wdrazin: weight has the wrong shape");
  require_shape(x, a.rows(), a.cols(), "check_wdrazin");
  VerifyReport rep;
  rep.kind = "wdrazin";
  const QMatrix<T> v = a * w;
  const QMatrix<T> u = w * a;
  const std::size_t k = std::max(index_of(v), index_of(u));
  const QMatrix<T> vk = mat_pow(v, k);
  const QMatrix<T> xw = x * w;
  const QMatrix<T> wx = w * x;
  rep.verdicts.push_back(
      compare("w_power", "(AW)^(k+1) XW = (AW)^k, k = " + std::to_string(k), v * vk * xw, vk, opts));
  rep.verdicts.push_back(compare("xwawx", "XWAWX = X", xw * v * x, x, opts));
  rep.verdicts.push_back(compare("awx_commute", "AWX = XWA", v * x, x * u, opts));
  rep.verdicts.push_back(drazin_verdict("xw_drazin_aw", "XW = (AW)^D", v, xw, opts));
  rep.verdicts.push_back(drazin_verdict("wx_drazin_wa", "WX = (WA)^D", u, wx, opts));
  return rep;
}

QMatrixD mp_oracle_embedding(const QMatrixD& a) {
  if (a.rows() == 0 || a.cols() == 0 || a.is_zero()) return QMatrixD(a.cols(), a.rows());
  const ComplexMatrix e = embed_complex(a);
  Eigen::JacobiSVD<ComplexMatrix> svd(e, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = 1e-10 * s(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index p = 0; p < s.size(); ++p)
    if (s(p) > cutoff) inv(p) = 1.0 / s(p);
  const ComplexMatrix pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  return unembed_complex(pinv);
}

std::complex<double> embedding_determinant(const QMatrixD& a) {
  if (!a.is_square()) throw DimensionError("embedding_determinant: matrix is not square");
  if (a.rows() == 0) return 1.0;
  return embed_complex(a).determinant();
}

std::size_t embedding_rank(const QMatrixD& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(embed_complex(a));
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index p = 0; p < s.size(); ++p)
    if (s(p) > rel_tol * s(0)) ++r;
  return r / 2;
}

template VerifyReport check_penrose(const QMatrixQ&, const QMatrixQ&, const CheckOptions&);
template VerifyReport check_penrose(const QMatrixD&, const QMatrixD&, const CheckOptions&);
template VerifyReport check_drazin(const QMatrixQ&, const QMatrixQ&, const CheckOptions&);
template VerifyReport check_drazin(const QMatrixD&, const QMatrixD&, const CheckOptions&);
template VerifyReport check_wdrazin(const QMatrixQ&, const QMatrixQ&, const QMatrixQ&, const CheckOptions&);
template VerifyReport check_wdrazin(const QMatrixD&, const QMatrixD&, const QMatrixD&, const CheckOptions&);

}  // namespace qdet::verify
