#include "qdet/geninv.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace qdet::geninv {
namespace {

using ncdet::cdet_minor_sum;
using ncdet::principal_minor_sum;
using ncdet::rdet_minor_sum;

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view name) {
  for (const auto& [value, text] : table)
    if (text == name) return value;
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [v, text] : table)
    if (v == value) return text;
  return "unknown";
}

constexpr std::array<std::pair<MpRoute, std::string_view>, 2> kMpNames{{
    {MpRoute::cdet, "cdet"},
    {MpRoute::rdet, "rdet"},
}};

constexpr std::array<std::pair<DrazinRoute, std::string_view>, 5> kDrazinNames{{
    {DrazinRoute::mp_composition, "mp_composition"},
    {DrazinRoute::cdet, "cdet"},
    {DrazinRoute::rdet, "rdet"},
    {DrazinRoute::hermitian_cdet, "hermitian_cdet"},
    {DrazinRoute::hermitian_rdet, "hermitian_rdet"},
}};

constexpr std::array<std::pair<WDrazinRoute, std::string_view>, 6> kWDrazinNames{{
    {WDrazinRoute::via_drazin_U, "via_drazin_U"},
    {WDrazinRoute::via_drazin_V, "via_drazin_V"},
    {WDrazinRoute::mp_route_V, "mp_route_V"},
    {WDrazinRoute::mp_route_U, "mp_route_U"},
    {WDrazinRoute::hermitian_V, "hermitian_V"},
    {WDrazinRoute::hermitian_U, "hermitian_U"},
}};

// Positive denominator of a minor-sum representation; zero means the rank
// bookkeeping is wrong, which is never papered over.
template <Scalar T>
T denominator(const QMatrix<T>& hermitian, std::size_t r, const Limits& limits, const char* what) {
  T den = principal_minor_sum(hermitian, r, limits);
  if (ScalarTraits<T>::is_zero(den))
    throw InconsistencyError(std::string(what) + ": principal minor sum of order " + std::to_string(r) +
                             " vanishes for a matrix of that rank");
  return den;
}

// x * y for a product known to be Hermitian (B* B, B B*, powers of a
// Hermitian matrix); float rounding is removed by mirroring the upper triangle.
template <Scalar T>
QMatrix<T> hermitian_product(const QMatrix<T>& x, const QMatrix<T>& y) {
  QMatrix<T> h = x * y;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    h(i, i) = Quaternion<T>(h(i, i)[0]);
    for (std::size_t j = i + 1; j < h.cols(); ++j) h(j, i) = h(i, j).conj();
  }
  return h;
}

template <Scalar T>
QMatrix<T> divided(QMatrix<T> x, const T& den) {
  for (auto& q : x.entries()) q = q / den;
  return x;
}

template <Scalar T>
QMatrix<T> mp_cdet(const QMatrix<T>& a, const Limits& limits) {
  const std::size_t r = rank(a);
  QMatrix<T> x(a.cols(), a.rows());
  if (r == 0) return x;
  const QMatrix<T> as = conj_transpose(a);
  const QMatrix<T> h = hermitian_product(as, a);
  const T den = denominator(h, r, limits, "mp_inverse");
  for (std::size_t j = 0; j < a.rows(); ++j) {
    const auto b = column(as, j);
    for (std::size_t i = 0; i < a.cols(); ++i) x(i, j) = cdet_minor_sum<T>(h, i, b, r, limits);
  }
  return divided(std::move(x), den);
}

template <Scalar T>
QMatrix<T> mp_rdet(const QMatrix<T>& a, const Limits& limits) {
  const std::size_t r = rank(a);
  QMatrix<T> x(a.cols(), a.rows());
  if (r == 0) return x;
  const QMatrix<T> as = conj_transpose(a);
  const QMatrix<T> h = hermitian_product(a, as);
  const T den = denominator(h, r, limits, "mp_inverse");
  for (std::size_t i = 0; i < a.cols(); ++i) {
    const auto b = row(as, i);
    for (std::size_t j = 0; j < a.rows(); ++j) x(i, j) = rdet_minor_sum<T>(h, j, b, r, limits);
  }
  return divided(std::move(x), den);
}

// x(i, j) = cdet_minor_sum(h, i, column j of rhs, r) / den.
template <Scalar T>
QMatrix<T> column_minor_matrix(const QMatrix<T>& h, const QMatrix<T>& rhs, std::size_t r, const Limits& limits) {
  QMatrix<T> x(h.rows(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    const auto b = column(rhs, j);
    for (std::size_t i = 0; i < h.rows(); ++i) x(i, j) = cdet_minor_sum<T>(h, i, b, r, limits);
  }
  return x;
}

// x(i, j) = rdet_minor_sum(h, j, row i of rhs, r).
template <Scalar T>
QMatrix<T> row_minor_matrix(const QMatrix<T>& h, const QMatrix<T>& rhs, std::size_t r, const Limits& limits) {
  QMatrix<T> x(rhs.rows(), h.cols());
  for (std::size_t i = 0; i < rhs.rows(); ++i) {
    const auto b = row(rhs, i);
    for (std::size_t j = 0; j < h.cols(); ++j) x(i, j) = rdet_minor_sum<T>(h, j, b, r, limits);
  }
  return x;
}

template <Scalar T>
void require_square(const QMatrix<T>& a, const char* what) {
  if (!a.is_square()) throw DimensionError(std::string(what) + " requires a square matrix");
}

}  // namespace

std::string_view to_string(MpRoute route) { return name_of(kMpNames, route); }
std::string_view to_string(DrazinRoute route) { return name_of(kDrazinNames, route); }
std::string_view to_string(WDrazinRoute route) { return name_of(kWDrazinNames, route); }

std::optional<MpRoute> parse_mp_route(std::string_view name) { return lookup(kMpNames, name); }
std::optional<DrazinRoute> parse_drazin_route(std::string_view name) { return lookup(kDrazinNames, name); }
std::optional<WDrazinRoute> parse_wdrazin_route(std::string_view name) { return lookup(kWDrazinNames, name); }

const std::vector<MpRoute>& all_mp_routes() {
  static const std::vector<MpRoute> routes{MpRoute::cdet, MpRoute::rdet};
  return routes;
}

const std::vector<DrazinRoute>& all_drazin_routes() {
  static const std::vector<DrazinRoute> routes{DrazinRoute::mp_composition, DrazinRoute::cdet, DrazinRoute::rdet,
                                               DrazinRoute::hermitian_cdet, DrazinRoute::hermitian_rdet};
  return routes;
}

const std::vector<WDrazinRoute>& all_wdrazin_routes() {
  static const std::vector<WDrazinRoute> routes{WDrazinRoute::via_drazin_U, WDrazinRoute::via_drazin_V,
                                                WDrazinRoute::mp_route_V,   WDrazinRoute::mp_route_U,
                                                WDrazinRoute::hermitian_V,  WDrazinRoute::hermitian_U};
  return routes;
}

template <Scalar T>
QMatrix<T> mp_inverse(const QMatrix<T>& a, MpRoute route, const Limits& limits) {
  return route == MpRoute::cdet ? mp_cdet(a, limits) : mp_rdet(a, limits);
}

template <Scalar T>
std::optional<std::string> drazin_refusal(const QMatrix<T>& a, DrazinRoute route) {
  require_square(a, "drazin");
  const bool hermitian_route = route == DrazinRoute::hermitian_cdet || route == DrazinRoute::hermitian_rdet;
  if (hermitian_route && !a.is_hermitian())
    return std::string(to_string(route)) + " requires a Hermitian matrix";
  return std::nullopt;
}

template <Scalar T>
QMatrix<T> drazin(const QMatrix<T>& a, DrazinRoute route, const Limits& limits) {
  if (auto why = drazin_refusal(a, route)) throw PreconditionError(*why);
  const std::size_t n = a.rows();
  const std::size_t k = index_of(a);
  const QMatrix<T> ak = mat_pow(a, k);
  const std::size_t r = rank(ak);
  if (r == 0) return QMatrix<T>(n, n);

  switch (route) {
    case DrazinRoute::mp_composition:
      return ak * mp_inverse(mat_pow(a, 2 * k + 1), MpRoute::cdet, limits) * ak;
    case DrazinRoute::cdet: {
      const QMatrix<T> b = mat_pow(a, 2 * k + 1);
      const QMatrix<T> bs = conj_transpose(b);
      const QMatrix<T> h = hermitian_product(bs, b);
      const T den = denominator(h, r, limits, "drazin");
      return divided(ak * column_minor_matrix(h, bs * ak, r, limits), den);
    }
    case DrazinRoute::rdet: {
      const QMatrix<T> b = mat_pow(a, 2 * k + 1);
      const QMatrix<T> bs = conj_transpose(b);
      const QMatrix<T> h = hermitian_product(b, bs);
      const T den = denominator(h, r, limits, "drazin");
      return divided(row_minor_matrix(h, ak * bs, r, limits) * ak, den);
    }
    case DrazinRoute::hermitian_cdet: {
      const QMatrix<T> h = hermitian_product(a, mat_pow(a, k));
      return divided(column_minor_matrix(h, ak, r, limits), denominator(h, r, limits, "drazin"));
    }
    case DrazinRoute::hermitian_rdet: {
      const QMatrix<T> h = hermitian_product(a, mat_pow(a, k));
      return divided(row_minor_matrix(h, ak, r, limits), denominator(h, r, limits, "drazin"));
    }
  }
  throw PreconditionError("unknown Drazin route");
}

template <Scalar T>
WeightedSetup<T> weighted_setup(const QMatrix<T>& a, const QMatrix<T>& w) {
  if (w.rows() != a.cols() || w.cols() != a.rows())
    throw DimensionError("weight must be " + std::to_string(a.cols()) + " x " + std::to_string(a.rows()) +
                         " for a " + std::to_string(a.rows()) + " x " + std::to_string(a.cols()) + " matrix");
  WeightedSetup<T> s;
  s.u = w * a;
  s.v = a * w;
  s.ind_u = index_of(s.u);
  s.ind_v = index_of(s.v);
  s.k = std::max(s.ind_u, s.ind_v);
  return s;
}

template <Scalar T>
std::optional<std::string> wdrazin_refusal(const QMatrix<T>& a, const QMatrix<T>& w, WDrazinRoute route) {
  const WeightedSetup<T> s = weighted_setup(a, w);
  switch (route) {
    case WDrazinRoute::via_drazin_U:
    case WDrazinRoute::via_drazin_V:
      return std::nullopt;
    case WDrazinRoute::mp_route_V:
      if (rank(hstack(w, conj_transpose(mat_pow(s.u, s.k)))) != rank(w))
        return std::string("mp_route_V requires the range of ((WA)^k)* inside the range of W");
      return std::nullopt;
    case WDrazinRoute::mp_route_U:
      if (rank(hstack(conj_transpose(w), mat_pow(s.v, s.k))) != rank(w))
        return std::string("mp_route_U requires the range of (AW)^k inside the range of W*");
      return std::nullopt;
    case WDrazinRoute::hermitian_V:
      if (!s.v.is_hermitian()) return std::string("hermitian_V requires AW to be Hermitian");
      return std::nullopt;
    case WDrazinRoute::hermitian_U:
      if (!s.u.is_hermitian()) return std::string("hermitian_U requires WA to be Hermitian");
      return std::nullopt;
  }
  return std::string("unknown route");
}

template <Scalar T>
QMatrix<T> wdrazin(const QMatrix<T>& a, const QMatrix<T>& w, WDrazinRoute route, const Limits& limits) {
  if (auto why = wdrazin_refusal(a, w, route)) throw PreconditionError(*why);
  const WeightedSetup<T> s = weighted_setup(a, w);
  const std::size_t k = s.k;

  switch (route) {
    case WDrazinRoute::via_drazin_U:
      return a * (drazin(s.u, DrazinRoute::cdet, limits) * drazin(s.u, DrazinRoute::rdet, limits));
    case WDrazinRoute::via_drazin_V:
      return (drazin(s.v, DrazinRoute::cdet, limits) * drazin(s.v, DrazinRoute::rdet, limits)) * a;
    default:
      break;
  }

  const QMatrix<T> vk = mat_pow(s.v, k);
  const QMatrix<T> uk = mat_pow(s.u, k);
  const std::size_t r = rank(vk);
  if (r == 0) return QMatrix<T>(a.rows(), a.cols());

  switch (route) {
    case WDrazinRoute::mp_route_V: {
      // V^k (V^(2k+1))^+ V^k W^+, both pseudo-inverses by the rdet route.
      const std::size_t r1 = rank(w);
      const QMatrix<T> b = mat_pow(s.v, 2 * k + 1);
      const QMatrix<T> bs = conj_transpose(b);
      const QMatrix<T> ws = conj_transpose(w);
      const QMatrix<T> hb = hermitian_product(b, bs), hw = hermitian_product(w, ws);
      const QMatrix<T> left = row_minor_matrix(hb, vk * bs, r, limits);
      const QMatrix<T> right = row_minor_matrix(hw, vk * ws, r1, limits);
      const T den = denominator(hb, r, limits, "wdrazin") * denominator(hw, r1, limits, "wdrazin");
      return divided(left * right, den);
    }
    case WDrazinRoute::mp_route_U: {
      // W^+ U^k (U^(2k+1))^+ U^k, both pseudo-inverses by the cdet route.
      const std::size_t r1 = rank(w);
      const QMatrix<T> c = mat_pow(s.u, 2 * k + 1);
      const QMatrix<T> cs = conj_transpose(c);
      const QMatrix<T> ws = conj_transpose(w);
      const QMatrix<T> hw = hermitian_product(ws, w), hc = hermitian_product(cs, c);
      const QMatrix<T> left = column_minor_matrix(hw, ws * uk, r1, limits);
      const QMatrix<T> right = column_minor_matrix(hc, cs * uk, r, limits);
      const T den = denominator(hw, r1, limits, "wdrazin") * denominator(hc, r, limits, "wdrazin");
      return divided(left * right, den);
    }
    case WDrazinRoute::hermitian_V: {
      const QMatrix<T> h = hermitian_product(s.v, mat_pow(s.v, k + 1));
      return divided(column_minor_matrix(h, vk * a, r, limits), denominator(h, r, limits, "wdrazin"));
    }
    case WDrazinRoute::hermitian_U: {
      const QMatrix<T> h = hermitian_product(s.u, mat_pow(s.u, k + 1));
      return divided(row_minor_matrix(h, a * uk, r, limits), denominator(h, r, limits, "wdrazin"));
    }
    default:
      break;
  }
  throw PreconditionError("unknown W-weighted Drazin route");
}

LimitEstimate wdrazin_limit_estimate(const QMatrixD& a, const QMatrixD& w, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw PreconditionError("lambda must be a positive real");
  const WeightedSetup<double> s = weighted_setup(a, w);
  const std::size_t k = s.k;
  const QMatrixD shifted_v = QMatrixD::identity(a.rows()) * lambda + mat_pow(s.v, k + 2);
  const QMatrixD shifted_u = QMatrixD::identity(a.cols()) * lambda + mat_pow(s.u, k + 2);
  LimitEstimate est;
  est.k = k;
  try {
    est.via_aw = solve_left(shifted_v, mat_pow(s.v, k) * a);
    // Y M = B  <=>  M* Y* = B*
    est.via_wa = conj_transpose(solve_left(conj_transpose(shifted_u), conj_transpose(a * mat_pow(s.u, k))));
  } catch (const PreconditionError&) {
    throw PreconditionError("shifted matrix is singular at lambda = " + std::to_string(lambda) +
                            "; choose another lambda");
  }
  return est;
}

template <Scalar T>
std::vector<RouteOutcome<T>> mp_all_routes(const QMatrix<T>& a, const Limits& limits) {
  std::vector<RouteOutcome<T>> out;
  for (MpRoute route : all_mp_routes()) out.push_back({std::string(to_string(route)), mp_inverse(a, route, limits), {}});
  return out;
}

template <Scalar T>
std::vector<RouteOutcome<T>> drazin_all_routes(const QMatrix<T>& a, const Limits& limits) {
  std::vector<RouteOutcome<T>> out;
  for (DrazinRoute route : all_drazin_routes()) {
    RouteOutcome<T> o{std::string(to_string(route)), std::nullopt, {}};
    if (auto why = drazin_refusal(a, route))
      o.refusal = *why;
    else
      o.value = drazin(a, route, limits);
    out.push_back(std::move(o));
  }
  return out;
}

template <Scalar T>
std::vector<RouteOutcome<T>> wdrazin_all_routes(const QMatrix<T>& a, const QMatrix<T>& w, const Limits& limits) {
  std::vector<RouteOutcome<T>> out;
  for (WDrazinRoute route : all_wdrazin_routes()) {
    RouteOutcome<T> o{std::string(to_string(route)), std::nullopt, {}};
    if (auto why = wdrazin_refusal(a, w, route))
      o.refusal = *why;
    else
      o.value = wdrazin(a, w, route, limits);
    out.push_back(std::move(o));
  }
  return out;
}

template <Scalar T>
bool outcomes_agree(const std::vector<RouteOutcome<T>>& outcomes, double tol) {
  const QMatrix<T>* first = nullptr;
  for (const auto& o : outcomes) {
    if (!o.value) continue;
    if (first == nullptr) {
      first = &*o.value;
      continue;
    }
    if (o.value->rows() != first->rows() || o.value->cols() != first->cols()) return false;
    if constexpr (std::is_same_v<T, Rational>) {
      if (*o.value != *first) return false;
    } else {
      if (max_abs_difference(*o.value, *first) > tol) return false;
    }
  }
  return true;
}

#define QDET_INSTANTIATE(T)                                                                                        \
  template QMatrix<T> mp_inverse(const QMatrix<T>&, MpRoute, const Limits&);                                      \
  template std::optional<std::string> drazin_refusal(const QMatrix<T>&, DrazinRoute);                            \
  template QMatrix<T> drazin(const QMatrix<T>&, DrazinRoute, const Limits&);                                      \
  template struct WeightedSetup<T>;                                                                               \
  template WeightedSetup<T> weighted_setup(const QMatrix<T>&, const QMatrix<T>&);                                 \
  template std::optional<std::string> wdrazin_refusal(const QMatrix<T>&, const QMatrix<T>&, WDrazinRoute);        \
  template QMatrix<T> wdrazin(const QMatrix<T>&, const QMatrix<T>&, WDrazinRoute, const Limits&);                 \
  template std::vector<RouteOutcome<T>> mp_all_routes(const QMatrix<T>&, const Limits&);                          \
  template std::vector<RouteOutcome<T>> drazin_all_routes(const QMatrix<T>&, const Limits&);                      \
  template std::vector<RouteOutcome<T>> wdrazin_all_routes(const QMatrix<T>&, const QMatrix<T>&, const Limits&);  \
  template bool outcomes_agree(const std::vector<RouteOutcome<T>>&, double);

QDET_INSTANTIATE(Rational)
QDET_INSTANTIATE(double)

#undef QDET_INSTANTIATE

}  // namespace qdet::geninv
