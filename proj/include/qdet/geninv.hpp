#pragma once

// Moore-Penrose, Drazin and W-weighted Drazin inverses by determinantal
// representations over the row and column determinants of ncdet.
//
// Ranks and indices are always computed from the inputs. In float mode they
// use the default relative tolerance of qdet::rank.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdet/matrix.hpp"
#include "qdet/ncdet.hpp"

namespace qdet::geninv {

using ncdet::Limits;

enum class MpRoute { cdet, rdet };
enum class DrazinRoute { mp_composition, cdet, rdet, hermitian_cdet, hermitian_rdet };
enum class WDrazinRoute { via_drazin_U, via_drazin_V, mp_route_V, mp_route_U, hermitian_V, hermitian_U };

std::string_view to_string(MpRoute route);
std::string_view to_string(DrazinRoute route);
std::string_view to_string(WDrazinRoute route);

std::optional<MpRoute> parse_mp_route(std::string_view name);
std::optional<DrazinRoute> parse_drazin_route(std::string_view name);
std::optional<WDrazinRoute> parse_wdrazin_route(std::string_view name);

const std::vector<MpRoute>& all_mp_routes();
const std::vector<DrazinRoute>& all_drazin_routes();
const std::vector<WDrazinRoute>& all_wdrazin_routes();

/// A^+ (n x m for m x n A). The cdet route sums column-replaced minors of
/// A*A, the rdet route row-replaced minors of AA*.
template <Scalar T>
QMatrix<T> mp_inverse(const QMatrix<T>& a, MpRoute route = MpRoute::cdet, const Limits& limits = {});

/// Reason the route cannot be used on `a`, or nullopt if it applies.
template <Scalar T>
std::optional<std::string> drazin_refusal(const QMatrix<T>& a, DrazinRoute route);

/// A^D of a square matrix. Throws PreconditionError for an inapplicable route.
template <Scalar T>
QMatrix<T> drazin(const QMatrix<T>& a, DrazinRoute route = DrazinRoute::cdet, const Limits& limits = {});

/// U = WA, V = AW and their indices; k = max(Ind V, Ind U).
template <Scalar T>
struct WeightedSetup {
  QMatrix<T> u;
  QMatrix<T> v;
  std::size_t ind_u = 0;
  std::size_t ind_v = 0;
  std::size_t k = 0;
};

/// Throws DimensionError unless A is m x n and W is n x m.
template <Scalar T>
WeightedSetup<T> weighted_setup(const QMatrix<T>& a, const QMatrix<T>& w);

/// Reason the route cannot be used on (A, W), or nullopt if it applies.
///
/// mp_route_V computes V^D W^+, which equals A_{d,W} exactly when the range
/// of ((WA)^k)* lies in the range of W. mp_route_U computes W^+ U^D, which
/// needs the range of (AW)^k inside the range of W*. The Hermitian routes
/// need AW (resp. WA) Hermitian.
template <Scalar T>
std::optional<std::string> wdrazin_refusal(const QMatrix<T>& a, const QMatrix<T>& w, WDrazinRoute route);

/// A_{d,W}, m x n. Throws PreconditionError for an inapplicable route.
template <Scalar T>
QMatrix<T> wdrazin(const QMatrix<T>& a, const QMatrix<T>& w, WDrazinRoute route = WDrazinRoute::via_drazin_U,
                   const Limits& limits = {});

/// Both resolvent forms at a finite lambda:
///   via_aw = (lambda I + (AW)^(k+2))^-1 (AW)^k A
///   via_wa = A (WA)^k (lambda I + (WA)^(k+2))^-1
struct LimitEstimate {
  QMatrixD via_aw;
  QMatrixD via_wa;
  std::size_t k = 0;
};

/// Throws PreconditionError if lambda <= 0 or a shifted matrix is singular.
LimitEstimate wdrazin_limit_estimate(const QMatrixD& a, const QMatrixD& w, double lambda);

/// One route's result in a run over all routes.
template <Scalar T>
struct RouteOutcome {
  std::string route;
  std::optional<QMatrix<T>> value;  ///< empty when the route was refused
  std::string refusal;
};

template <Scalar T>
std::vector<RouteOutcome<T>> mp_all_routes(const QMatrix<T>& a, const Limits& limits = {});
template <Scalar T>
std::vector<RouteOutcome<T>> drazin_all_routes(const QMatrix<T>& a, const Limits& limits = {});
template <Scalar T>
std::vector<RouteOutcome<T>> wdrazin_all_routes(const QMatrix<T>& a, const QMatrix<T>& w, const Limits& limits = {});

/// Whether every computed outcome equals the first one: exactly in exact
/// mode, within `tol` entrywise in float mode.
template <Scalar T>
bool outcomes_agree(const std::vector<RouteOutcome<T>>& outcomes, double tol = 1e-9);

}  // namespace qdet::geninv
