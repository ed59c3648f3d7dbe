#include <gtest/gtest.h>

#include "qdet/geninv.hpp"
#include "qdet/verify.hpp"
#include "support.hpp"

using namespace qdet;
using namespace qdet::geninv;
using qdet::testing::qi;
using qdet::testing::qj;
using qdet::testing::qk;

namespace {

const QuaternionQ O(0), E(1);

QMatrixQ example_a() { return {{O, qi, O}, {qk, E, qi}, {E, O, O}, {E, -qk, -qj}}; }
QMatrixQ example_w() { return {{qk, O, qi, O}, {-qj, qk, O, E}, {O, E, O, -qk}}; }

// Inverse of an upper-triangular 2x2 block [[a, b], [0, d]], padded with a
// zero third row and column: [[a^-1, -a^-1 b d^-1], [0, d^-1]].
QMatrixQ padded_block_inverse(const QuaternionQ& a, const QuaternionQ& b, const QuaternionQ& d) {
  return {{qinv(a), -(qinv(a) * b * qinv(d)), O}, {O, qinv(d), O}, {O, O, O}};
}

// (WA)^D for the example pair, from the 2x2 block of WA.
QMatrixQ example_u_drazin() { return padded_block_inverse(qi, qj, qk); }

template <typename Outcomes>
std::size_t computed(const Outcomes& outs) {
  std::size_t c = 0;
  for (const auto& o : outs) c += o.value.has_value();
  return c;
}

}  // namespace

TEST(RouteNames, RoundTrip) {
  for (MpRoute r : all_mp_routes()) EXPECT_EQ(parse_mp_route(to_string(r)), r);
  for (DrazinRoute r : all_drazin_routes()) EXPECT_EQ(parse_drazin_route(to_string(r)), r);
  for (WDrazinRoute r : all_wdrazin_routes()) EXPECT_EQ(parse_wdrazin_route(to_string(r)), r);
  EXPECT_FALSE(parse_mp_route("svd").has_value());
}

TEST(MoorePenrose, Examples) {
  for (MpRoute r : all_mp_routes()) {
    EXPECT_EQ(mp_inverse(QMatrixQ::identity(3), r), QMatrixQ::identity(3));
    EXPECT_EQ(mp_inverse(QMatrixQ(2, 3), r), QMatrixQ(3, 2));
    const QMatrixQ u5{{qi, QuaternionQ(2, 0, 3, 0), O}, {O, qk, O}, {O, O, O}};
    const QMatrixQ expected = padded_block_inverse(qi, QuaternionQ(2, 0, 3, 0), qk);
    EXPECT_EQ(expected(0, 1), QuaternionQ(3, 0, 2, 0));
    EXPECT_EQ(mp_inverse(u5, r), expected);
  }
}

TEST(MoorePenrose, RandomRoutesAgreeAndSatisfyPenrose) {
  qdet::testing::Random rng(61);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = rng.size(1, 3), n = rng.size(1, 3);
    const QMatrixQ a = t % 3 == 0 ? rng.low_rank(m, n, 1) : rng.matrix(m, n);
    const auto outs = mp_all_routes(a);
    EXPECT_TRUE(outcomes_agree(outs));
    EXPECT_TRUE(verify::check_penrose(a, *outs[0].value).passed());
  }
}

TEST(Drazin, Examples) {
  const QMatrixQ d{{qi, O}, {O, QuaternionQ(2)}};
  const QMatrixQ nil{{O, E}, {O, O}};
  const QMatrixQ u = example_w() * example_a();
  for (DrazinRoute r : {DrazinRoute::mp_composition, DrazinRoute::cdet, DrazinRoute::rdet}) {
    EXPECT_EQ(drazin(d, r), (QMatrixQ{{-qi, O}, {O, QuaternionQ(Rational(1, 2))}}));
    EXPECT_EQ(drazin(nil, r), QMatrixQ(2, 2));
    EXPECT_EQ(drazin(u, r), example_u_drazin());
  }
  EXPECT_EQ(example_u_drazin()(0, 1), E);
}

TEST(Drazin, HermitianRoutes) {
  qdet::testing::Random rng(62);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = rng.size(1, 3);
    const QMatrixQ b = rng.matrix(n, rng.size(1, 2));
    const QMatrixQ a = b * conj_transpose(b);
    const auto outs = drazin_all_routes(a);
    EXPECT_EQ(computed(outs), 5u);
    EXPECT_TRUE(outcomes_agree(outs));
    EXPECT_TRUE(verify::check_drazin(a, *outs[0].value).passed());
  }
  EXPECT_THROW(drazin(QMatrixQ{{E, E}, {O, E}}, DrazinRoute::hermitian_cdet), PreconditionError);
  EXPECT_THROW(drazin(QMatrixQ(2, 3)), DimensionError);
}

TEST(Drazin, RandomRoutesAgree) {
  qdet::testing::Random rng(63);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = rng.size(1, 3);
    const QMatrixQ a = t % 2 == 0 ? rng.low_rank(n, n, rng.size(1, n)) : rng.matrix(n, n);
    const auto outs = drazin_all_routes(a);
    EXPECT_TRUE(outcomes_agree(outs));
    for (const auto& o : outs) {
      if (o.value) {
        EXPECT_TRUE(verify::check_drazin(a, *o.value).passed()) << o.route;
      }
    }
  }
}

TEST(WeightedDrazin, ExampleDerivedValue) {
  const QMatrixQ a = example_a(), w = example_w();
  const QMatrixQ ud = example_u_drazin();
  const QMatrixQ expected = a * ud * ud;
  EXPECT_EQ(expected, (QMatrixQ{{O, -qi, O}, {-qk, -qj, O}, {-E, -qi - qk, O}, {-E, -qi, O}}));
  const WeightedSetup<Rational> s = weighted_setup(a, w);
  EXPECT_EQ(s.k, 2u);
  const auto outs = wdrazin_all_routes(a, w);
  for (const auto& o : outs) {
    if (o.value) {
      EXPECT_EQ(*o.value, expected) << o.route;
    }
  }
  EXPECT_EQ(computed(outs), 3u);
  EXPECT_TRUE(wdrazin_refusal(a, w, WDrazinRoute::mp_route_U).has_value());
  EXPECT_FALSE(wdrazin_refusal(a, w, WDrazinRoute::mp_route_V).has_value());
  EXPECT_THROW(wdrazin(a, w, WDrazinRoute::mp_route_U), PreconditionError);
}

TEST(WeightedDrazin, IdentityWeightIsDrazin) {
  qdet::testing::Random rng(64);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = rng.size(1, 3);
    const QMatrixQ a = rng.low_rank(n, n, rng.size(1, n));
    EXPECT_EQ(wdrazin(a, QMatrixQ::identity(n)), drazin(a));
  }
}

TEST(WeightedDrazin, ZeroMatrix) {
  qdet::testing::Random rng(65);
  const QMatrixQ w = rng.matrix(3, 2);
  for (WDrazinRoute r : {WDrazinRoute::via_drazin_U, WDrazinRoute::via_drazin_V})
    EXPECT_EQ(wdrazin(QMatrixQ(2, 3), w, r), QMatrixQ(2, 3));
  EXPECT_THROW(wdrazin(QMatrixQ(2, 3), QMatrixQ(2, 3)), DimensionError);
}

TEST(WeightedDrazin, HermitianSpecialCases) {
  qdet::testing::Random rng(66);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = rng.size(1, 3), n = rng.size(1, 3);
    const QMatrixQ a = rng.matrix(m, n);
    const QMatrixQ w = conj_transpose(a);
    const auto outs = wdrazin_all_routes(a, w);
    for (const auto& o : outs) {
      if (o.route == "hermitian_V" || o.route == "hermitian_U") {
        EXPECT_TRUE(o.value.has_value()) << o.route;
      }
    }
    EXPECT_TRUE(outcomes_agree(outs));
    EXPECT_TRUE(verify::check_wdrazin(a, w, *outs[0].value).passed());
  }
  EXPECT_THROW(wdrazin(example_a(), example_w(), WDrazinRoute::hermitian_V), PreconditionError);
}

TEST(WeightedDrazin, RandomRoutesAgree) {
  qdet::testing::Random rng(67);
  std::size_t mp_routes = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = rng.size(1, 3), n = rng.size(1, 3);
    const QMatrixQ a = t % 3 == 0 ? rng.low_rank(m, n, 1) : rng.matrix(m, n);
    const QMatrixQ w = t % 4 == 0 ? rng.low_rank(n, m, 1) : rng.matrix(n, m);
    const auto outs = wdrazin_all_routes(a, w);
    EXPECT_TRUE(outcomes_agree(outs));
    for (const auto& o : outs) {
      if (!o.value) continue;
      if (o.route.rfind("mp_", 0) == 0) ++mp_routes;
      EXPECT_TRUE(verify::check_wdrazin(a, w, *o.value).passed()) << o.route;
    }
  }
  EXPECT_GT(mp_routes, 20u);
}

TEST(LimitEstimate, ExampleConvergesToExact) {
  const QMatrixD a = to_double(example_a()), w = to_double(example_w());
  const QMatrixD exact = to_double(wdrazin(example_a(), example_w()));
  double previous_aw = 1e300, previous_wa = 1e300;
  for (double lambda : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const LimitEstimate est = wdrazin_limit_estimate(a, w, lambda);
    const double e_aw = max_abs_difference(est.via_aw, exact);
    const double e_wa = max_abs_difference(est.via_wa, exact);
    EXPECT_LT(e_aw, previous_aw);
    EXPECT_LT(e_wa, previous_wa);
    previous_aw = e_aw;
    previous_wa = e_wa;
  }
  EXPECT_LT(previous_aw, 1e-5);
  EXPECT_LT(previous_wa, 1e-5);
}

TEST(LimitEstimate, HermitianInvertibleGivesInverse) {
  const QMatrixQ h{{QuaternionQ(2), qi}, {-qi, QuaternionQ(2)}};
  const LimitEstimate est = wdrazin_limit_estimate(to_double(h), QMatrixD::identity(2), 1e-10);
  EXPECT_LT(max_abs_difference(est.via_aw, to_double(ncdet::hermitian_inverse(h))), 1e-8);
  EXPECT_LT(max_abs_difference(est.via_wa, to_double(ncdet::hermitian_inverse(h))), 1e-8);
  EXPECT_THROW(wdrazin_limit_estimate(to_double(h), QMatrixD::identity(2), 0.0), PreconditionError);
}

TEST(LimitEstimate, SingularShiftIsReported) {
  // lambda I + A^2 with A^2 = -I is singular at lambda = 1.
  const QMatrixD a{{QuaternionD(0.0, 1.0, 0.0, 0.0)}};
  EXPECT_THROW(wdrazin_limit_estimate(a, QMatrixD::identity(1), 1.0), PreconditionError);
}

TEST(DeterminantalIdentities, ReplacedColumnRankBound) {
  qdet::testing::Random rng(68);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = rng.size(1, 3), n = rng.size(1, 3);
    const QMatrixQ a = rng.matrix(m, n), w = rng.low_rank(n, m, rng.size(1, 2));
    const WeightedSetup<Rational> s = weighted_setup(a, w);
    const QMatrixQ vk2 = mat_pow(s.v, s.k + 2), vbar = mat_pow(s.v, s.k) * a;
    const QMatrixQ uk2 = mat_pow(s.u, s.k + 2), ubar = a * mat_pow(s.u, s.k);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) EXPECT_LE(rank(replace_column<Rational>(vk2, i, column(vbar, j))), rank(vk2));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_LE(rank(replace_row<Rational>(uk2, j, row(ubar, i))), rank(uk2));
  }
}

TEST(DeterminantalIdentities, ShiftedColumnDeterminantExpansion) {
  qdet::testing::Random rng(69);
  for (int t = 0; t < 15; ++t) {
    const std::size_t m = rng.size(1, 3), n = rng.size(1, 3);
    const QMatrixQ a = rng.matrix(m, n);
    const QMatrixQ w = conj_transpose(a);
    const WeightedSetup<Rational> s = weighted_setup(a, w);
    ASSERT_TRUE(s.v.is_hermitian());
    const QMatrixQ vk2 = mat_pow(s.v, s.k + 2), vbar = mat_pow(s.v, s.k) * a;
    const std::size_t i = rng.size(0, m - 1), j = rng.size(0, n - 1);
    const auto b = column(vbar, j);
    std::vector<QuaternionQ> c;
    for (std::size_t order = 1; order <= m; ++order) c.push_back(ncdet::cdet_minor_sum<Rational>(vk2, i, b, order));
    for (int l = -1; l <= static_cast<int>(m); ++l) {
      const Rational lambda(l);
      const QMatrixQ shifted = replace_column<Rational>(QMatrixQ::identity(m) * lambda + vk2, i, b);
      QuaternionQ expansion;
      for (std::size_t order = 1; order <= m; ++order) {
        Rational power(1);
        for (std::size_t e = 0; e < m - order; ++e) power *= lambda;
        expansion += c[order - 1] * power;
      }
      EXPECT_EQ(ncdet::cdet(i, shifted), expansion);
    }
  }
}

TEST(FloatMode, MpMatchesEmbeddingOracle) {
  qdet::testing::Random rng(70);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = rng.size(1, 4), n = rng.size(1, 4);
    const QMatrixD a = rng.matrix_d(m, n);
    EXPECT_LT(max_abs_difference(mp_inverse(a), verify::mp_oracle_embedding(a)), 1e-9);
  }
}

TEST(FloatMode, AllRoutesOnWorkedExample) {
  const QMatrixD a = to_double(example_a()), w = to_double(example_w());
  const QMatrixD expected = to_double(wdrazin(example_a(), example_w()));
  for (const auto& o : wdrazin_all_routes(a, w)) {
    if (o.value) {
      EXPECT_LT(max_abs_difference(*o.value, expected), 1e-9) << o.route;
    }
  }
  qdet::testing::Random rng(71);
  for (int t = 0; t < 30; ++t) {
    const QMatrixD b = rng.matrix_d(3, 3);
    QMatrixD h = b * conj_transpose(b);
    for (std::size_t i = 0; i < 3; ++i) {
      h(i, i) = QuaternionD(h(i, i)[0]);
      for (std::size_t j = i + 1; j < 3; ++j) h(j, i) = h(i, j).conj();
    }
    const auto outs = drazin_all_routes(h);
    EXPECT_EQ(computed(outs), outs.size());
    EXPECT_TRUE(outcomes_agree(outs, 1e-7));
  }
}
