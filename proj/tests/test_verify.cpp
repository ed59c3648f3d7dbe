#include <gtest/gtest.h>

#include "qdet/qmat_io.hpp"
#include "qdet/verify.hpp"
#include "support.hpp"

using namespace qdet;
using namespace qdet::verify;
using qdet::testing::qi;
using qdet::testing::qj;
using qdet::testing::qk;

namespace {

const QuaternionQ O(0), E(1);

QMatrixQ example_a() { return {{O, qi, O}, {qk, E, qi}, {E, O, O}, {E, -qk, -qj}}; }
QMatrixQ example_w() { return {{qk, O, qi, O}, {-qj, qk, O, E}, {O, E, O, -qk}}; }
QMatrixQ u5() { return {{qi, QuaternionQ(2, 0, 3, 0), O}, {O, qk, O}, {O, O, O}}; }
QMatrixQ derived_wdrazin() { return {{O, -qi, O}, {-qk, -qj, O}, {-E, -qi - qk, O}, {-E, -qi, O}}; }

}  // namespace

TEST(CheckPenrose, Examples) {
  EXPECT_TRUE(check_penrose(QMatrixQ::identity(3), QMatrixQ::identity(3)).passed());
  const QMatrixQ derived{{-qi, QuaternionQ(3, 0, 2, 0), O}, {O, -qk, O}, {O, O, O}};
  EXPECT_TRUE(check_penrose(u5(), derived).passed());
  EXPECT_THROW(check_penrose(QMatrixQ(2, 3), QMatrixQ(2, 3)), DimensionError);
}

TEST(CheckDrazin, Examples) {
  EXPECT_TRUE(check_drazin(QMatrixQ::identity(2), QMatrixQ::identity(2)).passed());
  const QMatrixQ u = example_w() * example_a();
  EXPECT_TRUE(check_drazin(u, QMatrixQ{{-qi, E, O}, {O, -qk, O}, {O, O, O}}).passed());
  EXPECT_TRUE(check_drazin(QMatrixQ{{O, E}, {O, O}}, QMatrixQ(2, 2)).passed());
  const VerifyReport bad = check_drazin(QMatrixQ{{O, E}, {O, O}}, QMatrixQ::identity(2));
  EXPECT_FALSE(bad.passed());
}

TEST(CheckWDrazin, Examples) {
  const QMatrixQ a{{E, E}, {O, O}};
  EXPECT_TRUE(check_wdrazin(a, QMatrixQ::identity(2), QMatrixQ{{E, E}, {O, O}}).passed());
  const VerifyReport rep = check_wdrazin(example_a(), example_w(), derived_wdrazin());
  EXPECT_TRUE(rep.passed());
  const QMatrixQ wx = example_w() * derived_wdrazin();
  EXPECT_EQ(wx, (QMatrixQ{{-qi, E, O}, {O, -qk, O}, {O, O, O}}));
  ASSERT_NE(rep.find("wx_drazin_wa"), nullptr);
  EXPECT_TRUE(rep.find("wx_drazin_wa")->passed);
}

// Three plausible-looking values for the worked example that the defining
// equations reject; these verdicts are what the checkers produce.
TEST(WorkedExampleErrata, PseudoInverseSign) {
  const QMatrixQ wrong{{-qi, QuaternionQ(-3, 0, 2, 0), O}, {O, -qk, O}, {O, O, O}};
  const VerifyReport rep = check_penrose(u5(), wrong);
  EXPECT_FALSE(rep.find("axa")->passed);
  const QMatrixQ axa = u5() * wrong * u5();
  EXPECT_EQ(axa(0, 1), QuaternionQ(2, 0, 9, 0));
  EXPECT_EQ(u5()(0, 1), QuaternionQ(2, 0, 3, 0));
}

TEST(WorkedExampleErrata, DrazinEntry) {
  const QMatrixQ u = example_w() * example_a();
  const QMatrixQ wrong{{-qi, QuaternionQ(-5), O}, {O, -qk, O}, {O, O, O}};
  EXPECT_FALSE(check_drazin(u, wrong).passed());
}

TEST(WorkedExampleErrata, BothWrongWeightedDrazinCandidatesFail) {
  for (const char* name : {"candidate_wrong_1.qmat", "candidate_wrong_2.qmat"}) {
    const QmatFile f = read_qmat_file(qdet::testing::data_path(name));
    const VerifyReport rep = check_wdrazin(example_a(), example_w(), f.exact);
    EXPECT_FALSE(rep.passed()) << name;
    for (const auto& v : rep.verdicts) EXPECT_FALSE(v.passed) << name << " " << v.key;
  }
  EXPECT_TRUE(check_wdrazin(example_a(), example_w(), derived_wdrazin()).passed());
}

TEST(Report, Serialization) {
  VerifyReport rep = check_penrose(QMatrixQ::identity(2), QMatrixQ::identity(2));
  rep.provenance = "route cdet";
  rep.notes.push_back("sample note");
  const std::string kv = rep.to_kv();
  EXPECT_NE(kv.find("check.kind = penrose\n"), std::string::npos);
  EXPECT_NE(kv.find("check.axa = pass\n"), std::string::npos);
  EXPECT_NE(kv.find("check.note.1 = sample note\n"), std::string::npos);
  EXPECT_NE(kv.find("check.passed = true\n"), std::string::npos);
  const std::string text = rep.to_text();
  EXPECT_EQ(text.rfind("% check penrose (route cdet): PASS", 0), 0u);
  for (std::size_t p = 0; p < text.size(); p = text.find('\n', p) + 1) {
    if (p >= text.size()) break;
    EXPECT_EQ(text[p], '%');
  }
}

TEST(Report, FloatResiduals) {
  QMatrixD x = QMatrixD::identity(2);
  x(0, 0) = QuaternionD(1.0 + 1e-6, 0.0, 0.0, 0.0);
  const VerifyReport rep = check_penrose(QMatrixD::identity(2), x);
  EXPECT_FALSE(rep.passed());
  EXPECT_GT(rep.find("axa")->residual, 0.0);
  EXPECT_FALSE(rep.find("axa")->exact);
  EXPECT_TRUE(check_penrose(QMatrixD::identity(2), x, CheckOptions{1e-5}).passed());
  EXPECT_NE(rep.to_kv().find("check.axa.residual = "), std::string::npos);
}

TEST(EmbeddingOracle, Examples) {
  EXPECT_EQ(mp_oracle_embedding(QMatrixD::identity(3)).rows(), 3u);
  EXPECT_LT(max_abs_difference(mp_oracle_embedding(QMatrixD::identity(3)), QMatrixD::identity(3)), 1e-12);
  EXPECT_EQ(mp_oracle_embedding(QMatrixD(2, 3)), QMatrixD(3, 2));
  qdet::testing::Random rng(81);
  for (int t = 0; t < 30; ++t) {
    const QMatrixQ a = rng.low_rank(3, 2, 1);
    if (a.is_zero()) continue;
    const QMatrixD x = mp_oracle_embedding(to_double(a));
    EXPECT_TRUE(check_penrose(to_double(a), x).passed());
    EXPECT_EQ(embedding_rank(to_double(a)), rank(a));
  }
}
