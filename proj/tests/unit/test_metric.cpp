#include <gtest/gtest.h>

#include <cmath>

#include <lieiso/metric.hpp>

using namespace lieiso;

namespace {

Mat3 eq6_element(double a10, double a20, double a21, double mu, double nu) {
  Mat3 m;
  m << 0, -a10 * mu, -a20 * nu, a10, 0, -a21 * nu / mu, a20, a21, 0;
  return m;
}

Mat3 skew_above_element(double a11, double a20, double a21, double mu, double nu) {
  Mat3 m;
  m << -a11, -a11 * mu, -(a20 * mu - a21) * nu / (mu - 1), a11, a11, (a20 - a21) * nu / (mu - 1),
      a20, a21, 0;
  return m;
}

bool is_skew(const Mat3& m, const Mat3& s, double tol = 1e-12) {
  return (m.transpose() * s + s * m).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST(MetricTable, DiagonalFamilies) {
  const Mat3 gi = metric_from_table(make_algebra_I(), MetricParams::g_nu(2.0)).coeffs();
  EXPECT_EQ(gi, Vec3(1, 1, 2).asDiagonal().toDenseMatrix());
  const Mat3 g0 = metric_from_table(make_algebra_c(0.0), MetricParams::g_mu_nu(3, 0.5)).coeffs();
  EXPECT_EQ(g0, Vec3(1, 3, 0.5).asDiagonal().toDenseMatrix());
  const Mat3 gn = metric_from_table(make_algebra_c(-2.0), MetricParams::g_mu_nu(1.5, 1)).coeffs();
  EXPECT_EQ(gn, Vec3(1, 1.5, 1).asDiagonal().toDenseMatrix());
}

TEST(MetricTable, OffDiagonalFamilies) {
  Mat3 expect;
  expect << 1, 0.5, 0, 0.5, 1, 0, 0, 0, 3;
  EXPECT_EQ(metric_from_table(make_algebra_c(0.0), MetricParams::g_nu(3)).coeffs(), expect);
  expect << 1, 0.25, 0, 0.25, 1, 0, 0, 0, 2;
  EXPECT_EQ(metric_from_table(make_algebra_c(1.0), MetricParams::g_lambda_nu(0.25, 2)).coeffs(),
            expect);
  expect << 1, 1, 0, 1, 3, 0, 0, 0, 2;
  EXPECT_EQ(metric_from_table(make_algebra_c(4.0), MetricParams::g_mu_nu(3, 2)).coeffs(), expect);
}

TEST(MetricTable, BetweenUsesChangeOfBasis) {
  const double c = 0.25, mu = 0.3, nu = 1.5;
  const Mat3 p = table_p_matrix(c);
  Mat3 m;
  m << 1, mu, 0, mu, 1, 0, 0, 0, nu;
  const Mat3 g = metric_from_table(make_algebra_c(c), MetricParams::g_mu_nu(mu, nu)).coeffs();
  EXPECT_LT((g - p.transpose() * m * p).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_TRUE(is_positive_definite(g));
  // The change of basis diagonalizes ad(e2) on span(e0, e1).
  const Mat2 a = make_algebra_c(c).ad(Vec3(0, 0, 1)).topLeftCorner<2, 2>();
  const Mat2 d = p.topLeftCorner<2, 2>() * a * p.topLeftCorner<2, 2>().inverse();
  EXPECT_NEAR(d(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(d(1, 0), 0.0, 1e-12);
}

TEST(MetricTable, EveryShapeIsPositiveDefiniteOnItsRange) {
  for (double nu : {0.25, 1.0, 4.0}) {
    for (double f : {0.05, 0.5, 0.95}) {
      EXPECT_TRUE(is_positive_definite(
          metric_from_table(make_algebra_c(-3), MetricParams::g_mu_nu(3 * f, nu)).coeffs()));
      EXPECT_TRUE(is_positive_definite(
          metric_from_table(make_algebra_c(0.6), MetricParams::g_mu_nu(f, nu)).coeffs()));
      EXPECT_TRUE(is_positive_definite(
          metric_from_table(make_algebra_c(1), MetricParams::g_lambda_nu(f, nu)).coeffs()));
      EXPECT_TRUE(is_positive_definite(
          metric_from_table(make_algebra_c(5), MetricParams::g_mu_nu(1 + 4 * f, nu)).coeffs()));
    }
  }
}

TEST(MetricTable, RangeErrorsNameTheConstraint) {
  try {
    metric_from_table(make_algebra_c(-2.0), MetricParams::g_mu_nu(3.0, 1.0));
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    EXPECT_EQ(e.constraint(), "0 < mu <= |c|, 0 < nu");
  }
  EXPECT_THROW(metric_from_table(make_algebra_c(4.0), MetricParams::g_mu_nu(5.0, 1.0)),
               RangeError);
  EXPECT_THROW(metric_from_table(make_algebra_c(0.5), MetricParams::g_mu_nu(1.0, 1.0)),
               RangeError);
  EXPECT_THROW(metric_from_table(make_algebra_c(1.0), MetricParams::g_lambda_nu(1.0, 1.0)),
               RangeError);
  EXPECT_THROW(metric_from_table(make_algebra_I(), MetricParams::g_nu(-1.0)), RangeError);
  EXPECT_THROW(metric_from_table(make_algebra_I(), MetricParams::g_mu_nu(1.0, 1.0)), RangeError);
  EXPECT_THROW(metric_from_table(make_algebra_c(2.0), MetricParams::g_nu(1.0)), RangeError);
}

TEST(MetricTable, CustomAlgebraIsRejected) {
  const LieAlgebra3 custom(make_algebra_c(2.0).structure());
  EXPECT_THROW(metric_from_table(custom, MetricParams::g_nu(1.0)), std::invalid_argument);
}

TEST(Snapping, MovesNearBoundaryParameters) {
  const InnerProduct g =
      metric_from_table(make_algebra_c(4.0), MetricParams::g_mu_nu(4.0 - 5e-8, 1.0));
  EXPECT_TRUE(g.boundary_snapped());
  EXPECT_EQ(g.params().mu, 4.0);
  const InnerProduct h = metric_from_table(make_algebra_c(4.0), MetricParams::g_mu_nu(3.9, 1.0));
  EXPECT_FALSE(h.boundary_snapped());

  const SnapResult s = snap_to_strata(FamilyTag::c(9.0), MetricParams::g_mu_nu(5.0 + 1e-8, 1), 1e-7);
  EXPECT_TRUE(s.snapped);
  EXPECT_EQ(s.params.mu, 5.0);
  const SnapResult z = snap_to_strata(FamilyTag::c(3e-8), MetricParams::g_nu(1.0), 1e-7);
  EXPECT_EQ(z.c, 0.0);
}

TEST(Snapping, BetweenRegimeBoundaries) {
  const SnapResult s =
      snap_to_strata(FamilyTag::c(0.25), MetricParams::g_mu_nu(0.5 + 2e-8, 1.0), 1e-7);
  EXPECT_TRUE(s.snapped);
  EXPECT_EQ(s.params.mu, 0.5);
  const SnapResult z = snap_to_strata(FamilyTag::c(0.25), MetricParams::g_mu_nu(1e-9, 1.0), 1e-7);
  EXPECT_EQ(z.params.mu, 0.0);
}

TEST(Gram, RejectsIndefiniteAndAsymmetric) {
  Mat3 bad;
  bad << 1, 2, 0, 2, 1, 0, 0, 0, 1;
  EXPECT_THROW(InnerProduct::from_gram(bad), InvalidGramError);
  bad << 1, 0.1, 0, 0, 1, 0, 0, 0, 1;
  EXPECT_THROW(InnerProduct::from_gram(bad), InvalidGramError);
  EXPECT_NO_THROW(InnerProduct::from_gram(Mat3::Identity()));
}

TEST(SkewAlgebra, DiagonalMetricMatchesClosedForm) {
  for (double mu : {0.5, 2.0}) {
    for (double nu : {0.5, 3.0}) {
      const Mat3 s = Vec3(1, mu, nu).asDiagonal();
      const SkewAlgebraBasis so = skew_algebra(s);
      ASSERT_EQ(so.dim(), 3);
      EXPECT_EQ(so.labels, (std::vector<std::string>{"a_10", "a_20", "a_21"}));
      EXPECT_LT((so.basis[0] - eq6_element(1, 0, 0, mu, nu)).cwiseAbs().maxCoeff(), 1e-14);
      EXPECT_LT((so.basis[1] - eq6_element(0, 1, 0, mu, nu)).cwiseAbs().maxCoeff(), 1e-14);
      EXPECT_LT((so.basis[2] - eq6_element(0, 0, 1, mu, nu)).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(SkewAlgebra, AboveMetricMatchesClosedForm) {
  const double mu = 3.0, nu = 2.0;
  const Mat3 s = metric_from_table(make_algebra_c(4), MetricParams::g_mu_nu(mu, nu)).coeffs();
  const SkewAlgebraBasis so = skew_algebra(s);
  ASSERT_EQ(so.dim(), 3);
  EXPECT_EQ(so.labels, (std::vector<std::string>{"a_11", "a_20", "a_21"}));
  EXPECT_LT((so.basis[0] - skew_above_element(1, 0, 0, mu, nu)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((so.basis[1] - skew_above_element(0, 1, 0, mu, nu)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((so.basis[2] - skew_above_element(0, 0, 1, mu, nu)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SkewAlgebra, IndefiniteFormsAreAllowed) {
  const Mat3 s = Vec3(1, -2, 3).asDiagonal();
  const SkewAlgebraBasis so = skew_algebra(s);
  EXPECT_EQ(so.dim(), 3);
  for (const Mat3& m : so.basis) EXPECT_TRUE(is_skew(m, s));
}

TEST(SkewAlgebra, DegenerateFormReportsRank) {
  const Mat3 s = Vec3(1, 0, 2).asDiagonal();
  try {
    skew_algebra(s);
    FAIL() << "expected DegenerateFormError";
  } catch (const DegenerateFormError& e) {
    EXPECT_EQ(e.rank(), 2);
  }
  // The stabilizer of a rank-2 form is 4-dimensional.
  const SkewAlgebraBasis st = stabilizer(s);
  EXPECT_EQ(st.dim(), 4);
  for (const Mat3& m : st.basis) EXPECT_TRUE(is_skew(m, s));
}

TEST(SkewAlgebra, IntersectionOfTwoOrthogonalAlgebras) {
  const Mat3 a = Mat3::Identity();
  const Mat3 b = Vec3(1, 1, 2).asDiagonal();
  const SkewAlgebraBasis both = intersect_skew(skew_algebra(a), skew_algebra(b));
  ASSERT_EQ(both.dim(), 1);
  EXPECT_TRUE(is_skew(both.basis[0], a));
  EXPECT_TRUE(is_skew(both.basis[0], b));
  EXPECT_EQ(both.basis[0](1, 0), 1.0);
}

TEST(SkewAlgebra, CanonicalSpanIsBasisIndependent) {
  const Mat3 s = Vec3(1, 2, 3).asDiagonal();
  const SkewAlgebraBasis so = skew_algebra(s);
  const std::vector<Mat3> mixed{so.basis[0] + 2 * so.basis[1], so.basis[1] - so.basis[2],
                                3 * so.basis[2]};
  const SkewAlgebraBasis canon = canonical_span(mixed);
  ASSERT_EQ(canon.dim(), 3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT((canon.basis[static_cast<std::size_t>(i)] - so.basis[static_cast<std::size_t>(i)])
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
  EXPECT_EQ(canonical_span({}).dim(), 0);
}

TEST(Regime, Classification) {
  EXPECT_EQ(regime_of(-1.0), CRegime::Negative);
  EXPECT_EQ(regime_of(0.0), CRegime::Zero);
  EXPECT_EQ(regime_of(0.5), CRegime::Between);
  EXPECT_EQ(regime_of(1.0), CRegime::One);
  EXPECT_EQ(regime_of(1.0 + 1e-9, 1e-7), CRegime::One);
  EXPECT_EQ(regime_of(2.0), CRegime::Above);
  EXPECT_EQ(to_string(CRegime::Between), "0<c<1");
}
