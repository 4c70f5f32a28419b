#include <gtest/gtest.h>

#include <random>

#include <closed_forms.hpp>
#include <lieiso/curvature.hpp>

using namespace lieiso;
using namespace lieiso::testing;

namespace {

CurvatureData curvature_of(const FamilyTag& family, const MetricParams& p) {
  const LieAlgebra3 alg = make_algebra(family);
  return compute_curvature(alg, metric_from_table(alg, p));
}

double max_diff(const Mat3& a, const Mat3& b) { return (a - b).cwiseAbs().maxCoeff(); }

Mat3 random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Mat3 m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = u(rng);
  return m;
}

}  // namespace

TEST(Ricci, ZeroFamilyAtUnitParameters) {
  const Mat3 ric = curvature_of(FamilyTag::c(0), MetricParams::g_mu_nu(1, 1)).ricci;
  EXPECT_LT(max_diff(ric, sym3(-0.5, -2, -3.5, -4.5)), 1e-12);
}

TEST(Ricci, ClosedFormsAcrossRegimes) {
  for (double nu : {0.5, 1.0, 2.0, 3.5}) {
    for (double f : {0.2, 0.5, 0.9}) {
      const double mu0 = 0.25 + 4 * f;
      EXPECT_LT(max_diff(curvature_of(FamilyTag::c(0), MetricParams::g_mu_nu(mu0, nu)).ricci,
                         ricci_zero_mu_nu(mu0, nu)),
                1e-9);
      EXPECT_LT(max_diff(curvature_of(FamilyTag::c(1), MetricParams::g_mu_nu(f, nu)).ricci,
                         ricci_one_mu_nu(f, nu)),
                1e-9);
      EXPECT_LT(max_diff(curvature_of(FamilyTag::c(1), MetricParams::g_lambda_nu(f, nu)).ricci,
                         ricci_one_lambda_nu(f, nu)),
                1e-9);
      for (double c : {-3.0, -0.5}) {
        const double mu = f * std::abs(c);
        EXPECT_LT(max_diff(curvature_of(FamilyTag::c(c), MetricParams::g_mu_nu(mu, nu)).ricci,
                           ricci_negative(c, mu, nu)),
                  1e-9);
      }
      for (double c : {0.1, 0.25, 0.8}) {
        EXPECT_LT(max_diff(curvature_of(FamilyTag::c(c), MetricParams::g_mu_nu(f, nu)).ricci,
                           ricci_between(c, f, nu)),
                  1e-9);
      }
      for (double c : {2.0, 4.0, 9.0}) {
        const double mu = 1 + f * (c - 1);
        EXPECT_LT(max_diff(curvature_of(FamilyTag::c(c), MetricParams::g_mu_nu(mu, nu)).ricci,
                           ricci_above(c, mu, nu)),
                  1e-9);
      }
    }
  }
}

TEST(Ricci, FamilyIIsEinstein) {
  for (double nu : {0.5, 1.0, 2.0}) {
    const LieAlgebra3 alg = make_algebra_I();
    const InnerProduct g = metric_from_table(alg, MetricParams::g_nu(nu));
    const CurvatureData cd = compute_curvature(alg, g);
    EXPECT_LT(max_diff(cd.ricci, -(2 / nu) * g.coeffs()), 1e-12);
    EXPECT_NEAR(cd.scalar, -6 / nu, 1e-12);
    EXPECT_NEAR(cd.sectional.min, -1 / nu, 1e-12);
    EXPECT_NEAR(cd.sectional.max, -1 / nu, 1e-12);
  }
}

TEST(Ricci, ScalarCurvatureBetween) {
  for (double c : {0.1, 0.5, 0.9}) {
    for (double mu : {0.0, 0.3, 0.7}) {
      EXPECT_NEAR(curvature_of(FamilyTag::c(c), MetricParams::g_mu_nu(mu, 2.0)).scalar,
                  scalar_between(c, mu, 2.0), 1e-9);
    }
  }
}

TEST(Curvature, TensorSymmetries) {
  const LieAlgebra3 alg = make_algebra_c(2.5);
  const InnerProduct g = metric_from_table(alg, MetricParams::g_mu_nu(1.7, 0.8));
  const CurvatureData cd = compute_curvature(alg, g);
  const Mat3& G = g.coeffs();
  // Lowered R_{wxyz} = <R(e_x,e_y)e_z, e_w>.
  auto low = [&](int w, int x, int y, int z) {
    double s = 0;
    for (int l = 0; l < 3; ++l) s += G(w, l) * cd.r(l, x, y, z);
    return s;
  };
  double worst = 0;
  for (int w = 0; w < 3; ++w)
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z) {
          worst = std::max(worst, std::abs(low(w, x, y, z) + low(w, y, x, z)));
          worst = std::max(worst, std::abs(low(w, x, y, z) + low(z, x, y, w)));
          worst = std::max(worst, std::abs(low(w, x, y, z) - low(y, z, w, x)));
        }
  EXPECT_LT(worst, 1e-12);
}

TEST(Curvature, IdentitiesOnRandomMetrics) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const RandomCatalogPoint pt = random_catalog_point(rng);
    const LieAlgebra3 alg = make_algebra(pt.family);
    const InnerProduct g = metric_from_table(alg, pt.params);
    const CurvatureData cd = compute_curvature(alg, g);
    const double scale = 1 + cd.r.max_abs();
    EXPECT_LT(metric_compatibility_defect(cd.conn, g), 1e-10);
    EXPECT_LT(torsion_defect(cd.conn, alg), 1e-12);
    EXPECT_LT(bianchi1_defect(cd.r), 1e-9 * scale);
    EXPECT_LT(bianchi2_defect(cd.dr), 1e-9 * (1 + cd.dr.max_abs()));
    EXPECT_LE(cd.sectional.min, cd.sectional.max);
  }
}

TEST(Curvature, SectionalRangeBoundsRandomPlanes) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  const LieAlgebra3 alg = make_algebra_c(-2);
  const InnerProduct g = metric_from_table(alg, MetricParams::g_mu_nu(0.7, 1.3));
  const CurvatureData cd = compute_curvature(alg, g);
  for (int i = 0; i < 200; ++i) {
    const Vec3 x(u(rng), u(rng), u(rng)), y(u(rng), u(rng), u(rng));
    const double k = sectional_curvature(cd.r, g, x, y);
    EXPECT_GE(k, cd.sectional.min - 1e-12);
    EXPECT_LE(k, cd.sectional.max + 1e-12);
  }
}

TEST(Curvature, EndomorphismIsBilinearAndSkew) {
  const LieAlgebra3 alg = make_algebra_c(0.3);
  const InnerProduct g = metric_from_table(alg, MetricParams::g_mu_nu(0.4, 1));
  const CurvatureData cd = compute_curvature(alg, g);
  const Vec3 v(1, 2, -1), w(0.5, 0, 3);
  const Mat3 rvw = curvature_endomorphism(cd.r, v, w);
  EXPECT_LT(max_diff(rvw, -curvature_endomorphism(cd.r, w, v)), 1e-12);
  EXPECT_LT(((g.coeffs() * rvw).transpose() + g.coeffs() * rvw).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SoAction, IsAntiHomomorphism) {
  std::mt19937_64 rng(3);
  const LieAlgebra3 alg = make_algebra_c(4);
  const CurvatureData cd =
      compute_curvature(alg, metric_from_table(alg, MetricParams::g_mu_nu(2, 1)));
  for (int trial = 0; trial < 10; ++trial) {
    const Mat3 a = random_matrix(rng), b = random_matrix(rng);
    for (const CovTensor* t : {&cd.r, &cd.dr}) {
      const CovTensor lhs = so_action(a * b - b * a, *t);
      const CovTensor rhs = so_action(a, so_action(b, *t)) - so_action(b, so_action(a, *t));
      EXPECT_LT(max_abs_diff(lhs, -1.0 * rhs), 1e-12 * (1 + t->max_abs()));
    }
  }
}

TEST(SoAction, IsLinearAndKillsIdentityOnType11) {
  // The identity acts on T^l_{i} with weight (-1 + 1) = 0.
  CovTensor t(1);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) - 4.0;
  EXPECT_LT(so_action(Mat3::Identity(), t).max_abs(), 1e-15);
  const Mat3 a = Mat3::Random(), b = Mat3::Random();
  EXPECT_LT(max_abs_diff(so_action(a + 2 * b, t), so_action(a, t) + 2.0 * so_action(b, t)), 1e-12);
}

TEST(CovariantDerivative, MetricIsParallel) {
  const LieAlgebra3 alg = make_algebra_c(-1);
  const InnerProduct g = metric_from_table(alg, MetricParams::g_mu_nu(0.5, 2));
  const ConnectionOperator conn = levi_civita(alg, g);
  for (const Mat3& d : covariant_derivative_of_form(g.coeffs(), conn)) {
    EXPECT_LT(d.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CovariantDerivative, SymmetricSpacesHaveParallelCurvature) {
  const LieAlgebra3 alg = make_algebra_I();
  const CurvatureData cd = compute_curvature(alg, metric_from_table(alg, MetricParams::g_nu(2)));
  EXPECT_LT(cd.dr.max_abs(), 1e-12);
  EXPECT_LT(cd.ddr.max_abs(), 1e-12);
  const LieAlgebra3 zero = make_algebra_c(0);
  const CurvatureData c0 = compute_curvature(zero, metric_from_table(zero, MetricParams::g_nu(1)));
  EXPECT_LT(c0.dr.max_abs(), 1e-12);
  const CurvatureData c1 =
      compute_curvature(zero, metric_from_table(zero, MetricParams::g_mu_nu(1, 1)));
  EXPECT_GT(c1.dr.max_abs(), 1e-3);
}

TEST(Connection, KoszulFormulaHolds) {
  const LieAlgebra3 alg = make_algebra_c(0.6);
  const InnerProduct g = metric_from_table(alg, MetricParams::g_mu_nu(0.2, 0.7));
  const ConnectionOperator conn = levi_civita(alg, g);
  const Mat3 I = Mat3::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Vec3 x = I.col(i), y = I.col(j), z = I.col(k);
        const double lhs = 2 * g(conn(x) * y, z);
        const double rhs = g(alg.bracket(x, y), z) - g(alg.bracket(y, z), x) + g(alg.bracket(z, x), y);
        EXPECT_NEAR(lhs, rhs, 1e-12);
      }
}

TEST(Tensor, ArithmeticAndIndexing) {
  CovTensor a(3), b(3);
  a(2, 1, 0, 2) = 3.0;
  b(2, 1, 0, 2) = 1.0;
  EXPECT_EQ((a - b)(2, 1, 0, 2), 2.0);
  EXPECT_EQ((2.0 * a).max_abs(), 6.0);
  EXPECT_EQ(a.stride(0), 27u);
  EXPECT_EQ(a.size(), 81u);
  EXPECT_THROW(max_abs_diff(a, CovTensor(2)), std::invalid_argument);
}
