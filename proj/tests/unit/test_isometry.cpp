#include <gtest/gtest.h>

#include <random>

#include <closed_forms.hpp>
#include <lieiso/isometry.hpp>

using namespace lieiso;
using namespace lieiso::testing;

namespace {

struct Subject {
  LieAlgebra3 alg;
  InnerProduct g;
  CurvatureData curv;
};

Subject subject(const FamilyTag& family, const MetricParams& p) {
  LieAlgebra3 alg = make_algebra(family);
  InnerProduct g = metric_from_table(alg, p);
  CurvatureData curv = compute_curvature(alg, g);
  return {alg, g, curv};
}

Mat3 zero_family_generator(double mu, double nu) {
  Mat3 a;
  a << 0, 0, -nu, 0, 0, -2 * nu / mu, 1, 2, 0;
  return a;
}

Eigen::VectorXd coeffs(const KillingAlgebra& k, int i, int j) {
  Eigen::VectorXd out(k.dim());
  for (int m = 0; m < k.dim(); ++m) out(m) = k.structure[static_cast<std::size_t>(m)](i, j);
  return out;
}

Eigen::VectorXd vec4(double a, double b, double c, double d) {
  Eigen::VectorXd v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

TEST(Singer, ZeroFamilyHasOneGenerator) {
  for (double mu : {0.5, 1.0, 2.0}) {
    for (double nu : {0.5, 1.0, 2.0}) {
      const Subject s = subject(FamilyTag::c(0), MetricParams::g_mu_nu(mu, nu));
      const std::vector<Mat3> iso = singer_isotropy(s.g, s.curv);
      ASSERT_EQ(iso.size(), 1u);
      EXPECT_LT((iso[0] - zero_family_generator(mu, nu)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT(singer_residual(iso, s.curv), 1e-9);
      EXPECT_LT(so_action(iso[0], s.curv.r).max_abs(), 1e-9);
      EXPECT_LT(so_action(iso[0], s.curv.dr).max_abs(), 1e-9);
      EXPECT_LT(so_action(iso[0], s.curv.ddr).max_abs(), 1e-9);
    }
  }
}

TEST(Singer, GenericMetricsHaveTrivialIsotropy) {
  const std::vector<std::pair<FamilyTag, MetricParams>> cases{
      {FamilyTag::c(1), MetricParams::g_mu_nu(0.5, 1)},
      {FamilyTag::c(1), MetricParams::g_lambda_nu(0.3, 2)},
      {FamilyTag::c(-2), MetricParams::g_mu_nu(1.2, 1)},
      {FamilyTag::c(0.25), MetricParams::g_mu_nu(0.3, 1)},
      {FamilyTag::c(4), MetricParams::g_mu_nu(1.5, 0.5)},
  };
  for (const auto& [family, p] : cases) {
    const Subject s = subject(family, p);
    EXPECT_TRUE(singer_isotropy(s.g, s.curv).empty()) << family.label();
  }
}

TEST(Singer, SpaceFormsHaveFullIsotropy) {
  for (const auto& [family, p] :
       {std::pair{FamilyTag::identity(), MetricParams::g_nu(1.5)},
        std::pair{FamilyTag::c(4), MetricParams::g_mu_nu(4, 2)},
        std::pair{FamilyTag::c(9), MetricParams::g_mu_nu(9, 0.5)}}) {
    const Subject s = subject(family, p);
    const std::vector<Mat3> iso = singer_isotropy(s.g, s.curv);
    EXPECT_EQ(iso.size(), 3u);
    EXPECT_LT(singer_residual(iso, s.curv), 1e-9);
  }
}

TEST(Singer, PrefilterNeverRemovesSolutions) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const RandomCatalogPoint pt = random_catalog_point(rng);
    const Subject s = subject(pt.family, pt.params);
    EXPECT_EQ(singer_isotropy(s.g, s.curv, {}, true).size(),
              singer_isotropy(s.g, s.curv, {}, false).size());
  }
  for (int id = 0; id < static_cast<int>(table2_strata().size()); ++id) {
    const StratumSample smp = sample_stratum(static_cast<StratumId>(id), 1);
    const Subject s = subject(smp.family, smp.params);
    EXPECT_EQ(singer_isotropy(s.g, s.curv, {}, true).size(),
              singer_isotropy(s.g, s.curv, {}, false).size());
  }
}

TEST(Singer, GeneratorsAreSkewForTheMetric) {
  const Subject s = subject(FamilyTag::c(0), MetricParams::g_nu(2));
  for (const Mat3& a : singer_isotropy(s.g, s.curv)) {
    const Mat3 ga = s.g.coeffs() * a;
    EXPECT_LT((ga + ga.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RightInvariant, ConnectionDerivativeIsSkew) {
  const Subject s = subject(FamilyTag::c(2), MetricParams::g_mu_nu(1.3, 0.7));
  for (int i = 0; i < 3; ++i) {
    const Mat3 b = right_invariant_B(s.alg, s.curv.conn, Mat3::Identity().col(i));
    const Mat3 gb = s.g.coeffs() * b;
    EXPECT_LT((gb + gb.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RightInvariant, FlatDirectionOfZeroFamily) {
  // e0 - e1/2 is both left and right invariant and Killing, hence parallel.
  const Subject s = subject(FamilyTag::c(0), MetricParams::g_mu_nu(0.7, 1.4));
  const Mat3 b = right_invariant_B(s.alg, s.curv.conn, Vec3(1, -0.5, 0));
  const Mat3 a = zero_family_generator(0.7, 1.4);
  EXPECT_LT(linalg::projection_residual({a}, b), 1e-12);
}

TEST(KillingAlgebra, ZeroFamilyBracketTable) {
  for (double mu : {0.5, 1.0, 2.0}) {
    for (double nu : {0.5, 1.0, 2.0}) {
      const Subject s = subject(FamilyTag::c(0), MetricParams::g_mu_nu(mu, nu));
      const KillingAlgebra k = killing_algebra(s.alg, s.curv, singer_isotropy(s.g, s.curv));
      ASSERT_EQ(k.dim(), 4);
      EXPECT_EQ(k.labels, (std::vector<std::string>{"r0", "r1", "r2", "A"}));
      EXPECT_LT((coeffs(k, 0, 1) - vec4(0, 0, 0, 0)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT((coeffs(k, 0, 2) - vec4(0, 1, 0, 0)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT((coeffs(k, 1, 2) - vec4(0, 2, 0, 0)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT((coeffs(k, 0, 3) - vec4(0, 0, 1, 0)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT((coeffs(k, 1, 3) - vec4(0, 0, 2, 0)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT((coeffs(k, 2, 3) - vec4(-nu, -2 * nu / mu, 0, 2)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT(k.closure_residual, 1e-8);
      EXPECT_LT(jacobi_defect(k.structure), 1e-8);
    }
  }
}

TEST(KillingAlgebra, RightInvariantFieldsAntiRepresentTheAlgebra) {
  // [r_i, r_j] = -[e_i, e_j] expressed in the r basis.
  const Subject s = subject(FamilyTag::c(-1.5), MetricParams::g_mu_nu(0.8, 1.1));
  const KillingAlgebra k = killing_algebra(s.alg, s.curv, {});
  ASSERT_EQ(k.dim(), 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m)
        EXPECT_NEAR(k.structure[static_cast<std::size_t>(m)](i, j),
                    -s.alg.structure()[static_cast<std::size_t>(m)](i, j), 1e-9);
}

TEST(KillingAlgebra, SpaceFormsCloseWithJacobi) {
  const Subject s = subject(FamilyTag::identity(), MetricParams::g_nu(0.7));
  const KillingAlgebra k = killing_algebra(s.alg, s.curv, singer_isotropy(s.g, s.curv));
  EXPECT_EQ(k.dim(), 6);
  EXPECT_EQ(k.labels.back(), "A2");
  EXPECT_LT(k.closure_residual, 1e-8);
  EXPECT_LT(jacobi_defect(k.structure), 1e-8);
  // so(3,1) is semisimple: the Killing form is nondegenerate with signature (3, 3).
  const KillingForm kf = killing_form(k.structure);
  int negative = 0;
  for (int i = 0; i < kf.eigenvalues.size(); ++i) {
    EXPECT_GT(std::abs(kf.eigenvalues(i)), 1e-6);
    negative += kf.eigenvalues(i) < 0 ? 1 : 0;
  }
  EXPECT_EQ(negative, 3);
}

TEST(KillingAlgebra, BracketOfGeneratorsIsAntisymmetric) {
  const Subject s = subject(FamilyTag::c(0), MetricParams::g_mu_nu(1.5, 1));
  const KillingGenerator a{Vec3(1, 0, 0), right_invariant_B(s.alg, s.curv.conn, Vec3(1, 0, 0))};
  const KillingGenerator b{Vec3(0, 0, 1), right_invariant_B(s.alg, s.curv.conn, Vec3(0, 0, 1))};
  const KillingGenerator ab = killing_bracket(a, b, s.curv.r);
  const KillingGenerator ba = killing_bracket(b, a, s.curv.r);
  EXPECT_LT((ab.v + ba.v).norm(), 1e-12);
  EXPECT_LT((ab.b + ba.b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KillingForm, ZeroFamilySpectrum) {
  for (double mu : {0.5, 1.0, 2.0}) {
    const Subject s = subject(FamilyTag::c(0), MetricParams::g_mu_nu(mu, 1));
    const KillingAlgebra k = killing_algebra(s.alg, s.curv, singer_isotropy(s.g, s.curv));
    const Eigen::VectorXd ev = killing_form(k.structure).eigenvalues;
    const double root = std::sqrt(81 * mu * mu + 8 * mu + 16);
    Eigen::VectorXd expect(4);
    expect << -(mu + 4 + root) / mu, 0.0, -(mu + 4 - root) / mu, 8.0;
    std::sort(expect.data(), expect.data() + 4);
    EXPECT_LT((ev - expect).cwiseAbs().maxCoeff(), 1e-9) << "mu=" << mu;
  }
}

TEST(KillingForm, DetectsNonIsomorphicAlgebras) {
  std::vector<Eigen::VectorXd> spectra;
  for (double mu : {0.5, 1.0, 2.0}) {
    const Subject s = subject(FamilyTag::c(0), MetricParams::g_mu_nu(mu, 1));
    const KillingAlgebra k = killing_algebra(s.alg, s.curv, singer_isotropy(s.g, s.curv));
    spectra.push_back(killing_form(k.structure).eigenvalues);
  }
  for (std::size_t i = 0; i < spectra.size(); ++i)
    for (std::size_t j = i + 1; j < spectra.size(); ++j)
      EXPECT_GT((spectra[i] - spectra[j]).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Classify, Tags) {
  struct Case {
    FamilyTag family;
    MetricParams p;
    GroupTag tag;
    int total;
    bool symmetric;
  };
  const std::vector<Case> cases{
      {FamilyTag::identity(), MetricParams::g_nu(2), GroupTag::SO31, 6, true},
      {FamilyTag::c(4), MetricParams::g_mu_nu(4, 1), GroupTag::SO31, 6, true},
      {FamilyTag::c(0), MetricParams::g_nu(1), GroupTag::E1_x_SO21, 4, true},
      {FamilyTag::c(0), MetricParams::g_mu_nu(1, 1), GroupTag::Product_SO2, 4, false},
      {FamilyTag::c(4), MetricParams::g_mu_nu(2, 1), GroupTag::TranslationsOnly, 3, false},
      {FamilyTag::c(1), MetricParams::g_lambda_nu(0.5, 1), GroupTag::TranslationsOnly, 3, false},
  };
  for (const Case& c : cases) {
    const IsometryDescriptor d = classify_isometry_group(make_algebra(c.family),
                                                         metric_from_table(make_algebra(c.family), c.p));
    EXPECT_EQ(d.group_tag, c.tag) << c.family.label();
    EXPECT_EQ(d.total_dim, c.total);
    EXPECT_EQ(d.total_dim, 3 + d.isotropy_dim);
    EXPECT_EQ(d.symmetric_space, c.symmetric);
    EXPECT_LT(d.singer_residual, 1e-9);
  }
}

TEST(Classify, ProductSplittingOfZeroFamily) {
  const double nu = 2.0;
  const Subject s = subject(FamilyTag::c(0), MetricParams::g_nu(nu));
  const IsometryDescriptor d = classify_isometry_group(s.alg, s.g, s.curv);
  ASSERT_TRUE(d.splitting.has_value());
  EXPECT_LT(parallel_defect(d.splitting->line, Vec3(2, -1, 0)), 1e-9);
  ASSERT_TRUE(d.splitting->frame.has_value());
  ASSERT_TRUE(d.splitting->metric_in_frame.has_value());
  EXPECT_LT((*d.splitting->metric_in_frame - Vec3(3, nu / 4, 1).asDiagonal().toDenseMatrix())
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
  EXPECT_LT(d.splitting->factor_curvature, 0.0);
  // Ricci vanishes on the flat line.
  EXPECT_LT((s.curv.ricci * d.splitting->line).norm(), 1e-12);
}

TEST(Classify, NoSplittingWithoutParallelLine) {
  const Subject s = subject(FamilyTag::c(0), MetricParams::g_mu_nu(2, 1));
  EXPECT_FALSE(detect_product_splitting(s.alg, s.g, s.curv).has_value());
  EXPECT_FALSE(is_locally_symmetric(s.curv));
}

TEST(Classify, CustomAlgebraIsRejected) {
  const LieAlgebra3 custom(make_algebra_c(2).structure());
  EXPECT_THROW(classify_isometry_group(custom, InnerProduct::from_gram(Mat3::Identity())),
               std::invalid_argument);
}

TEST(Classify, TagNamesRoundTrip) {
  for (GroupTag t : {GroupTag::TranslationsOnly, GroupTag::Product_SO2, GroupTag::E1_x_SO21,
                     GroupTag::SO31}) {
    EXPECT_EQ(group_tag_from_string(to_string(t)), t);
  }
  EXPECT_FALSE(group_tag_from_string("SO3").has_value());
}

TEST(Classify, InvariantUnderAutomorphisms) {
  // e0 -> s e0, e1 -> s e1, e2 -> e2 + a e0 + b e1 preserves every bracket of g_c.
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int id = 0; id < static_cast<int>(table2_strata().size()); ++id) {
    const StratumSample smp = sample_stratum(static_cast<StratumId>(id), 0);
    const LieAlgebra3 alg = make_algebra(smp.family);
    const InnerProduct g = metric_from_table(alg, smp.params);
    const IsometryDescriptor base = classify_isometry_group(alg, g);

    Mat3 phi = Mat3::Identity();
    const double s = 0.5 + std::abs(u(rng));
    phi(0, 0) = s;
    phi(1, 1) = s;
    phi(0, 2) = u(rng);
    phi(1, 2) = u(rng);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_LT((alg.bracket(phi.col(i), phi.col(j)) - phi * alg.bracket(Mat3::Identity().col(i),
                                                                          Mat3::Identity().col(j)))
                      .norm(),
                  1e-12);

    const Mat3 pulled = phi.transpose() * g.coeffs() * phi;
    const InnerProduct h = InnerProduct::from_gram(pulled, alg.family());
    const IsometryDescriptor moved = classify_isometry_group(alg, h);
    EXPECT_EQ(moved.isotropy_dim, base.isotropy_dim) << stratum_info(static_cast<StratumId>(id)).name;
    EXPECT_EQ(moved.group_tag, base.group_tag) << stratum_info(static_cast<StratumId>(id)).name;
    EXPECT_EQ(moved.symmetric_space, base.symmetric_space);
  }
}
