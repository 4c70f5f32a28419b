#include "lieiso/isometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lieiso {

namespace {

using Vec12 = Eigen::Matrix<double, 12, 1>;

Vec12 flatten_generator(const KillingGenerator& k) {
  Vec12 out;
  out.head<3>() = k.v;
  out.tail<9>() = linalg::flatten(k.b);
  return out;
}

double relative_size(double residual, double scale) { return residual / std::max(1.0, scale); }

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

// Rescale a single generator so that its (2,0) entry is 1, falling back to
// the largest entry when (2,0) is negligible.
Mat3 normalize_single(const Mat3& a, double rel_tol) {
  const double scale = max_abs(a);
  if (scale == 0.0) return a;
  if (std::abs(a(2, 0)) > rel_tol * scale) return a / a(2, 0);
  for (auto it = linalg::kEntryOrder.rbegin(); it != linalg::kEntryOrder.rend(); ++it) {
    const double e = a((*it)[0], (*it)[1]);
    if (std::abs(e) > 1e-6 * scale) return a / e;
  }
  return a / scale;
}

// Natural magnitudes of R, nabla R and nabla^2 R: |R| |Lambda|^s. A derivative
// that is pure roundoff is measured against this, not against itself.
std::array<double, 3> derivative_scales(const CurvatureData& curv) {
  double conn_scale = 0.0;
  for (const Mat3& l : curv.conn.lambda) conn_scale = std::max(conn_scale, max_abs(l));
  const double r = curv.r.max_abs();
  return {r, std::max(curv.dr.max_abs(), r * conn_scale),
          std::max(curv.ddr.max_abs(), r * conn_scale * conn_scale)};
}

Eigen::MatrixXd action_block(const std::vector<Mat3>& basis, const CovTensor& t,
                             double tensor_scale) {
  Eigen::MatrixXd block(t.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const CovTensor image = so_action(basis[j], t);
    for (std::size_t n = 0; n < image.size(); ++n) block(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) = image[n];
  }
  double basis_scale = 0.0;
  for (const Mat3& m : basis) basis_scale = std::max(basis_scale, max_abs(m));
  const double scale = basis_scale * tensor_scale;
  if (scale > 0.0) block /= scale;
  return block;
}

}  // namespace

std::string to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::TranslationsOnly: return "TranslationsOnly";
    case GroupTag::Product_SO2: return "Product_SO2";
    case GroupTag::E1_x_SO21: return "E1_x_SO21";
    case GroupTag::SO31: return "SO31";
  }
  return "?";
}

std::optional<GroupTag> group_tag_from_string(const std::string& s) {
  for (GroupTag t : {GroupTag::TranslationsOnly, GroupTag::Product_SO2, GroupTag::E1_x_SO21,
                     GroupTag::SO31}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::vector<Mat3> singer_isotropy(const InnerProduct& g, const CurvatureData& curv,
                                  const Tolerances& tol, bool ricci_prefilter) {
  SkewAlgebraBasis search = skew_algebra(g.coeffs(), tol.rank);
  if (ricci_prefilter) {
    SkewAlgebraBasis ric;
    try {
      ric = skew_algebra(curv.ricci, tol.rank);
    } catch (const DegenerateFormError&) {
      ric = stabilizer(curv.ricci, tol.rank);
    }
    search = intersect_skew(search, ric, tol.rank);
  }
  if (search.dim() == 0) return {};

  const std::array<double, 3> scales = derivative_scales(curv);
  const Eigen::MatrixXd b0 = action_block(search.basis, curv.r, scales[0]);
  const Eigen::MatrixXd b1 = action_block(search.basis, curv.dr, scales[1]);
  const Eigen::MatrixXd b2 = action_block(search.basis, curv.ddr, scales[2]);
  Eigen::MatrixXd system(b0.rows() + b1.rows() + b2.rows(), search.dim());
  system.topRows(b0.rows()) = b0;
  system.middleRows(b0.rows(), b1.rows()) = b1;
  system.bottomRows(b2.rows()) = b2;

  // Blocks are already measured against the size of each tensor.
  const Eigen::MatrixXd kernel = linalg::null_space(system, tol.rank, 1.0);
  std::vector<Mat3> gens;
  for (Eigen::Index col = 0; col < kernel.cols(); ++col) {
    Mat3 a = Mat3::Zero();
    for (int j = 0; j < search.dim(); ++j) a += kernel(j, col) * search.basis[j];
    gens.push_back(a);
  }
  if (gens.size() == 1) return {normalize_single(gens.front(), tol.rank)};
  if (gens.size() > 1) return canonical_span(gens, tol.rank).basis;
  return gens;
}

double singer_residual(const std::vector<Mat3>& generators, const CurvatureData& curv) {
  const std::array<double, 3> scales = derivative_scales(curv);
  const std::array<const CovTensor*, 3> tensors{&curv.r, &curv.dr, &curv.ddr};
  double worst = 0.0;
  for (const Mat3& a : generators) {
    for (std::size_t s = 0; s < tensors.size(); ++s) {
      const double res = so_action(a, *tensors[s]).max_abs();
      worst = std::max(worst, relative_size(res, max_abs(a) * scales[s]));
    }
  }
  return worst;
}

Mat3 right_invariant_B(const LieAlgebra3& alg, const ConnectionOperator& conn, const Vec3& v) {
  Mat3 b;
  for (int i = 0; i < 3; ++i) {
    const Vec3 x = Vec3::Unit(i);
    b.col(i) = conn(x) * v - alg.bracket(x, v);
  }
  return b;
}

KillingGenerator killing_bracket(const KillingGenerator& a, const KillingGenerator& b,
                                 const CovTensor& r) {
  KillingGenerator out;
  out.v = b.b * a.v - a.b * b.v;
  out.b = curvature_endomorphism(r, a.v, b.v) - (a.b * b.b - b.b * a.b);
  return out;
}

KillingAlgebra killing_algebra(const LieAlgebra3& alg, const CurvatureData& curv,
                               const std::vector<Mat3>& isotropy, const Tolerances& tol) {
  KillingAlgebra ka;
  for (int i = 0; i < 3; ++i) {
    const Vec3 v = Vec3::Unit(i);
    ka.basis.push_back({v, right_invariant_B(alg, curv.conn, v)});
    ka.labels.push_back("r" + std::to_string(i));
  }
  for (std::size_t j = 0; j < isotropy.size(); ++j) {
    ka.basis.push_back({Vec3::Zero(), isotropy[j]});
    ka.labels.push_back(isotropy.size() == 1 ? "A" : "A" + std::to_string(j));
  }

  const int n = ka.dim();
  Eigen::MatrixXd span(12, n);
  for (int i = 0; i < n; ++i) span.col(i) = flatten_generator(ka.basis[i]);
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(span);

  ka.structure.assign(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec12 target = flatten_generator(killing_bracket(ka.basis[i], ka.basis[j], curv.r));
      const Eigen::VectorXd coeff = qr.solve(target);
      const double res = (span * coeff - target).cwiseAbs().maxCoeff();
      ka.closure_residual =
          std::max(ka.closure_residual, relative_size(res, target.cwiseAbs().maxCoeff()));
      for (int k = 0; k < n; ++k) {
        ka.structure[k](i, j) = coeff(k);
        ka.structure[k](j, i) = -coeff(k);
      }
    }
  }
  if (ka.closure_residual > tol.closure) {
    throw ConsistencyError("Killing generators do not close under the bracket (residual " +
                           std::to_string(ka.closure_residual) + ")");
  }
  return ka;
}

double jacobi_defect(const std::vector<Eigen::MatrixXd>& s) {
  const int n = static_cast<int>(s.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int m = 0; m < n; ++m) {
            sum += s[m](i, j) * s[l](m, k) + s[m](j, k) * s[l](m, i) + s[m](k, i) * s[l](m, j);
          }
          worst = std::max(worst, std::abs(sum));
        }
      }
    }
  }
  return worst;
}

KillingForm killing_form(const std::vector<Eigen::MatrixXd>& s) {
  const int n = static_cast<int>(s.size());
  std::vector<Eigen::MatrixXd> ad(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) ad[i](k, j) = s[k](i, j);
    }
  }
  KillingForm out;
  out.form.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.form(i, j) = (ad[i] * ad[j]).trace();
  }
  const Eigen::MatrixXd sym = 0.5 * (out.form + out.form.transpose());
  out.eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues();
  return out;
}

bool is_locally_symmetric(const CurvatureData& curv, const Tolerances& tol) {
  double conn_scale = 0.0;
  for (const Mat3& l : curv.conn.lambda) conn_scale = std::max(conn_scale, max_abs(l));
  return relative_size(curv.dr.max_abs(), curv.r.max_abs() * conn_scale) <= tol.singer;
}

std::optional<ProductSplitting> detect_product_splitting(const LieAlgebra3& alg,
                                                         const InnerProduct& g,
                                                         const CurvatureData& curv,
                                                         const Tolerances& tol) {
  // Ricci endomorphism in a g-orthonormal frame.
  const Eigen::LLT<Mat3> llt(g.coeffs());
  const Mat3 l = llt.matrixL();
  const Mat3 linv = l.inverse();
  const Mat3 ric_on = linv * curv.ricci * linv.transpose();
  const Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (ric_on + ric_on.transpose()));
  const Vec3 ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

  // Spectrum (-a, -a, 0) with a > 0.
  if (std::abs(ev(2)) > tol.case_snap * scale) return std::nullopt;
  if (std::abs(ev(0) - ev(1)) > tol.case_snap * scale) return std::nullopt;
  if (ev(0) >= -tol.case_snap * scale) return std::nullopt;

  // Kernel direction back in the e-frame: ric_on w = 0 means Ric (L^{-T} w) = 0.
  Vec3 line = linv.transpose() * es.eigenvectors().col(2);
  const int lead = [&] {
    int idx = 0;
    line.cwiseAbs().maxCoeff(&idx);
    return idx;
  }();
  line /= line(lead);

  double parallel = 0.0;
  double conn_scale = 0.0;
  for (const Mat3& lam : curv.conn.lambda) {
    parallel = std::max(parallel, (lam * line).cwiseAbs().maxCoeff());
    conn_scale = std::max(conn_scale, max_abs(lam));
  }
  if (relative_size(parallel, conn_scale * line.cwiseAbs().maxCoeff()) > tol.case_snap)
    return std::nullopt;

  ProductSplitting split;
  split.factor_curvature = ev(0);
  split.line = line;

  // The catalog case c = 0 with g_nu has an explicit adapted frame
  // f0 = 2e0 - e1 (central), f1 = e2 / 2, f2 = e1 with [f1, f2] = f2.
  const FamilyTag& fam = alg.family();
  if (fam.kind() == FamilyTag::Kind::C && fam.c() == 0.0 && g.params().kind == MetricKind::Nu) {
    Mat3 frame;
    frame.col(0) = Vec3(2.0, -1.0, 0.0);
    frame.col(1) = Vec3(0.0, 0.0, 0.5);
    frame.col(2) = Vec3(0.0, 1.0, 0.0);
    const Mat3 in_frame = frame.transpose() * g.coeffs() * frame;
    const bool central = alg.ad(frame.col(0)).cwiseAbs().maxCoeff() <= tol.rank;
    const bool affine =
        (alg.bracket(frame.col(1), frame.col(2)) - frame.col(2)).cwiseAbs().maxCoeff() <= tol.rank;
    Mat3 off = in_frame;
    off.diagonal().setZero();
    if (central && affine && max_abs(off) <= tol.rank * max_abs(in_frame)) {
      split.frame = frame;
      split.metric_in_frame = in_frame;
      split.line = frame.col(0);
    }
  }
  return split;
}

IsometryDescriptor classify_isometry_group(const LieAlgebra3& alg, const InnerProduct& g,
                                           const CurvatureData& curv, const Tolerances& tol) {
  if (!alg.family().is_catalog()) {
    throw std::invalid_argument("isometry classification requires a catalog algebra");
  }
  IsometryDescriptor d;
  d.isotropy_generators = singer_isotropy(g, curv, tol, true);
  d.isotropy_dim = static_cast<int>(d.isotropy_generators.size());
  d.total_dim = 3 + d.isotropy_dim;
  d.singer_residual = singer_residual(d.isotropy_generators, curv);
  if (d.singer_residual > tol.singer) {
    throw ConsistencyError("isotropy generators fail re-verification (residual " +
                           std::to_string(d.singer_residual) + ")");
  }
  d.symmetric_space = is_locally_symmetric(curv, tol);

  switch (d.isotropy_dim) {
    case 0:
      if (d.symmetric_space) throw ConsistencyError("locally symmetric metric with trivial isotropy");
      d.group_tag = GroupTag::TranslationsOnly;
      break;
    case 1:
      if (d.symmetric_space) {
        d.splitting = detect_product_splitting(alg, g, curv, tol);
        if (!d.splitting) throw ConsistencyError("symmetric metric with 1-dim isotropy is not R x H^2");
        d.group_tag = GroupTag::E1_x_SO21;
      } else {
        d.group_tag = GroupTag::Product_SO2;
      }
      break;
    case 3: {
      const double spread = curv.sectional.max - curv.sectional.min;
      const double size = std::max(std::abs(curv.sectional.max), std::abs(curv.sectional.min));
      if (relative_size(spread, size) > tol.case_snap || curv.sectional.max >= 0.0) {
        throw ConsistencyError("full isotropy without constant negative curvature");
      }
      d.group_tag = GroupTag::SO31;
      break;
    }
    default:
      throw ConsistencyError("isotropy of dimension " + std::to_string(d.isotropy_dim) +
                             " is impossible in dimension 3");
  }
  return d;
}

IsometryDescriptor classify_isometry_group(const LieAlgebra3& alg, const InnerProduct& g,
                                           const Tolerances& tol) {
  return classify_isometry_group(alg, g, compute_curvature(alg, g), tol);
}

}  // namespace lieiso
