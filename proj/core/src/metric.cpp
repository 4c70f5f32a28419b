#include "lieiso/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lieiso {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Nu:
      return "g_nu";
    case MetricKind::MuNu:
      return "g_mu_nu";
    case MetricKind::LambdaNu:
      return "g'_lambda_nu";
    case MetricKind::Gram:
      break;
  }
  return "gram";
}

std::string to_string(CRegime regime) {
  switch (regime) {
    case CRegime::Negative:
      return "c<0";
    case CRegime::Zero:
      return "c=0";
    case CRegime::Between:
      return "0<c<1";
    case CRegime::One:
      return "c=1";
    case CRegime::Above:
      break;
  }
  return "1<c";
}

CRegime regime_of(double c, double tol) {
  if (std::abs(c) <= tol) return CRegime::Zero;
  if (std::abs(c - 1.0) <= tol) return CRegime::One;
  if (c < 0.0) return CRegime::Negative;
  if (c < 1.0) return CRegime::Between;
  return CRegime::Above;
}

DegenerateFormError::DegenerateFormError(int rank)
    : std::runtime_error("degenerate form (numeric rank " + std::to_string(rank) + ")"),
      rank_(rank) {}

bool is_positive_definite(const Mat3& g) {
  if (!g.allFinite()) return false;
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + g.cwiseAbs().maxCoeff())) {
    return false;
  }
  // Leading principal minors.
  return g(0, 0) > 0.0 && g.topLeftCorner<2, 2>().determinant() > 0.0 && g.determinant() > 0.0;
}

InnerProduct InnerProduct::from_gram(const Mat3& g, FamilyTag family) {
  if (!is_positive_definite(g)) {
    throw InvalidGramError("Gram matrix is not symmetric positive definite");
  }
  const Mat3 sym = 0.5 * (g + g.transpose());
  return InnerProduct(sym, family, MetricParams::gram(), false);
}

double InnerProduct::norm(const Vec3& x) const { return std::sqrt((*this)(x, x)); }

std::string table1_constraint(FamilyTag::Kind family, CRegime regime, MetricKind kind) {
  if (family == FamilyTag::Kind::I) {
    return kind == MetricKind::Nu ? "0 < nu" : "";
  }
  if (family != FamilyTag::Kind::C) return "";
  switch (regime) {
    case CRegime::Negative:
      if (kind == MetricKind::MuNu) return "0 < mu <= |c|, 0 < nu";
      break;
    case CRegime::Zero:
      if (kind == MetricKind::MuNu) return "0 < mu, 0 < nu";
      if (kind == MetricKind::Nu) return "0 < nu";
      break;
    case CRegime::Between:
      if (kind == MetricKind::MuNu) return "0 <= mu < 1, 0 < nu";
      break;
    case CRegime::One:
      if (kind == MetricKind::MuNu) return "0 < mu <= 1, 0 < nu";
      // lambda = 0 is the gluing line g'_{0,nu} = g_{1,nu}.
      if (kind == MetricKind::LambdaNu) return "0 <= lambda < 1, 0 < nu";
      break;
    case CRegime::Above:
      if (kind == MetricKind::MuNu) return "1 < mu <= c, 0 < nu";
      break;
  }
  return "";
}

namespace {

bool snap_value(double& value, double target, double tol) {
  if (value != target && std::abs(value - target) <= tol) {
    value = target;
    return true;
  }
  return false;
}

}  // namespace

SnapResult snap_to_strata(const FamilyTag& family, const MetricParams& params, double tol) {
  SnapResult out{family.c(), params, false};
  if (family.kind() != FamilyTag::Kind::C) return out;

  bool snapped = snap_value(out.c, 0.0, tol) || snap_value(out.c, 1.0, tol);
  const double c = out.c;
  MetricParams& p = out.params;
  switch (regime_of(c)) {
    case CRegime::Negative:
      if (p.kind == MetricKind::MuNu) snapped |= snap_value(p.mu, std::abs(c), tol);
      break;
    case CRegime::Zero:
      break;
    case CRegime::Between:
      if (p.kind == MetricKind::MuNu) {
        snapped |= snap_value(p.mu, 0.0, tol) || snap_value(p.mu, std::sqrt(c), tol);
      }
      break;
    case CRegime::One:
      if (p.kind == MetricKind::MuNu) snapped |= snap_value(p.mu, 1.0, tol);
      if (p.kind == MetricKind::LambdaNu) snapped |= snap_value(p.lambda, 0.0, tol);
      break;
    case CRegime::Above:
      if (p.kind == MetricKind::MuNu) {
        const double r = std::sqrt(c) - 1.0;
        snapped |= snap_value(p.mu, c, tol) || snap_value(p.mu, r * r + 1.0, tol);
      }
      break;
  }
  out.snapped = snapped;
  return out;
}

Mat3 table_p_matrix(double c) {
  const double s = std::sqrt(1.0 - c);
  Mat3 p;
  p << -(1.0 + s) / (2.0 * c * s), -1.0 / (2.0 * s), 0.0,
       (1.0 - s) / (2.0 * c * s), 1.0 / (2.0 * s), 0.0,
       0.0, 0.0, 1.0;
  return p;
}

namespace {

[[noreturn]] void reject(const std::string& family, CRegime regime, MetricKind kind,
                         const std::string& constraint) {
  std::ostringstream os;
  if (constraint.empty()) {
    os << "metric " << to_string(kind) << " is not in the table for family " << family;
    if (family != "I") os << " (" << to_string(regime) << ")";
  } else {
    os << "parameters out of range for " << to_string(kind) << " on family " << family
       << ": requires " << constraint;
  }
  throw RangeError(os.str(), constraint);
}

}  // namespace

InnerProduct metric_from_table(const LieAlgebra3& alg, const MetricParams& params,
                               const Tolerances& tol) {
  const FamilyTag& family = alg.family();
  if (!family.is_catalog()) {
    throw std::invalid_argument("metric table requires a catalog algebra (family I or c)");
  }
  const SnapResult snap = snap_to_strata(family, params, tol.case_snap);
  const MetricParams& p = snap.params;
  const double c = snap.c;
  const CRegime regime = family.kind() == FamilyTag::Kind::I ? CRegime::Above : regime_of(c);
  const std::string constraint = table1_constraint(family.kind(), regime, p.kind);
  if (constraint.empty()) reject(family.label(), regime, p.kind, constraint);

  const bool nu_ok = p.nu > 0.0 && std::isfinite(p.nu);
  Mat3 g = Mat3::Zero();
  bool ok = nu_ok;
  if (family.kind() == FamilyTag::Kind::I) {
    g.diagonal() << 1.0, 1.0, p.nu;
  } else {
    switch (regime) {
      case CRegime::Negative:
        ok = ok && p.mu > 0.0 && p.mu <= std::abs(c);
        g.diagonal() << 1.0, p.mu, p.nu;
        break;
      case CRegime::Zero:
        if (p.kind == MetricKind::MuNu) {
          ok = ok && p.mu > 0.0 && std::isfinite(p.mu);
          g.diagonal() << 1.0, p.mu, p.nu;
        } else {
          g << 1.0, 0.5, 0.0, 0.5, 1.0, 0.0, 0.0, 0.0, p.nu;
        }
        break;
      case CRegime::Between: {
        ok = ok && p.mu >= 0.0 && p.mu < 1.0;
        Mat3 m;
        m << 1.0, p.mu, 0.0, p.mu, 1.0, 0.0, 0.0, 0.0, p.nu;
        const Mat3 pm = table_p_matrix(c);
        g = pm.transpose() * m * pm;
        break;
      }
      case CRegime::One:
        if (p.kind == MetricKind::MuNu) {
          ok = ok && p.mu > 0.0 && p.mu <= 1.0;
          g.diagonal() << 1.0, p.mu, p.nu;
        } else {
          ok = ok && p.lambda >= 0.0 && p.lambda < 1.0;
          g << 1.0, p.lambda, 0.0, p.lambda, 1.0, 0.0, 0.0, 0.0, p.nu;
        }
        break;
      case CRegime::Above:
        ok = ok && p.mu > 1.0 && p.mu <= c;
        g << 1.0, 1.0, 0.0, 1.0, p.mu, 0.0, 0.0, 0.0, p.nu;
        break;
    }
  }
  if (!ok) reject(family.label(), regime, p.kind, constraint);
  return InnerProduct(g, family, p, snap.snapped);
}

namespace {

// Rows: the six independent entries of M^T S + S M, columns: flattened M.
Eigen::MatrixXd skew_constraints(const Mat3& form) {
  Eigen::MatrixXd rows(6, 9);
  for (int k = 0; k < 9; ++k) {
    Mat3 e = Mat3::Zero();
    e(linalg::kEntryOrder[static_cast<std::size_t>(k)][0],
      linalg::kEntryOrder[static_cast<std::size_t>(k)][1]) = 1.0;
    const Mat3 r = e.transpose() * form + form * e;
    rows.col(k) << r(0, 0), r(0, 1), r(0, 2), r(1, 1), r(1, 2), r(2, 2);
  }
  return rows;
}

// Constraints whose kernel is span(basis): the annihilator of the span.
Eigen::MatrixXd span_constraints(const std::vector<Mat3>& basis, double rel_tol) {
  if (basis.empty()) return Eigen::MatrixXd::Identity(9, 9);
  const Eigen::MatrixXd a = linalg::stack_flat(basis);
  const Eigen::MatrixXd w = linalg::null_space(a.transpose(), rel_tol);
  return w.transpose();
}

SkewAlgebraBasis kernel_basis(const Eigen::MatrixXd& constraints, double rel_tol) {
  const linalg::RowEchelon e = linalg::rref(constraints, rel_tol);
  const Eigen::MatrixXd kernel = linalg::null_space(constraints, rel_tol);
  std::vector<bool> pivot(9, false);
  for (int p : e.pivot_columns) pivot[static_cast<std::size_t>(p)] = true;

  SkewAlgebraBasis out;
  int k = 0;
  for (std::size_t col = 0; col < 9; ++col) {
    if (pivot[col]) continue;
    out.basis.push_back(linalg::unflatten(kernel.col(k++)));
    const auto& ij = linalg::kEntryOrder[col];
    out.labels.push_back("a_" + std::to_string(ij[0]) + std::to_string(ij[1]));
  }
  return out;
}

}  // namespace

SkewAlgebraBasis stabilizer(const Mat3& form, double rel_tol) {
  return kernel_basis(skew_constraints(form), rel_tol);
}

SkewAlgebraBasis skew_algebra(const Mat3& form, double rel_tol) {
  const int rank = linalg::numeric_rank(form, rel_tol);
  if (rank < 3) throw DegenerateFormError(rank);
  return stabilizer(form, rel_tol);
}

SkewAlgebraBasis canonical_span(const std::vector<Mat3>& ms, double rel_tol) {
  if (ms.empty()) return {};
  return kernel_basis(span_constraints(ms, rel_tol), rel_tol);
}

SkewAlgebraBasis intersect_skew(const SkewAlgebraBasis& a, const SkewAlgebraBasis& b,
                                double rel_tol) {
  const Eigen::MatrixXd ca = span_constraints(a.basis, rel_tol);
  const Eigen::MatrixXd cb = span_constraints(b.basis, rel_tol);
  Eigen::MatrixXd both = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(1, ca.rows() + cb.rows()), 9);
  both.topRows(ca.rows()) = ca;
  both.middleRows(ca.rows(), cb.rows()) = cb;
  return kernel_basis(both, rel_tol);
}

}  // namespace lieiso
