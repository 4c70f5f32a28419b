#include "lieiso/symmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "lieiso/parallel.hpp"

namespace lieiso {

SymmetryReport index_of_symmetry(const LieAlgebra3& alg, const InnerProduct& g,
                                 const CurvatureData& curv, const IsometryDescriptor& iso,
                                 const Tolerances& tol) {
  const auto& gens = iso.isotropy_generators;
  const int k = static_cast<int>(gens.size());
  std::array<Mat3, 3> bs;
  for (int j = 0; j < 3; ++j) bs[j] = right_invariant_B(alg, curv.conn, Vec3::Unit(j));

  // Unknowns (v, alpha): sum v_j B_{e_j} + sum alpha_j A_j = 0.
  Eigen::MatrixXd system(9, 3 + k);
  for (int j = 0; j < 3; ++j) system.col(j) = linalg::flatten(bs[j]);
  for (int j = 0; j < k; ++j) system.col(3 + j) = linalg::flatten(gens[j]);
  const Eigen::MatrixXd kernel = linalg::null_space(system, tol.rank);

  SymmetryReport rep;
  rep.symmetric = iso.symmetric_space;
  if (kernel.cols() > 0) {
    rep.solved_dim = linalg::numeric_rank(kernel.topRows(3), tol.rank);
  }
  if (rep.solved_dim == 2) {
    throw ConsistencyError("distribution of symmetry of corank 1");
  }
  rep.index = rep.symmetric ? 3 : rep.solved_dim;
  if (rep.index != 1) return rep;

  Eigen::Index best = 0;
  kernel.topRows(3).colwise().norm().maxCoeff(&best);
  Eigen::VectorXd sol = kernel.col(best);
  Vec3 v = sol.head<3>();
  const double vmax = v.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v(i)) > tol.rank * vmax) {
      sol /= v(i);
      break;
    }
  }
  v = sol.head<3>();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v(i)) <= tol.rank) v(i) = 0.0;
  }
  Mat3 cert = Mat3::Zero();
  for (int j = 0; j < 3; ++j) cert += v(j) * bs[j];
  for (int j = 0; j < k; ++j) {
    rep.isotropy_coeffs.push_back(sol(3 + j));
    cert += sol(3 + j) * gens[j];
  }
  rep.certificate_residual = cert.cwiseAbs().maxCoeff();
  rep.generator = v;
  rep.unit_generator = v / g.norm(v);
  return rep;
}

SymmetryReport index_of_symmetry(const LieAlgebra3& alg, const InnerProduct& g,
                                 const Tolerances& tol) {
  const CurvatureData curv = compute_curvature(alg, g);
  return index_of_symmetry(alg, g, curv, classify_isometry_group(alg, g, curv, tol), tol);
}

const std::vector<StratumInfo>& table2_strata() {
  using K = FamilyTag::Kind;
  using R = CRegime;
  using M = MetricKind;
  static const std::vector<StratumInfo> strata{
      {StratumId::I_Nu, "I:nu", K::I, R::Above, M::Nu, "0 < nu"},
      {StratumId::Negative_Generic, "c<0:mu<|c|", K::C, R::Negative, M::MuNu, "mu < |c|"},
      {StratumId::Negative_Boundary, "c<0:mu=|c|", K::C, R::Negative, M::MuNu, "mu = |c|"},
      {StratumId::Zero_MuNu, "c=0:mu_nu", K::C, R::Zero, M::MuNu, "0 < mu"},
      {StratumId::Zero_Nu, "c=0:nu", K::C, R::Zero, M::Nu, "0 < nu"},
      {StratumId::Between_MuZero, "0<c<1:mu=0", K::C, R::Between, M::MuNu, "mu = 0"},
      {StratumId::Between_Generic, "0<c<1:mu!=sqrt(c)", K::C, R::Between, M::MuNu,
       "0 < mu != sqrt(c)"},
      {StratumId::Between_Sqrt, "0<c<1:mu=sqrt(c)", K::C, R::Between, M::MuNu, "mu = sqrt(c)"},
      {StratumId::One_Generic, "c=1:mu<1", K::C, R::One, M::MuNu, "mu < 1"},
      {StratumId::One_MuOne, "c=1:mu=1", K::C, R::One, M::MuNu, "mu = 1"},
      {StratumId::One_Lambda, "c=1:lambda", K::C, R::One, M::LambdaNu, "0 < lambda < 1"},
      {StratumId::Above_Generic, "c>1:mu<c", K::C, R::Above, M::MuNu,
       "mu < c, mu != (sqrt(c)-1)^2+1"},
      {StratumId::Above_Special, "c>1:mu=(sqrt(c)-1)^2+1", K::C, R::Above, M::MuNu,
       "mu = (sqrt(c)-1)^2+1"},
      {StratumId::Above_MuC, "c>1:mu=c", K::C, R::Above, M::MuNu, "mu = c"},
  };
  return strata;
}

const StratumInfo& stratum_info(StratumId id) {
  return table2_strata()[static_cast<std::size_t>(id)];
}

namespace {

double above_special(double c) {
  const double r = std::sqrt(c) - 1.0;
  return r * r + 1.0;
}

}  // namespace

StratumId stratum_of(const FamilyTag& family, const MetricParams& params, double tol) {
  Tolerances t;
  t.case_snap = tol;
  const InnerProduct g = metric_from_table(make_algebra(family), params, t);
  if (family.kind() == FamilyTag::Kind::I) return StratumId::I_Nu;

  const SnapResult snap = snap_to_strata(family, params, tol);
  const double c = snap.c;
  const MetricParams& p = g.params();
  switch (regime_of(c)) {
    case CRegime::Negative:
      return p.mu == std::abs(c) ? StratumId::Negative_Boundary : StratumId::Negative_Generic;
    case CRegime::Zero:
      return p.kind == MetricKind::Nu ? StratumId::Zero_Nu : StratumId::Zero_MuNu;
    case CRegime::Between:
      if (p.mu == 0.0) return StratumId::Between_MuZero;
      return p.mu == std::sqrt(c) ? StratumId::Between_Sqrt : StratumId::Between_Generic;
    case CRegime::One:
      if (p.kind == MetricKind::LambdaNu) {
        return p.lambda == 0.0 ? StratumId::One_MuOne : StratumId::One_Lambda;
      }
      return p.mu == 1.0 ? StratumId::One_MuOne : StratumId::One_Generic;
    case CRegime::Above:
      if (p.mu == c) return StratumId::Above_MuC;
      return p.mu == above_special(c) ? StratumId::Above_Special : StratumId::Above_Generic;
  }
  return StratumId::I_Nu;
}

StratumSample sample_stratum(StratumId id, int k) {
  static constexpr std::array<double, 3> kNegative{-2.0, -0.5, -3.0};
  static constexpr std::array<double, 3> kBetween{0.25, 1.0 / 9.0, 9.0 / 16.0};
  static constexpr std::array<double, 3> kAbove{4.0, 2.0, 9.0};
  static constexpr std::array<double, 5> kNu{1.0, 2.0, 0.5, 3.0, 0.25};
  static constexpr std::array<double, 5> kFraction{0.3, 0.55, 0.7, 0.15, 0.85};

  const auto i3 = static_cast<std::size_t>(k % 3);
  const auto i5 = static_cast<std::size_t>(k % 5);
  const double nu = kNu[i5];
  const double f = kFraction[(i5 + 2) % 5];

  switch (id) {
    case StratumId::I_Nu:
      return {FamilyTag::identity(), MetricParams::g_nu(nu)};
    case StratumId::Negative_Generic: {
      const double c = kNegative[i3];
      return {FamilyTag::c(c), MetricParams::g_mu_nu(f * std::abs(c), nu)};
    }
    case StratumId::Negative_Boundary: {
      const double c = kNegative[i3];
      return {FamilyTag::c(c), MetricParams::g_mu_nu(std::abs(c), nu)};
    }
    case StratumId::Zero_MuNu:
      return {FamilyTag::c(0.0), MetricParams::g_mu_nu(0.5 + 3.0 * f, nu)};
    case StratumId::Zero_Nu:
      return {FamilyTag::c(0.0), MetricParams::g_nu(nu)};
    case StratumId::Between_MuZero:
      return {FamilyTag::c(kBetween[i3]), MetricParams::g_mu_nu(0.0, nu)};
    case StratumId::Between_Generic:
      return {FamilyTag::c(kBetween[i3]), MetricParams::g_mu_nu(f, nu)};
    case StratumId::Between_Sqrt:
      return {FamilyTag::c(kBetween[i3]), MetricParams::g_mu_nu(std::sqrt(kBetween[i3]), nu)};
    case StratumId::One_Generic:
      return {FamilyTag::c(1.0), MetricParams::g_mu_nu(f, nu)};
    case StratumId::One_MuOne:
      return {FamilyTag::c(1.0), MetricParams::g_mu_nu(1.0, nu)};
    case StratumId::One_Lambda:
      return {FamilyTag::c(1.0), MetricParams::g_lambda_nu(f, nu)};
    case StratumId::Above_Generic: {
      const double c = kAbove[i3];
      return {FamilyTag::c(c), MetricParams::g_mu_nu(1.0 + f * (c - 1.0), nu)};
    }
    case StratumId::Above_Special: {
      const double c = kAbove[i3];
      return {FamilyTag::c(c), MetricParams::g_mu_nu(above_special(c), nu)};
    }
    case StratumId::Above_MuC: {
      const double c = kAbove[i3];
      return {FamilyTag::c(c), MetricParams::g_mu_nu(c, nu)};
    }
  }
  return {};
}

std::string span_label(const SymmetryReport& report) {
  if (report.index == 3) return "TG";
  if (report.index == 0 || !report.generator) return "-";
  std::ostringstream os;
  os << std::setprecision(12) << "R(";
  for (int i = 0; i < 3; ++i) {
    double x = (*report.generator)(i);
    if (std::abs(x) < 1e-12) x = 0.0;
    os << (i ? ", " : "") << x;
  }
  os << ')';
  return os.str();
}

Table2Row table2_row(const LieAlgebra3& alg, const InnerProduct& g, const Tolerances& tol) {
  Table2Row row;
  row.stratum = stratum_of(alg.family(), g.params(), tol.case_snap);
  row.report = index_of_symmetry(alg, g, tol);
  row.span_label = span_label(row.report);
  return row;
}

bool in_singular_locus(const FamilyTag& family, const MetricParams& p) {
  if (family.kind() != FamilyTag::Kind::C) return false;
  const double c = family.c();
  switch (regime_of(c)) {
    case CRegime::Negative: return p.kind == MetricKind::MuNu && p.mu == std::abs(c);
    case CRegime::Zero: return p.kind == MetricKind::Nu;
    case CRegime::Between: return p.kind == MetricKind::MuNu && p.mu == 0.0;
    case CRegime::One:
      return (p.kind == MetricKind::MuNu && p.mu == 1.0) ||
             (p.kind == MetricKind::LambdaNu && p.lambda == 0.0);
    case CRegime::Above: return p.kind == MetricKind::MuNu && p.mu == c;
  }
  return false;
}

namespace {

std::vector<double> nu_grid(const GridSpec& grid) {
  std::vector<double> out;
  if (grid.n_nu == 1) {
    out.push_back(std::sqrt(grid.nu_min * grid.nu_max));
    return out;
  }
  const double lo = std::log(grid.nu_min);
  const double hi = std::log(grid.nu_max);
  for (int j = 0; j < grid.n_nu; ++j) out.push_back(std::exp(lo + (hi - lo) * j / (grid.n_nu - 1)));
  return out;
}

void add_unique(std::vector<double>& values, double x) {
  for (double v : values) {
    if (std::abs(v - x) <= 1e-12 * std::max(1.0, std::abs(x))) return;
  }
  values.push_back(x);
}

std::vector<MetricParams> parameter_grid(const FamilyTag& family, const GridSpec& grid) {
  const std::vector<double> nus = nu_grid(grid);
  std::vector<MetricParams> out;
  const auto with_mu = [&](const std::vector<double>& mus) {
    for (double mu : mus)
      for (double nu : nus) out.push_back(MetricParams::g_mu_nu(mu, nu));
  };
  const int n = grid.n_mu;
  std::vector<double> mus;

  if (family.kind() == FamilyTag::Kind::I) {
    for (double nu : nus) out.push_back(MetricParams::g_nu(nu));
    return out;
  }
  const double c = family.c();
  switch (regime_of(c)) {
    case CRegime::Negative:
      for (int i = 1; i <= n; ++i) add_unique(mus, std::abs(c) * i / n);
      add_unique(mus, std::abs(c));
      with_mu(mus);
      break;
    case CRegime::Zero:
      for (int i = 1; i <= n; ++i) add_unique(mus, grid.mu_max * i / n);
      with_mu(mus);
      for (double nu : nus) out.push_back(MetricParams::g_nu(nu));
      break;
    case CRegime::Between:
      for (int i = 0; i < n; ++i) add_unique(mus, static_cast<double>(i) / n);
      add_unique(mus, std::sqrt(c));
      with_mu(mus);
      break;
    case CRegime::One: {
      for (int i = 1; i <= n; ++i) add_unique(mus, static_cast<double>(i) / n);
      with_mu(mus);
      std::vector<double> lambdas;
      for (int i = 0; i < n; ++i) add_unique(lambdas, static_cast<double>(i) / n);
      for (double l : lambdas)
        for (double nu : nus) out.push_back(MetricParams::g_lambda_nu(l, nu));
      break;
    }
    case CRegime::Above:
      for (int i = 1; i <= n; ++i) add_unique(mus, 1.0 + (c - 1.0) * i / n);
      add_unique(mus, above_special(c));
      add_unique(mus, c);
      with_mu(mus);
      break;
  }
  return out;
}

}  // namespace

ModuliScanResult scan_moduli(const FamilyTag& family, const GridSpec& grid,
                             const Tolerances& tol) {
  if (!family.is_catalog()) throw std::invalid_argument("moduli scans require a catalog family");
  if (grid.n_nu < 1) throw std::invalid_argument("nu grid must have at least one point");
  if (family.kind() == FamilyTag::Kind::C && grid.n_mu < 1) {
    throw std::invalid_argument("mu grid must have at least one point");
  }
  if (!(grid.nu_min > 0.0) || !(grid.nu_max >= grid.nu_min) || !std::isfinite(grid.nu_max)) {
    throw RangeError("nu grid outside the parameter range", "0 < nu");
  }
  if (!(grid.mu_max > 0.0) || !std::isfinite(grid.mu_max)) {
    throw RangeError("mu grid outside the parameter range", "0 < mu");
  }

  const LieAlgebra3 alg = make_algebra(family);
  const std::vector<MetricParams> params = parameter_grid(family, grid);

  ModuliScanResult res;
  res.family = family;
  res.points = parallel_map(
      params.size(),
      [&](std::size_t i) {
        ScanPoint pt;
        pt.raw = params[i];
        const InnerProduct g = metric_from_table(alg, pt.raw, tol);
        pt.snapped = g.params();
        pt.raw_stratum = stratum_of(family, pt.raw, 0.0);
        pt.stratum = stratum_of(family, pt.raw, tol.case_snap);
        const CurvatureData curv = compute_curvature(alg, g);
        const IsometryDescriptor iso = classify_isometry_group(alg, g, curv, tol);
        pt.group_tag = iso.group_tag;
        pt.index = index_of_symmetry(alg, g, curv, iso, tol).index;
        pt.in_singular_locus = in_singular_locus(family, pt.snapped);
        return pt;
      },
      grid.threads);

  for (const ScanPoint& pt : res.points) res.max_index = std::max(res.max_index, pt.index);
  res.singular_locus_ok = true;
  res.equality_ok = true;
  for (const ScanPoint& pt : res.points) {
    const bool maximal = pt.index == res.max_index;
    if (pt.in_singular_locus) {
      res.singular_locus_empty = false;
      if (!maximal) res.singular_locus_ok = false;
    } else if (maximal) {
      ++res.strict_witnesses;
      res.equality_ok = false;
    }
  }
  if (!res.singular_locus_ok) res.equality_ok = false;
  res.equality_asserted = family.kind() == FamilyTag::Kind::C && regime_of(family.c()) != CRegime::Between;
  return res;
}

}  // namespace lieiso
