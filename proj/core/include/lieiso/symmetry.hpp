#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lieiso/isometry.hpp"

namespace lieiso {

struct SymmetryReport {
  /// 0, 1 or 3.
  int index = 0;
  /// Spans the distribution of symmetry at e when index == 1; first nonzero
  /// coordinate equal to 1.
  std::optional<Vec3> generator;
  /// The same direction with unit g-norm.
  std::optional<Vec3> unit_generator;
  /// Coefficients alpha_j with B_v + sum alpha_j A_j = 0 for v = generator.
  std::vector<double> isotropy_coeffs;
  bool symmetric = false;
  /// max |B_v + sum alpha_j A_j| for the returned generator.
  double certificate_residual = 0.0;
  /// Dimension of {v : B_v in span(A_j)}; equals index unless symmetric.
  int solved_dim = 0;
};

SymmetryReport index_of_symmetry(const LieAlgebra3& alg, const InnerProduct& g,
                                 const CurvatureData& curv, const IsometryDescriptor& iso,
                                 const Tolerances& tol = {});
SymmetryReport index_of_symmetry(const LieAlgebra3& alg, const InnerProduct& g,
                                 const Tolerances& tol = {});

/// Rows of the index-of-symmetry table, in table order.
enum class StratumId {
  I_Nu,
  Negative_Generic,
  Negative_Boundary,
  Zero_MuNu,
  Zero_Nu,
  Between_MuZero,
  Between_Generic,
  Between_Sqrt,
  One_Generic,
  One_MuOne,
  One_Lambda,
  Above_Generic,
  Above_Special,
  Above_MuC,
};

struct StratumInfo {
  StratumId id;
  std::string name;
  FamilyTag::Kind family;
  CRegime regime;
  MetricKind metric;
  std::string constraint;
};

const std::vector<StratumInfo>& table2_strata();
const StratumInfo& stratum_info(StratumId id);

/// Stratum of a catalog metric after snapping parameters within tol onto
/// stratum boundaries. Throws RangeError for parameters outside the table.
StratumId stratum_of(const FamilyTag& family, const MetricParams& params, double tol);

struct StratumSample {
  FamilyTag family = FamilyTag::identity();
  MetricParams params;
};

/// Deterministic k-th sample of a stratum. Samples cycle through several
/// values of c, nu and a generic parameter fraction.
StratumSample sample_stratum(StratumId id, int k);

struct Table2Row {
  StratumId stratum;
  SymmetryReport report;
  /// "TG", "-" or "R(v0, v1, v2)".
  std::string span_label;
};

Table2Row table2_row(const LieAlgebra3& alg, const InnerProduct& g, const Tolerances& tol = {});

std::string span_label(const SymmetryReport& report);

struct GridSpec {
  int n_mu = 10;
  int n_nu = 5;
  double nu_min = 0.25;
  double nu_max = 4.0;
  /// Upper end of the unbounded mu range for c = 0.
  double mu_max = 10.0;
  unsigned threads = 0;
};

struct ScanPoint {
  MetricParams raw;
  MetricParams snapped;
  StratumId raw_stratum;
  StratumId stratum;
  int index = 0;
  GroupTag group_tag = GroupTag::TranslationsOnly;
  bool in_singular_locus = false;
};

struct ModuliScanResult {
  FamilyTag family = FamilyTag::identity();
  std::vector<ScanPoint> points;
  /// Largest index observed on the grid.
  int max_index = 0;
  bool singular_locus_empty = true;
  /// Every sampled point of Z has maximal index.
  bool singular_locus_ok = false;
  /// Whether S = Z is expected for this family.
  bool equality_asserted = false;
  /// Every point of maximal index lies in Z (and conversely).
  bool equality_ok = false;
  /// Points of maximal index outside Z.
  int strict_witnesses = 0;
};

/// Singular locus membership for a snapped catalog point.
bool in_singular_locus(const FamilyTag& family, const MetricParams& params);

/// Throws RangeError for grid bounds outside the family's parameter ranges
/// and std::invalid_argument for custom families or empty grids.
ModuliScanResult scan_moduli(const FamilyTag& family, const GridSpec& grid,
                             const Tolerances& tol = {});

}  // namespace lieiso
