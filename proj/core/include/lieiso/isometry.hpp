#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lieiso/curvature.hpp"
#include "lieiso/settings.hpp"

namespace lieiso {

/// Initial data of a Killing field at the identity: X_e = v, (nabla X)_e = b.
struct KillingGenerator {
  Vec3 v = Vec3::Zero();
  Mat3 b = Mat3::Zero();
};

enum class GroupTag { TranslationsOnly, Product_SO2, E1_x_SO21, SO31 };

std::string to_string(GroupTag tag);
std::optional<GroupTag> group_tag_from_string(const std::string& s);

/// Raised when a result contradicts a structural fact the engine relies on
/// (isotropy of dimension 2, a non-closing Killing algebra, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Metric splitting off a parallel line, (G, g) = R x H^2 up to scale.
struct ProductSplitting {
  /// Direction of the flat factor in the e-frame.
  Vec3 line = Vec3::Zero();
  /// Sectional curvature of the H^2 factor.
  double factor_curvature = 0.0;
  /// Frame (columns) in which the metric is block diagonal, when known.
  std::optional<Mat3> frame;
  std::optional<Mat3> metric_in_frame;
};

struct IsometryDescriptor {
  int total_dim = 3;
  int isotropy_dim = 0;
  GroupTag group_tag = GroupTag::TranslationsOnly;
  std::vector<Mat3> isotropy_generators;
  bool symmetric_space = false;
  /// Largest relative residual of A.(nabla^s R), s = 0, 1, 2.
  double singer_residual = 0.0;
  std::optional<ProductSplitting> splitting;
};

/// Isotropy algebra via Singer's criterion: skew endomorphisms annihilating
/// R, nabla R and nabla^2 R. With ricci_prefilter the search starts from
/// so(g) intersected with the stabilizer of Ric.
std::vector<Mat3> singer_isotropy(const InnerProduct& g, const CurvatureData& curv,
                                  const Tolerances& tol = {}, bool ricci_prefilter = true);

double singer_residual(const std::vector<Mat3>& generators, const CurvatureData& curv);

/// (nabla X)_e for the right-invariant field with X_e = v:
/// B_v(x) = Lambda(x) v - [x, v].
Mat3 right_invariant_B(const LieAlgebra3& alg, const ConnectionOperator& conn, const Vec3& v);

/// ([X,X']_e, (nabla [X,X'])_e) = (B'v - Bv', R_{v,v'} - [B, B']).
KillingGenerator killing_bracket(const KillingGenerator& a, const KillingGenerator& b,
                                 const CovTensor& r);

struct KillingAlgebra {
  std::vector<KillingGenerator> basis;
  std::vector<std::string> labels;
  /// structure[k](i, j): coefficient of basis[k] in [basis[i], basis[j]].
  std::vector<Eigen::MatrixXd> structure;
  double closure_residual = 0.0;

  int dim() const { return static_cast<int>(basis.size()); }
};

/// Right-invariant generators r_0, r_1, r_2 followed by the isotropy
/// generators. Throws ConsistencyError if brackets leave the span.
KillingAlgebra killing_algebra(const LieAlgebra3& alg, const CurvatureData& curv,
                               const std::vector<Mat3>& isotropy, const Tolerances& tol = {});

double jacobi_defect(const std::vector<Eigen::MatrixXd>& structure);

struct KillingForm {
  Eigen::MatrixXd form;
  /// Ascending.
  Eigen::VectorXd eigenvalues;
};

/// K(x, y) = tr(ad_x ad_y) in the given basis.
KillingForm killing_form(const std::vector<Eigen::MatrixXd>& structure);

/// Ricci spectrum (0, -a, -a) with a parallel kernel line.
std::optional<ProductSplitting> detect_product_splitting(const LieAlgebra3& alg,
                                                         const InnerProduct& g,
                                                         const CurvatureData& curv,
                                                         const Tolerances& tol = {});

/// True when nabla R vanishes relative to the size of R and the connection.
bool is_locally_symmetric(const CurvatureData& curv, const Tolerances& tol = {});

/// Requires a catalog algebra (family I or c); throws std::invalid_argument otherwise.
IsometryDescriptor classify_isometry_group(const LieAlgebra3& alg, const InnerProduct& g,
                                           const CurvatureData& curv, const Tolerances& tol = {});
IsometryDescriptor classify_isometry_group(const LieAlgebra3& alg, const InnerProduct& g,
                                           const Tolerances& tol = {});

}  // namespace lieiso
