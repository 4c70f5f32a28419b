#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lieiso/algebra.hpp"
#include "lieiso/settings.hpp"

namespace lieiso {

/// Shape of a catalog metric: g_nu, g_{mu,nu}, g'_{lambda,nu}, or an
/// arbitrary Gram matrix.
enum class MetricKind { Nu, MuNu, LambdaNu, Gram };

std::string to_string(MetricKind kind);

struct MetricParams {
  MetricKind kind = MetricKind::MuNu;
  double mu = 0.0;
  double nu = 1.0;
  double lambda = 0.0;

  static MetricParams g_nu(double nu) { return {MetricKind::Nu, 0.0, nu, 0.0}; }
  static MetricParams g_mu_nu(double mu, double nu) { return {MetricKind::MuNu, mu, nu, 0.0}; }
  static MetricParams g_lambda_nu(double lambda, double nu) {
    return {MetricKind::LambdaNu, 0.0, nu, lambda};
  }
  static MetricParams gram() { return {MetricKind::Gram, 0.0, 0.0, 0.0}; }

  bool operator==(const MetricParams&) const = default;
};

/// Position of c relative to the catalog's case splits.
enum class CRegime { Negative, Zero, Between, One, Above };

std::string to_string(CRegime regime);
/// Values within tol of 0 or 1 count as those boundary cases.
CRegime regime_of(double c, double tol = 0.0);

/// Parameter ranges violate the metric table.
class RangeError : public std::invalid_argument {
 public:
  RangeError(const std::string& what, std::string constraint)
      : std::invalid_argument(what), constraint_(std::move(constraint)) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

/// A Gram matrix that is not symmetric positive definite.
class InvalidGramError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A symmetric form whose numeric rank is below 3.
class DegenerateFormError : public std::runtime_error {
 public:
  explicit DegenerateFormError(int rank);
  int rank() const { return rank_; }

 private:
  int rank_;
};

/// Left-invariant metric: G_{ij} = <e_i, e_j>.
class InnerProduct {
 public:
  /// Throws InvalidGramError unless g is symmetric positive definite.
  static InnerProduct from_gram(const Mat3& g, FamilyTag family = FamilyTag::custom());

  const Mat3& coeffs() const { return coeffs_; }
  const MetricParams& params() const { return params_; }
  const FamilyTag& family() const { return family_; }
  /// True when metric_from_table moved a parameter onto a stratum boundary.
  bool boundary_snapped() const { return snapped_; }

  double operator()(const Vec3& x, const Vec3& y) const { return x.dot(coeffs_ * y); }
  double norm(const Vec3& x) const;

 private:
  InnerProduct(const Mat3& g, FamilyTag family, MetricParams params, bool snapped)
      : coeffs_(g), family_(family), params_(params), snapped_(snapped) {}

  friend InnerProduct metric_from_table(const LieAlgebra3&, const MetricParams&,
                                        const Tolerances&);

  Mat3 coeffs_;
  FamilyTag family_;
  MetricParams params_;
  bool snapped_ = false;
};

bool is_positive_definite(const Mat3& g);

/// Metric-table constraint text for a regime/metric shape, e.g. "0 < mu <= |c|, 0 < nu".
std::string table1_constraint(FamilyTag::Kind family, CRegime regime, MetricKind kind);

struct SnapResult {
  double c = 0.0;
  MetricParams params;
  bool snapped = false;
};

/// Moves c and the metric parameters onto the nearest stratum boundary when
/// they lie within tol of it (mu = |c|, mu = 0, mu = sqrt(c), mu = 1,
/// lambda = 0, mu = (sqrt(c) - 1)^2 + 1, mu = c).
SnapResult snap_to_strata(const FamilyTag& family, const MetricParams& params, double tol);

/// The change-of-basis matrix used to present metrics when 0 < c < 1.
Mat3 table_p_matrix(double c);

/// Builds the catalog metric. Throws RangeError naming the violated
/// constraint, and std::invalid_argument for custom algebras.
InnerProduct metric_from_table(const LieAlgebra3& alg, const MetricParams& params,
                               const Tolerances& tol = {});

/// Basis of a matrix Lie algebra {M : M^T S + S M = 0}.
struct SkewAlgebraBasis {
  std::vector<Mat3> basis;
  std::vector<std::string> labels;

  int dim() const { return static_cast<int>(basis.size()); }
};

/// so(S) for a nondegenerate symmetric form. Throws DegenerateFormError
/// carrying the numeric rank when S is degenerate.
SkewAlgebraBasis skew_algebra(const Mat3& form, double rel_tol = 1e-9);

/// Same equation as skew_algebra without the nondegeneracy requirement.
SkewAlgebraBasis stabilizer(const Mat3& form, double rel_tol = 1e-9);

/// Canonical basis of span(ms): free parameters are taken from the entries
/// (1,0), (1,1), (2,0), (2,1) in that order of preference.
SkewAlgebraBasis canonical_span(const std::vector<Mat3>& ms, double rel_tol = 1e-9);

SkewAlgebraBasis intersect_skew(const SkewAlgebraBasis& a, const SkewAlgebraBasis& b,
                                double rel_tol = 1e-9);

}  // namespace lieiso
