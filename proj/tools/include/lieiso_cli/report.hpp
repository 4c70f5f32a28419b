#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include <lieiso/group_model.hpp>
#include <lieiso/symmetry.hpp>

namespace lieiso::cli {

inline constexpr const char* kSchemaVersion = "lieiso.report/1";

/// Each reported number carries the tolerance it was validated against.
struct Scalar {
  double value = 0.0;
  double tol = 0.0;
  bool operator==(const Scalar&) const = default;
};

struct Vector {
  std::vector<double> value;
  double tol = 0.0;
  bool operator==(const Vector&) const = default;
};

struct Matrix {
  std::vector<std::vector<double>> value;
  double tol = 0.0;
  bool operator==(const Matrix&) const = default;
};

struct InputEcho {
  std::string family;
  std::optional<double> c;
  std::string metric;
  std::optional<double> mu;
  std::optional<double> nu;
  std::optional<double> lambda;
  Matrix gram;
  bool boundary_snapped = false;
  Tolerances tolerances;
  bool operator==(const InputEcho&) const = default;
};

struct CurvatureSection {
  Matrix ricci;
  Scalar scalar;
  Scalar sectional_min;
  Scalar sectional_max;
  Scalar nabla_r;
  bool locally_symmetric = false;
  bool operator==(const CurvatureSection&) const = default;
};

struct IsometrySection {
  int total_dim = 3;
  int isotropy_dim = 0;
  std::string group_tag;
  std::vector<Matrix> generators;
  bool symmetric_space = false;
  Scalar singer_residual;
  /// Flat factor direction when the metric splits as a product.
  Vector splitting_line;
  bool operator==(const IsometrySection&) const = default;
};

struct BracketEntry {
  std::string left;
  std::string right;
  Vector coeffs;
  bool operator==(const BracketEntry&) const = default;
};

struct KillingSection {
  std::vector<std::string> basis;
  std::vector<BracketEntry> brackets;
  Matrix form;
  Vector eigenvalues;
  Scalar closure_residual;
  Scalar jacobi_defect;
  bool operator==(const KillingSection&) const = default;
};

struct SymmetrySection {
  int index = 0;
  std::string span;
  Vector generator;
  Vector unit_generator;
  Scalar certificate;
  bool symmetric = false;
  bool operator==(const SymmetrySection&) const = default;
};

struct ResidualSection {
  Scalar metric_compatibility;
  Scalar torsion;
  Scalar bianchi1;
  Scalar bianchi2;
  Scalar ricci_fd;
  Scalar killing_fd;
  Scalar frame_bracket_fd;
  bool operator==(const ResidualSection&) const = default;
};

struct ReportDocument {
  std::string schema_version = kSchemaVersion;
  InputEcho input;
  CurvatureSection curvature;
  IsometrySection isometry;
  KillingSection killing;
  SymmetrySection symmetry;
  ResidualSection residuals;
  bool operator==(const ReportDocument&) const = default;
};

ReportDocument build_report(const LieAlgebra3& alg, const InnerProduct& g, const Tolerances& tol);

void to_json(nlohmann::json& j, const ReportDocument& r);
void from_json(const nlohmann::json& j, ReportDocument& r);

/// One "path = value" line per leaf; arrays of numbers stay on one line.
std::string render_text(const nlohmann::json& j);
nlohmann::json parse_text(const std::string& text);

/// Fixed numeric tolerances used by the report and the verify command.
struct OracleTolerances {
  double ricci = 1e-9;
  double metric_compatibility = 1e-10;
  double torsion = 1e-12;
  double bianchi = 1e-9;
  double ricci_fd = 1e-3;
  double killing_fd = 1e-5;
  double frame_bracket_fd = 1e-4;
  double sectional_fd = 1e-4;
};

}  // namespace lieiso::cli
