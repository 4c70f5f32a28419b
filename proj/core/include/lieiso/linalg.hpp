#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace lieiso {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;

namespace linalg {

/// Reduced row echelon form computed with partial pivoting per column.
struct RowEchelon {
  Eigen::MatrixXd reduced;
  std::vector<int> pivot_columns;
  double threshold = 0.0;

  int rank() const { return static_cast<int>(pivot_columns.size()); }
};

/// A column counts as a pivot column when its largest remaining entry
/// exceeds rel_tol * scale, where a negative scale means max|m|. Columns are
/// scanned left to right, so later columns are preferred as free variables.
RowEchelon rref(const Eigen::MatrixXd& m, double rel_tol, double scale = -1.0);

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol, double scale = -1.0);

/// Kernel basis as columns. Each basis vector has a 1 in its own free
/// coordinate and 0 in the other free coordinates.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_tol, double scale = -1.0);

/// Order in which 3x3 matrix entries are flattened for kernel problems.
/// Entries listed last become the free parameters: (1,0), (1,1), (2,0), (2,1).
inline constexpr std::array<std::array<int, 2>, 9> kEntryOrder{{
    {0, 0}, {0, 1}, {0, 2}, {1, 2}, {2, 2}, {1, 0}, {1, 1}, {2, 0}, {2, 1}}};

Eigen::Matrix<double, 9, 1> flatten(const Mat3& m);
Mat3 unflatten(const Eigen::Matrix<double, 9, 1>& v);

/// Columns of the returned matrix are the flattened inputs.
Eigen::MatrixXd stack_flat(const std::vector<Mat3>& ms);

/// Residual of projecting m onto span(basis) in the Frobenius sense.
double projection_residual(const std::vector<Mat3>& basis, const Mat3& m);

/// True when span(a) == span(b) up to rel_tol.
bool same_span(const std::vector<Mat3>& a, const std::vector<Mat3>& b,
               double rel_tol);

}  // namespace linalg
}  // namespace lieiso
