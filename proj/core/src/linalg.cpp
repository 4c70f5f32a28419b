#include "lieiso/linalg.hpp"

#include <cmath>

namespace lieiso::linalg {

RowEchelon rref(const Eigen::MatrixXd& m, double rel_tol, double scale) {
  RowEchelon out;
  out.reduced = m;
  Eigen::MatrixXd& a = out.reduced;
  const double max_entry = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  if (scale < 0.0) scale = max_entry;
  out.threshold = rel_tol * scale;
  if (max_entry == 0.0) {
    a.setZero();
    return out;
  }

  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index best = row;
    a.col(col).segment(row, rows - row).cwiseAbs().maxCoeff(&best);
    best += row;
    if (std::abs(a(best, col)) <= out.threshold) {
      a.col(col).segment(row, rows - row).setZero();
      continue;
    }
    a.row(row).swap(a.row(best));
    a.row(row) /= a(row, col);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r != row && a(r, col) != 0.0) {
        a.row(r) -= a(r, col) * a.row(row);
      }
    }
    out.pivot_columns.push_back(static_cast<int>(col));
    ++row;
  }
  if (row < rows) a.bottomRows(rows - row).setZero();
  return out;
}

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol, double scale) {
  return rref(m, rel_tol, scale).rank();
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_tol, double scale) {
  const RowEchelon e = rref(m, rel_tol, scale);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int p : e.pivot_columns) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  }

  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Eigen::Index f = free_cols[k];
    kernel(f, static_cast<Eigen::Index>(k)) = 1.0;
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) {
      kernel(e.pivot_columns[r], static_cast<Eigen::Index>(k)) =
          -e.reduced(static_cast<Eigen::Index>(r), f);
    }
  }
  return kernel;
}

Eigen::Matrix<double, 9, 1> flatten(const Mat3& m) {
  Eigen::Matrix<double, 9, 1> v;
  for (std::size_t k = 0; k < kEntryOrder.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = m(kEntryOrder[k][0], kEntryOrder[k][1]);
  }
  return v;
}

Mat3 unflatten(const Eigen::Matrix<double, 9, 1>& v) {
  Mat3 m;
  for (std::size_t k = 0; k < kEntryOrder.size(); ++k) {
    m(kEntryOrder[k][0], kEntryOrder[k][1]) = v(static_cast<Eigen::Index>(k));
  }
  return m;
}

Eigen::MatrixXd stack_flat(const std::vector<Mat3>& ms) {
  Eigen::MatrixXd out(9, static_cast<Eigen::Index>(ms.size()));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = flatten(ms[i]);
  }
  return out;
}

double projection_residual(const std::vector<Mat3>& basis, const Mat3& m) {
  const Eigen::Matrix<double, 9, 1> target = flatten(m);
  if (basis.empty()) return target.norm();
  const Eigen::MatrixXd b = stack_flat(basis);
  const Eigen::VectorXd coeff = b.colPivHouseholderQr().solve(target);
  return (b * coeff - target).norm();
}

bool same_span(const std::vector<Mat3>& a, const std::vector<Mat3>& b,
               double rel_tol) {
  const int ra = a.empty() ? 0 : numeric_rank(stack_flat(a), rel_tol);
  const int rb = b.empty() ? 0 : numeric_rank(stack_flat(b), rel_tol);
  if (ra != rb) return false;
  if (ra == 0) return true;
  std::vector<Mat3> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return numeric_rank(stack_flat(both), rel_tol) == ra;
}

}  // namespace lieiso::linalg
