#pragma once

namespace lieiso {

/// Numerical thresholds shared by every stage of the engine.
struct Tolerances {
  /// Relative pivot threshold for row reduction (scaled by the largest
  /// absolute entry of the matrix being reduced).
  double rank = 1e-9;
  /// Parameters closer than this to a stratum boundary are snapped onto it.
  double case_snap = 1e-7;
  /// Absolute Jacobi/antisymmetry tolerance when building an algebra.
  double jacobi = 1e-12;
  /// Post-solve residual allowed for A·(∇^s R) on isotropy generators.
  double singer = 1e-9;
  /// Closure and Jacobi residual of the Killing algebra bracket table.
  double closure = 1e-8;

  bool operator==(const Tolerances&) const = default;
};

}  // namespace lieiso
