#pragma once

#include <array>
#include <string>

#include "lieiso/linalg.hpp"

namespace lieiso {

/// Which member of the non-unimodular catalog an algebra belongs to.
class FamilyTag {
 public:
  enum class Kind { I, C, Custom };

  static FamilyTag identity() { return FamilyTag(Kind::I, 0.0); }
  static FamilyTag c(double value) { return FamilyTag(Kind::C, value); }
  static FamilyTag custom() { return FamilyTag(Kind::Custom, 0.0); }

  Kind kind() const { return kind_; }
  /// The isomorphism invariant det A; zero unless kind() == Kind::C.
  double c() const { return c_; }
  bool is_catalog() const { return kind_ != Kind::Custom; }
  std::string label() const;

  bool operator==(const FamilyTag&) const = default;

 private:
  FamilyTag(Kind kind, double c) : kind_(kind), c_(c) {}

  Kind kind_;
  double c_;
};

/// structure[k](i, j) = c^k_{ij}, i.e. [e_i, e_j] = sum_k c^k_{ij} e_k.
using StructureConstants = std::array<Mat3, 3>;

/// A 3-dimensional real Lie algebra in a fixed basis e_0, e_1, e_2.
class LieAlgebra3 {
 public:
  /// Throws std::invalid_argument if the constants are not antisymmetric or
  /// violate the Jacobi identity by more than jacobi_tol.
  explicit LieAlgebra3(const StructureConstants& structure,
                       FamilyTag family = FamilyTag::custom(),
                       double jacobi_tol = 1e-12);

  const StructureConstants& structure() const { return structure_; }
  const FamilyTag& family() const { return family_; }

  Vec3 bracket(const Vec3& x, const Vec3& y) const;
  /// ad(x) as a matrix: ad(x) y = [x, y].
  Mat3 ad(const Vec3& x) const;
  /// Max-abs entry of the cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].
  double jacobi_defect() const;
  /// The 2x2 matrix A = (alpha beta; gamma delta) with [e_2, e_0] = alpha e_0 + beta e_1
  /// and [e_2, e_1] = gamma e_0 + delta e_1.
  Mat2 ad_block() const;

 private:
  StructureConstants structure_;
  FamilyTag family_;
};

/// [e_0,e_1] = 0, [e_2,e_0] = e_0, [e_2,e_1] = e_1.
LieAlgebra3 make_algebra_I();
/// [e_0,e_1] = 0, [e_2,e_0] = e_1, [e_2,e_1] = -c e_0 + 2 e_1, i.e. A = (0 1; -c 2).
LieAlgebra3 make_algebra_c(double c);

/// make_algebra_I or make_algebra_c; throws std::invalid_argument for custom tags.
LieAlgebra3 make_algebra(const FamilyTag& family);

Vec3 bracket(const LieAlgebra3& alg, const Vec3& x, const Vec3& y);
bool is_unimodular(const LieAlgebra3& alg, double tol = 1e-12);

}  // namespace lieiso
