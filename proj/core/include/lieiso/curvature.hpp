#pragma once

#include <array>

#include "lieiso/algebra.hpp"
#include "lieiso/metric.hpp"
#include "lieiso/tensor.hpp"

namespace lieiso {

/// Levi-Civita connection at the identity: lambda[i] is the matrix of
/// y -> nabla_{e_i} y on left-invariant fields.
struct ConnectionOperator {
  std::array<Mat3, 3> lambda;

  /// Lambda(x) = sum_i x_i lambda[i].
  Mat3 operator()(const Vec3& x) const;
};

/// Koszul formula: 2<Lambda(x)y, z> = <[x,y],z> - <[y,z],x> + <[z,x],y>.
ConnectionOperator levi_civita(const LieAlgebra3& alg, const InnerProduct& g);

/// R(x,y) = Lambda(x)Lambda(y) - Lambda(y)Lambda(x) - Lambda([x,y]) stored as
/// R^l_{xyz} = (R(e_x, e_y) e_z)^l.
CovTensor curvature(const ConnectionOperator& conn, const LieAlgebra3& alg);

/// sum_{x,y} v_x w_y R(e_x, e_y) for an order-3 tensor.
Mat3 curvature_endomorphism(const CovTensor& r, const Vec3& v, const Vec3& w);

/// Ric(y,z) = sum_i <R(f_i, y) z, f_i> over a g-orthonormal frame f.
Mat3 ricci(const CovTensor& r, const InnerProduct& g);
double scalar_curvature(const Mat3& ric, const InnerProduct& g);

/// <R(x,y)y, x> / (|x|^2 |y|^2 - <x,y>^2).
double sectional_curvature(const CovTensor& r, const InnerProduct& g, const Vec3& x,
                           const Vec3& y);

/// Curvature operator on the g-orthonormal bivectors f0^f1, f0^f2, f1^f2.
/// In dimension 3 its eigenvalues bound every sectional curvature.
Mat3 curvature_operator(const CovTensor& r, const InnerProduct& g);

struct SectionalRange {
  double min = 0.0;
  double max = 0.0;
};
SectionalRange sectional_range(const CovTensor& r, const InnerProduct& g);

/// (A.T)(w, v_1..v_k) = -T(w o A, v_1..v_k) + sum_j T(w, .., A v_j, ..).
/// This is an anti-homomorphism: [A,B].T = -(A.(B.T) - B.(A.T)).
CovTensor so_action(const Mat3& a, const CovTensor& t);

/// (nabla T)(x; v_1..v_k) = Lambda(x) T(v..) - sum_j T(.., Lambda(x) v_j, ..);
/// the derivative direction x becomes the first lower slot.
CovTensor covariant_derivative(const CovTensor& t, const ConnectionOperator& conn);

/// (nabla_{e_x} S)(y, z) for a left-invariant bilinear form S, indexed [x](y,z).
std::array<Mat3, 3> covariant_derivative_of_form(const Mat3& form,
                                                 const ConnectionOperator& conn);

double metric_compatibility_defect(const ConnectionOperator& conn, const InnerProduct& g);
double torsion_defect(const ConnectionOperator& conn, const LieAlgebra3& alg);
/// Cyclic sum R(x,y)z + R(y,z)x + R(z,x)y.
double bianchi1_defect(const CovTensor& r);
/// Cyclic sum over the first three lower slots of nabla R.
double bianchi2_defect(const CovTensor& dr);

/// Everything curvature-related that later stages reuse.
struct CurvatureData {
  ConnectionOperator conn;
  CovTensor r{3};
  CovTensor dr{4};
  CovTensor ddr{5};
  Mat3 ricci = Mat3::Zero();
  double scalar = 0.0;
  SectionalRange sectional;
};

CurvatureData compute_curvature(const LieAlgebra3& alg, const InnerProduct& g);

}  // namespace lieiso
