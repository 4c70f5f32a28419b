#pragma once

#include <functional>

#include "lieiso/curvature.hpp"

namespace lieiso {

/// A point (x0, x1, x2) of the global chart R^2 x R, written (v, t).
using GroupPoint = Vec3;
using VectorField = std::function<Vec3(const GroupPoint&)>;

/// The one-parameter group t -> exp(t D) acting on the R^2 factor, where
/// D = phi'(0) is the matrix of ad(e2) on span(e0, e1).
Mat2 phi(const FamilyTag& family, double t);
Mat2 phi_generator(const FamilyTag& family);

/// (v, t)(w, s) = (v + phi(t) w, t + s).
GroupPoint multiply(const FamilyTag& family, const GroupPoint& p, const GroupPoint& q);
GroupPoint inverse(const FamilyTag& family, const GroupPoint& p);

/// Differential of left translation by p (constant in the argument).
Mat3 left_translation_differential(const FamilyTag& family, const GroupPoint& p);

enum class FrameKind { LeftInvariant, RightInvariant };

/// Columns are the frame vectors in coordinates.
Mat3 left_frame(const FamilyTag& family, const GroupPoint& p);
Mat3 right_frame(const FamilyTag& family, const GroupPoint& p);

struct FrameField {
  FamilyTag family = FamilyTag::identity();
  FrameKind kind = FrameKind::LeftInvariant;

  Mat3 eval(const GroupPoint& p) const {
    return kind == FrameKind::LeftInvariant ? left_frame(family, p) : right_frame(family, p);
  }
};

VectorField left_invariant_field(const FamilyTag& family, const Vec3& v);
VectorField right_invariant_field(const FamilyTag& family, const Vec3& v);

/// g_p = E(p)^{-T} G E(p)^{-1} with E the left frame.
Mat3 metric_field(const FamilyTag& family, const InnerProduct& g, const GroupPoint& p);

/// Finite-difference steps; each is scaled by (1 + |p|). Derivatives are
/// central differences at h and h/2 combined by Richardson extrapolation.
struct DifferenceSteps {
  double first = 1e-4;
  double second = 1e-3;
};

/// christoffel[k](i, j) = Gamma^k_{ij} in coordinates.
std::array<Mat3, 3> numeric_christoffel(const FamilyTag& family, const InnerProduct& g,
                                        const GroupPoint& p, const DifferenceSteps& h = {});

/// Curvature tensor in coordinates, (R(d_i, d_j) d_k)^l at index (l, i, j, k).
CovTensor numeric_riemann(const FamilyTag& family, const InnerProduct& g, const GroupPoint& p,
                          const DifferenceSteps& h = {});

/// The same tensor expressed in the left-invariant frame at p.
CovTensor numeric_riemann_frame(const FamilyTag& family, const InnerProduct& g,
                                const GroupPoint& p, const DifferenceSteps& h = {});

/// Ricci form in the left-invariant frame at p; equals the algebraic Ricci
/// matrix for every p.
Mat3 numeric_ricci(const FamilyTag& family, const InnerProduct& g, const GroupPoint& p,
                   const DifferenceSteps& h = {});

/// max |(L_X g)_p| by central differences with step h (1 + |p|).
double killing_residual(const FamilyTag& family, const InnerProduct& g, const VectorField& x,
                        const GroupPoint& p, double h = 1e-4);

/// max |[e_a, e_b](p) - sum_k c^k_ab e_k(p)| over left-frame pairs.
double frame_bracket_residual(const LieAlgebra3& alg, const GroupPoint& p, double h = 1e-4);

}  // namespace lieiso
