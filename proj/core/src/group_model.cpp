#include "lieiso/group_model.hpp"

#include <cmath>
#include <stdexcept>

namespace lieiso {

namespace {

double scaled(double h, const GroupPoint& p) { return h * (1.0 + p.norm()); }

Mat3 inverse_checked(const Mat3& e) {
  const Eigen::FullPivLU<Mat3> lu(e);
  if (!lu.isInvertible()) throw std::runtime_error("singular frame matrix");
  return lu.inverse();
}

// Central difference along unit direction m, Richardson-extrapolated from
// steps h and h/2.
template <class F>
auto central_difference(const F& f, const GroupPoint& p, int m, double h) {
  const Vec3 step = h * Vec3::Unit(m);
  const auto coarse = ((f(p + step) - f(p - step)) / (2.0 * h)).eval();
  const auto fine = ((f(p + 0.5 * step) - f(p - 0.5 * step)) / h).eval();
  return ((4.0 * fine - coarse) / 3.0).eval();
}

}  // namespace

Mat2 phi_generator(const FamilyTag& family) {
  if (family.kind() == FamilyTag::Kind::I) return Mat2::Identity();
  Mat2 d;
  d << 0.0, -family.c(), 1.0, 2.0;
  return d;
}

Mat2 phi(const FamilyTag& family, double t) {
  const double et = std::exp(t);
  if (family.kind() == FamilyTag::Kind::I) return et * Mat2::Identity();
  const double c = family.c();
  Mat2 n;
  n << -1.0, -c, 1.0, 1.0;
  if (c == 1.0) return et * (Mat2::Identity() + t * n);
  if (c < 1.0) {
    const double c1 = std::sqrt(1.0 - c);
    return et * (std::cosh(c1 * t) * Mat2::Identity() + std::sinh(c1 * t) / c1 * n);
  }
  const double c1 = std::sqrt(c - 1.0);
  return et * (std::cos(c1 * t) * Mat2::Identity() + std::sin(c1 * t) / c1 * n);
}

GroupPoint multiply(const FamilyTag& family, const GroupPoint& p, const GroupPoint& q) {
  GroupPoint out;
  out.head<2>() = p.head<2>() + phi(family, p(2)) * q.head<2>();
  out(2) = p(2) + q(2);
  return out;
}

GroupPoint inverse(const FamilyTag& family, const GroupPoint& p) {
  GroupPoint out;
  out.head<2>() = -(phi(family, -p(2)) * p.head<2>());
  out(2) = -p(2);
  return out;
}

Mat3 left_translation_differential(const FamilyTag& family, const GroupPoint& p) {
  Mat3 d = Mat3::Zero();
  d.topLeftCorner<2, 2>() = phi(family, p(2));
  d(2, 2) = 1.0;
  return d;
}

Mat3 left_frame(const FamilyTag& family, const GroupPoint& p) {
  return left_translation_differential(family, p);
}

Mat3 right_frame(const FamilyTag& family, const GroupPoint& p) {
  Mat3 e = Mat3::Identity();
  e.block<2, 1>(0, 2) = phi_generator(family) * p.head<2>();
  return e;
}

VectorField left_invariant_field(const FamilyTag& family, const Vec3& v) {
  return [family, v](const GroupPoint& p) -> Vec3 { return left_frame(family, p) * v; };
}

VectorField right_invariant_field(const FamilyTag& family, const Vec3& v) {
  return [family, v](const GroupPoint& p) -> Vec3 { return right_frame(family, p) * v; };
}

Mat3 metric_field(const FamilyTag& family, const InnerProduct& g, const GroupPoint& p) {
  const Mat3 einv = inverse_checked(left_frame(family, p));
  return einv.transpose() * g.coeffs() * einv;
}

namespace {

// dg[m](i, j) = d_m g_ij.
std::array<Mat3, 3> metric_gradient(const FamilyTag& family, const InnerProduct& g,
                                    const GroupPoint& p, double h) {
  const auto field = [&](const GroupPoint& q) { return metric_field(family, g, q); };
  std::array<Mat3, 3> dg;
  for (int m = 0; m < 3; ++m) dg[m] = central_difference(field, p, m, h);
  return dg;
}

std::array<Mat3, 3> christoffel_at(const FamilyTag& family, const InnerProduct& g,
                                   const GroupPoint& p, double h) {
  const std::array<Mat3, 3> dg = metric_gradient(family, g, p, h);
  const Mat3 ginv = metric_field(family, g, p).inverse();
  std::array<Mat3, 3> gamma;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l) {
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        gamma[k](i, j) = 0.5 * s;
      }
    }
  }
  return gamma;
}

}  // namespace

std::array<Mat3, 3> numeric_christoffel(const FamilyTag& family, const InnerProduct& g,
                                        const GroupPoint& p, const DifferenceSteps& h) {
  return christoffel_at(family, g, p, scaled(h.first, p));
}

CovTensor numeric_riemann(const FamilyTag& family, const InnerProduct& g, const GroupPoint& p,
                          const DifferenceSteps& h) {
  const double h1 = scaled(h.first, p);
  const double h2 = scaled(h.second, p);
  const std::array<Mat3, 3> gamma = christoffel_at(family, g, p, h1);
  // dgamma[m][k](i, j) = d_m Gamma^k_ij.
  std::array<std::array<Mat3, 3>, 3> dgamma;
  for (int k = 0; k < 3; ++k) {
    const auto component = [&](const GroupPoint& q) { return christoffel_at(family, g, q, h1)[k]; };
    for (int m = 0; m < 3; ++m) dgamma[m][k] = central_difference(component, p, m, h2);
  }
  CovTensor r(3);
  for (int l = 0; l < 3; ++l) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          double s = dgamma[i][l](j, k) - dgamma[j][l](i, k);
          for (int m = 0; m < 3; ++m) {
            s += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
          }
          r(l, i, j, k) = s;
        }
      }
    }
  }
  return r;
}

CovTensor numeric_riemann_frame(const FamilyTag& family, const InnerProduct& g,
                                const GroupPoint& p, const DifferenceSteps& h) {
  const CovTensor rc = numeric_riemann(family, g, p, h);
  const Mat3 e = left_frame(family, p);
  const Mat3 einv = inverse_checked(e);
  CovTensor out(3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) {
          double s = 0.0;
          for (int l = 0; l < 3; ++l)
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                  s += einv(a, l) * rc(l, i, j, k) * e(i, b) * e(j, c) * e(k, d);
          out(a, b, c, d) = s;
        }
      }
    }
  }
  return out;
}

Mat3 numeric_ricci(const FamilyTag& family, const InnerProduct& g, const GroupPoint& p,
                   const DifferenceSteps& h) {
  const Mat3 r = ricci(numeric_riemann_frame(family, g, p, h), g);
  return 0.5 * (r + r.transpose());
}

double killing_residual(const FamilyTag& family, const InnerProduct& g, const VectorField& x,
                        const GroupPoint& p, double h) {
  const double hs = scaled(h, p);
  const std::array<Mat3, 3> dg = metric_gradient(family, g, p, hs);
  const Mat3 gp = metric_field(family, g, p);
  const Vec3 xp = x(p);
  // dx(k, i) = d_i X^k.
  Mat3 dx;
  for (int i = 0; i < 3; ++i) dx.col(i) = central_difference(x, p, i, hs);
  Mat3 lie = gp * dx + dx.transpose() * gp;
  for (int k = 0; k < 3; ++k) lie += xp(k) * dg[k];
  return lie.cwiseAbs().maxCoeff();
}

double frame_bracket_residual(const LieAlgebra3& alg, const GroupPoint& p, double h) {
  const FamilyTag& family = alg.family();
  const double hs = scaled(h, p);
  const Mat3 e = left_frame(family, p);
  // de[i] = d_i E (columns are frame vectors).
  const auto frame = [&](const GroupPoint& q) { return left_frame(family, q); };
  std::array<Mat3, 3> de;
  for (int i = 0; i < 3; ++i) de[i] = central_difference(frame, p, i, hs);
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Vec3 lie = Vec3::Zero();
      for (int i = 0; i < 3; ++i) lie += e(i, a) * de[i].col(b) - e(i, b) * de[i].col(a);
      const Vec3 expected = e * alg.bracket(Vec3::Unit(a), Vec3::Unit(b));
      worst = std::max(worst, (lie - expected).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace lieiso
