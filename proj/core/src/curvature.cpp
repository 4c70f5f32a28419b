#include "lieiso/curvature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lieiso {

Mat3 ConnectionOperator::operator()(const Vec3& x) const {
  return x(0) * lambda[0] + x(1) * lambda[1] + x(2) * lambda[2];
}

ConnectionOperator levi_civita(const LieAlgebra3& alg, const InnerProduct& g) {
  const Mat3& gm = g.coeffs();
  const Mat3 ginv = gm.inverse();
  ConnectionOperator conn;
  for (int x = 0; x < 3; ++x) {
    const Vec3 ex = Vec3::Unit(x);
    for (int y = 0; y < 3; ++y) {
      const Vec3 ey = Vec3::Unit(y);
      Vec3 lowered;
      for (int z = 0; z < 3; ++z) {
        const Vec3 ez = Vec3::Unit(z);
        lowered(z) = 0.5 * (g(alg.bracket(ex, ey), ez) - g(alg.bracket(ey, ez), ex) +
                            g(alg.bracket(ez, ex), ey));
      }
      conn.lambda[static_cast<std::size_t>(x)].col(y) = ginv * lowered;
    }
  }
  return conn;
}

CovTensor curvature(const ConnectionOperator& conn, const LieAlgebra3& alg) {
  CovTensor r(3);
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      const Mat3& lx = conn.lambda[static_cast<std::size_t>(x)];
      const Mat3& ly = conn.lambda[static_cast<std::size_t>(y)];
      const Mat3 rxy = lx * ly - ly * lx - conn(alg.bracket(Vec3::Unit(x), Vec3::Unit(y)));
      for (int l = 0; l < 3; ++l) {
        for (int z = 0; z < 3; ++z) r(l, x, y, z) = rxy(l, z);
      }
    }
  }
  return r;
}

Mat3 curvature_endomorphism(const CovTensor& r, const Vec3& v, const Vec3& w) {
  if (r.order() != 3) throw std::invalid_argument("curvature tensor must have order 3");
  Mat3 out = Mat3::Zero();
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      const double s = v(x) * w(y);
      if (s == 0.0) continue;
      for (int l = 0; l < 3; ++l) {
        for (int z = 0; z < 3; ++z) out(l, z) += s * r(l, x, y, z);
      }
    }
  }
  return out;
}

namespace {

// Columns form a g-orthonormal frame.
Mat3 orthonormal_frame(const InnerProduct& g) {
  const Eigen::LLT<Mat3> llt(g.coeffs());
  const Mat3 l = llt.matrixL();
  return l.transpose().inverse();
}

}  // namespace

Mat3 ricci(const CovTensor& r, const InnerProduct& g) {
  if (r.order() != 3) throw std::invalid_argument("ricci expects an order-3 tensor");
  const Mat3 f = orthonormal_frame(g);
  Mat3 ric = Mat3::Zero();
  for (int y = 0; y < 3; ++y) {
    for (int z = 0; z < 3; ++z) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        const Vec3 fi = f.col(i);
        const Vec3 rz = curvature_endomorphism(r, fi, Vec3::Unit(y)) * Vec3::Unit(z);
        s += g(rz, fi);
      }
      ric(y, z) = s;
    }
  }
  return ric;
}

double scalar_curvature(const Mat3& ric, const InnerProduct& g) {
  return (g.coeffs().inverse() * ric).trace();
}

double sectional_curvature(const CovTensor& r, const InnerProduct& g, const Vec3& x,
                           const Vec3& y) {
  const double area = g(x, x) * g(y, y) - g(x, y) * g(x, y);
  if (area <= 0.0) throw std::invalid_argument("sectional curvature needs independent vectors");
  return g(curvature_endomorphism(r, x, y) * y, x) / area;
}

Mat3 curvature_operator(const CovTensor& r, const InnerProduct& g) {
  static constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
  const Mat3 f = orthonormal_frame(g);
  Mat3 q;
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t s = 0; s < 3; ++s) {
      const Vec3 a = f.col(kPairs[p][0]), b = f.col(kPairs[p][1]);
      const Vec3 c = f.col(kPairs[s][0]), d = f.col(kPairs[s][1]);
      q(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(s)) =
          g(curvature_endomorphism(r, a, b) * d, c);
    }
  }
  return 0.5 * (q + q.transpose());
}

SectionalRange sectional_range(const CovTensor& r, const InnerProduct& g) {
  const Eigen::SelfAdjointEigenSolver<Mat3> es(curvature_operator(r, g));
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

CovTensor so_action(const Mat3& a, const CovTensor& t) {
  const int k = t.order();
  CovTensor out(k);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto idx = t.digits(f);
    double v = 0.0;
    // Covector slot: -T(w o A, ...) evaluated at w = e^l gives -sum_m A_{lm} T^m.
    {
      const std::size_t st = t.stride(0);
      const std::size_t base = f - static_cast<std::size_t>(idx[0]) * st;
      for (int m = 0; m < 3; ++m) v -= a(idx[0], m) * t[base + static_cast<std::size_t>(m) * st];
    }
    for (int j = 1; j <= k; ++j) {
      const std::size_t st = t.stride(j);
      const int i = idx[static_cast<std::size_t>(j)];
      const std::size_t base = f - static_cast<std::size_t>(i) * st;
      for (int m = 0; m < 3; ++m) v += t[base + static_cast<std::size_t>(m) * st] * a(m, i);
    }
    out[f] = v;
  }
  return out;
}

CovTensor covariant_derivative(const CovTensor& t, const ConnectionOperator& conn) {
  const int k = t.order();
  if (k + 1 > CovTensor::kMaxOrder) throw std::invalid_argument("tensor order too large");
  CovTensor out(k + 1);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto oi = out.digits(f);
    const Mat3& lx = conn.lambda[static_cast<std::size_t>(oi[1])];
    // Offset into t of (oi[0], oi[2], ..., oi[k+1]).
    std::size_t tf = static_cast<std::size_t>(oi[0]);
    for (int s = 2; s <= k + 1; ++s) tf = tf * 3 + static_cast<std::size_t>(oi[static_cast<std::size_t>(s)]);

    double v = 0.0;
    {
      const std::size_t st = t.stride(0);
      const std::size_t base = tf - static_cast<std::size_t>(oi[0]) * st;
      for (int m = 0; m < 3; ++m) v += lx(oi[0], m) * t[base + static_cast<std::size_t>(m) * st];
    }
    for (int j = 1; j <= k; ++j) {
      const std::size_t st = t.stride(j);
      const int i = oi[static_cast<std::size_t>(j + 1)];
      const std::size_t base = tf - static_cast<std::size_t>(i) * st;
      for (int m = 0; m < 3; ++m) v -= t[base + static_cast<std::size_t>(m) * st] * lx(m, i);
    }
    out[f] = v;
  }
  return out;
}

std::array<Mat3, 3> covariant_derivative_of_form(const Mat3& form,
                                                 const ConnectionOperator& conn) {
  std::array<Mat3, 3> out;
  for (std::size_t x = 0; x < 3; ++x) {
    const Mat3& lx = conn.lambda[x];
    out[x] = -(lx.transpose() * form + form * lx);
  }
  return out;
}

double metric_compatibility_defect(const ConnectionOperator& conn, const InnerProduct& g) {
  double worst = 0.0;
  for (const Mat3& m : covariant_derivative_of_form(g.coeffs(), conn)) {
    worst = std::max(worst, m.cwiseAbs().maxCoeff());
  }
  return worst;
}

double torsion_defect(const ConnectionOperator& conn, const LieAlgebra3& alg) {
  double worst = 0.0;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      const Vec3 ex = Vec3::Unit(x), ey = Vec3::Unit(y);
      const Vec3 t = conn(ex) * ey - conn(ey) * ex - alg.bracket(ex, ey);
      worst = std::max(worst, t.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double bianchi1_defect(const CovTensor& r) {
  if (r.order() != 3) throw std::invalid_argument("bianchi1 expects an order-3 tensor");
  double worst = 0.0;
  for (int l = 0; l < 3; ++l)
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
          worst = std::max(worst, std::abs(r(l, x, y, z) + r(l, y, z, x) + r(l, z, x, y)));
  return worst;
}

double bianchi2_defect(const CovTensor& dr) {
  if (dr.order() != 4) throw std::invalid_argument("bianchi2 expects an order-4 tensor");
  double worst = 0.0;
  for (int l = 0; l < 3; ++l)
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
          for (int w = 0; w < 3; ++w)
            worst = std::max(worst, std::abs(dr(l, x, y, z, w) + dr(l, y, z, x, w) +
                                             dr(l, z, x, y, w)));
  return worst;
}

CurvatureData compute_curvature(const LieAlgebra3& alg, const InnerProduct& g) {
  CurvatureData d;
  d.conn = levi_civita(alg, g);
  d.r = curvature(d.conn, alg);
  d.dr = covariant_derivative(d.r, d.conn);
  d.ddr = covariant_derivative(d.dr, d.conn);
  d.ricci = ricci(d.r, g);
  d.ricci = 0.5 * (d.ricci + d.ricci.transpose());
  d.scalar = scalar_curvature(d.ricci, g);
  d.sectional = sectional_range(d.r, g);
  return d;
}

}  // namespace lieiso
