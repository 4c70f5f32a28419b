#include "lieiso/algebra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lieiso {

std::string FamilyTag::label() const {
  switch (kind_) {
    case Kind::I:
      return "I";
    case Kind::C: {
      std::ostringstream os;
      os.precision(12);
      os << "c=" << c_;
      return os.str();
    }
    case Kind::Custom:
      break;
  }
  return "custom";
}

namespace {

double jacobi_defect_of(const StructureConstants& s) {
  auto br = [&](const Vec3& x, const Vec3& y) {
    Vec3 out;
    for (int k = 0; k < 3; ++k) out(k) = x.dot(s[k] * y);
    return out;
  };
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const Vec3 ei = Vec3::Unit(i), ej = Vec3::Unit(j), ek = Vec3::Unit(k);
        const Vec3 cyc = br(br(ei, ej), ek) + br(br(ej, ek), ei) + br(br(ek, ei), ej);
        worst = std::max(worst, cyc.cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

}  // namespace

LieAlgebra3::LieAlgebra3(const StructureConstants& structure, FamilyTag family,
                         double jacobi_tol)
    : structure_(structure), family_(family) {
  for (int k = 0; k < 3; ++k) {
    if ((structure_[k] + structure_[k].transpose()).cwiseAbs().maxCoeff() > jacobi_tol) {
      throw std::invalid_argument("structure constants are not antisymmetric");
    }
  }
  if (jacobi_defect_of(structure_) > jacobi_tol) {
    throw std::invalid_argument("structure constants violate the Jacobi identity");
  }
}

Vec3 LieAlgebra3::bracket(const Vec3& x, const Vec3& y) const {
  Vec3 out;
  for (int k = 0; k < 3; ++k) out(k) = x.dot(structure_[k] * y);
  return out;
}

Mat3 LieAlgebra3::ad(const Vec3& x) const {
  Mat3 out;
  for (int k = 0; k < 3; ++k) out.row(k) = x.transpose() * structure_[k];
  return out;
}

double LieAlgebra3::jacobi_defect() const { return jacobi_defect_of(structure_); }

Mat2 LieAlgebra3::ad_block() const {
  Mat2 a;
  a << structure_[0](2, 0), structure_[1](2, 0),
       structure_[0](2, 1), structure_[1](2, 1);
  return a;
}

namespace {

void set_bracket(StructureConstants& s, int i, int j, const Vec3& value) {
  for (int k = 0; k < 3; ++k) {
    s[k](i, j) = value(k);
    s[k](j, i) = -value(k);
  }
}

StructureConstants from_block(const Mat2& a) {
  StructureConstants s{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
  set_bracket(s, 2, 0, Vec3(a(0, 0), a(0, 1), 0.0));
  set_bracket(s, 2, 1, Vec3(a(1, 0), a(1, 1), 0.0));
  return s;
}

}  // namespace

LieAlgebra3 make_algebra_I() {
  return LieAlgebra3(from_block(Mat2::Identity()), FamilyTag::identity());
}

LieAlgebra3 make_algebra_c(double c) {
  Mat2 a;
  a << 0.0, 1.0, -c, 2.0;
  return LieAlgebra3(from_block(a), FamilyTag::c(c));
}

LieAlgebra3 make_algebra(const FamilyTag& family) {
  switch (family.kind()) {
    case FamilyTag::Kind::I: return make_algebra_I();
    case FamilyTag::Kind::C: return make_algebra_c(family.c());
    case FamilyTag::Kind::Custom: break;
  }
  throw std::invalid_argument("custom algebras have no catalog constructor");
}

Vec3 bracket(const LieAlgebra3& alg, const Vec3& x, const Vec3& y) {
  return alg.bracket(x, y);
}

bool is_unimodular(const LieAlgebra3& alg, double tol) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(alg.ad(Vec3::Unit(i)).trace()) > tol) return false;
  }
  return true;
}

}  // namespace lieiso
