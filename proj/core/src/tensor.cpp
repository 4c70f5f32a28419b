#include "lieiso/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lieiso {

namespace {

std::size_t pow3(int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

}  // namespace

CovTensor::CovTensor(int order) : order_(order) {
  if (order < 0 || order > kMaxOrder) {
    throw std::invalid_argument("CovTensor order must lie in [0, 6]");
  }
  comps_.assign(pow3(order + 1), 0.0);
}

double CovTensor::max_abs() const {
  double m = 0.0;
  for (double v : comps_) m = std::max(m, std::abs(v));
  return m;
}

std::size_t CovTensor::stride(int slot) const { return pow3(order_ - slot); }

std::array<int, CovTensor::kMaxOrder + 1> CovTensor::digits(std::size_t flat) const {
  std::array<int, kMaxOrder + 1> d{};
  for (int s = order_; s >= 0; --s) {
    d[static_cast<std::size_t>(s)] = static_cast<int>(flat % 3);
    flat /= 3;
  }
  return d;
}

std::size_t CovTensor::offset(std::initializer_list<int> idx) const {
  if (static_cast<int>(idx.size()) != order_ + 1) {
    throw std::out_of_range("CovTensor index count does not match order");
  }
  std::size_t off = 0;
  for (int i : idx) off = off * 3 + static_cast<std::size_t>(i);
  return off;
}

CovTensor& CovTensor::operator+=(const CovTensor& other) {
  if (other.order_ != order_) throw std::invalid_argument("CovTensor order mismatch");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += other.comps_[i];
  return *this;
}

CovTensor& CovTensor::operator-=(const CovTensor& other) {
  if (other.order_ != order_) throw std::invalid_argument("CovTensor order mismatch");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= other.comps_[i];
  return *this;
}

CovTensor& CovTensor::operator*=(double s) {
  for (double& v : comps_) v *= s;
  return *this;
}

CovTensor operator+(CovTensor a, const CovTensor& b) { return a += b; }
CovTensor operator-(CovTensor a, const CovTensor& b) { return a -= b; }
CovTensor operator*(double s, CovTensor a) { return a *= s; }

double max_abs_diff(const CovTensor& a, const CovTensor& b) {
  return (a - b).max_abs();
}

}  // namespace lieiso
