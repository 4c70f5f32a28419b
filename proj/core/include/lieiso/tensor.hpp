#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace lieiso {

/// Dense type-(1,k) tensor on a 3-dimensional space, k = order().
/// Components are T^l_{i_1 ... i_k}; the upper index is slot 0 and the
/// flat offset is row-major over (l, i_1, ..., i_k).
class CovTensor {
 public:
  static constexpr int kMaxOrder = 6;

  explicit CovTensor(int order);

  int order() const { return order_; }
  std::size_t size() const { return comps_.size(); }

  double& operator[](std::size_t flat) { return comps_[flat]; }
  double operator[](std::size_t flat) const { return comps_[flat]; }

  template <typename... Lower>
  double& operator()(int upper, Lower... lower) {
    return comps_[offset({upper, static_cast<int>(lower)...})];
  }
  template <typename... Lower>
  double operator()(int upper, Lower... lower) const {
    return comps_[offset({upper, static_cast<int>(lower)...})];
  }

  std::span<const double> data() const { return comps_; }
  double max_abs() const;

  /// Stride of slot s (0 = upper index) in the flat layout.
  std::size_t stride(int slot) const;
  /// Base-3 digits of a flat offset, slot 0 first.
  std::array<int, kMaxOrder + 1> digits(std::size_t flat) const;

  CovTensor& operator+=(const CovTensor& other);
  CovTensor& operator-=(const CovTensor& other);
  CovTensor& operator*=(double s);

 private:
  std::size_t offset(std::initializer_list<int> idx) const;

  int order_;
  std::vector<double> comps_;
};

CovTensor operator+(CovTensor a, const CovTensor& b);
CovTensor operator-(CovTensor a, const CovTensor& b);
CovTensor operator*(double s, CovTensor a);

/// Largest absolute component difference; throws on order mismatch.
double max_abs_diff(const CovTensor& a, const CovTensor& b);

}  // namespace lieiso
