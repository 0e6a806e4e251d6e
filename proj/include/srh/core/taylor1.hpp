#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace srh {

// Truncated univariate Taylor arithmetic: c[k] is the coefficient of h^k.
// All binary operations truncate to the shorter operand's order.
class Taylor1 {
 public:
  Taylor1() = default;
  explicit Taylor1(int order) : c_(order + 1, 0.0) {}
  Taylor1(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  static Taylor1 constant(double value, int order) {
    Taylor1 t(order);
    t.c_[0] = value;
    return t;
  }
  // center + h
  static Taylor1 variable(double center, int order) {
    Taylor1 t(order);
    t.c_[0] = center;
    if (order >= 1) t.c_[1] = 1.0;
    return t;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  const std::vector<double>& coeffs() const { return c_; }

  double eval(double h) const {
    double acc = 0.0;
    for (int k = order(); k >= 0; --k) acc = acc * h + c_[k];
    return acc;
  }

  Taylor1 derivative() const {
    if (c_.size() <= 1) return Taylor1(0);
    Taylor1 d(order() - 1);
    for (int k = 1; k <= order(); ++k) d.c_[k - 1] = k * c_[k];
    return d;
  }

  friend Taylor1 operator+(const Taylor1& a, const Taylor1& b);
  friend Taylor1 operator-(const Taylor1& a, const Taylor1& b);
  friend Taylor1 operator*(const Taylor1& a, const Taylor1& b);
  friend Taylor1 operator/(const Taylor1& a, const Taylor1& b);
  friend Taylor1 operator*(double s, const Taylor1& a);
  friend Taylor1 operator+(double s, const Taylor1& a);
  friend Taylor1 operator-(const Taylor1& a);

 private:
  std::vector<double> c_;
};

Taylor1 sin(const Taylor1& a);
Taylor1 cos(const Taylor1& a);
Taylor1 exp(const Taylor1& a);

}  // namespace srh
