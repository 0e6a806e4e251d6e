#pragma once

#include <vector>

namespace srh {

// Bivariate polynomial truncated to total degree <= N: coefficient of
// (dt)^i (dl)^j sits at (i, j), i + j <= N.  Entries beyond the triangle
// stay zero.
class Poly2 {
 public:
  Poly2() : n_(0), c_(1, 0.0) {}
  explicit Poly2(int total_degree) : n_(total_degree), c_((n_ + 1) * (n_ + 1), 0.0) {}

  int degree() const { return n_; }
  double at(int i, int j) const { return c_[i * (n_ + 1) + j]; }
  double& at(int i, int j) { return c_[i * (n_ + 1) + j]; }

  double eval(double dt, double dl) const;

  // Partial derivatives keep the same truncation degree (top row becomes zero).
  Poly2 dtau() const;
  Poly2 dlam() const;

  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator-(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(double s, const Poly2& a);

  // Largest |coefficient| over total degrees <= d (d < 0 means all).
  double max_abs_coeff(int d = -1) const;

 private:
  int n_;
  std::vector<double> c_;
};

}  // namespace srh
