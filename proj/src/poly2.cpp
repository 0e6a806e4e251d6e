#include "srh/core/poly2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srh {

double Poly2::eval(double dt, double dl) const {
  // Horner in dt; inner coefficients are polynomials in dl.
  double acc = 0.0;
  for (int i = n_; i >= 0; --i) {
    double row = 0.0;
    for (int j = n_ - i; j >= 0; --j) row = row * dl + at(i, j);
    acc = acc * dt + row;
  }
  return acc;
}

Poly2 Poly2::dtau() const {
  Poly2 r(n_);
  for (int i = 1; i <= n_; ++i)
    for (int j = 0; i + j <= n_; ++j) r.at(i - 1, j) = i * at(i, j);
  return r;
}

Poly2 Poly2::dlam() const {
  Poly2 r(n_);
  for (int i = 0; i <= n_; ++i)
    for (int j = 1; i + j <= n_; ++j) r.at(i, j - 1) = j * at(i, j);
  return r;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("Poly2: degree mismatch");
  Poly2 r(a.degree());
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; i + j <= a.degree(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

Poly2 operator-(const Poly2& a, const Poly2& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("Poly2: degree mismatch");
  Poly2 r(a.degree());
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; i + j <= a.degree(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("Poly2: degree mismatch");
  const int n = a.degree();
  Poly2 r(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      const double aij = a.at(i, j);
      if (aij == 0.0) continue;
      for (int k = 0; i + j + k <= n; ++k)
        for (int l = 0; i + j + k + l <= n; ++l) r.at(i + k, j + l) += aij * b.at(k, l);
    }
  return r;
}

Poly2 operator*(double s, const Poly2& a) {
  Poly2 r(a.degree());
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; i + j <= a.degree(); ++j) r.at(i, j) = s * a.at(i, j);
  return r;
}

double Poly2::max_abs_coeff(int d) const {
  if (d < 0 || d > n_) d = n_;
  double m = 0.0;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) m = std::max(m, std::abs(at(i, j)));
  return m;
}

}  // namespace srh
