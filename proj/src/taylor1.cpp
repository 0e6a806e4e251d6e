#include "srh/core/taylor1.hpp"

#include <algorithm>
#include <stdexcept>

namespace srh {

namespace {
int common_order(const Taylor1& a, const Taylor1& b) {
  return std::min(a.order(), b.order());
}
}  // namespace

Taylor1 operator+(const Taylor1& a, const Taylor1& b) {
  Taylor1 r(common_order(a, b));
  for (int k = 0; k <= r.order(); ++k) r[k] = a[k] + b[k];
  return r;
}

Taylor1 operator-(const Taylor1& a, const Taylor1& b) {
  Taylor1 r(common_order(a, b));
  for (int k = 0; k <= r.order(); ++k) r[k] = a[k] - b[k];
  return r;
}

Taylor1 operator-(const Taylor1& a) {
  Taylor1 r(a.order());
  for (int k = 0; k <= r.order(); ++k) r[k] = -a[k];
  return r;
}

Taylor1 operator*(const Taylor1& a, const Taylor1& b) {
  const int n = common_order(a, b);
  Taylor1 r(n);
  for (int i = 0; i <= n; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (int j = 0; j + i <= n; ++j) r[i + j] += ai * b[j];
  }
  return r;
}

Taylor1 operator*(double s, const Taylor1& a) {
  Taylor1 r(a.order());
  for (int k = 0; k <= r.order(); ++k) r[k] = s * a[k];
  return r;
}

Taylor1 operator+(double s, const Taylor1& a) {
  Taylor1 r = a;
  r[0] += s;
  return r;
}

Taylor1 operator/(const Taylor1& a, const Taylor1& b) {
  const int n = common_order(a, b);
  if (b[0] == 0.0) throw std::domain_error("Taylor1: division by series with zero constant term");
  Taylor1 r(n);
  for (int k = 0; k <= n; ++k) {
    double acc = a[k];
    for (int j = 0; j < k; ++j) acc -= r[j] * b[k - j];
    r[k] = acc / b[0];
  }
  return r;
}

namespace {

// f(a0 + g) where g has zero constant term, via the Maclaurin coefficients
// of f shifted to a0.  Horner on the nilpotent-to-truncation series g.
Taylor1 compose_maclaurin(const Taylor1& a, std::span<const double> coeff) {
  const int n = a.order();
  Taylor1 g = a;
  g[0] = 0.0;
  Taylor1 acc = Taylor1::constant(coeff[n], n);
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * g;
    acc[0] += coeff[k];
  }
  return acc;
}

}  // namespace

Taylor1 sin(const Taylor1& a) {
  const int n = a.order();
  const double s0 = std::sin(a[0]), c0 = std::cos(a[0]);
  // Coefficients of sin(a0 + t) in t.
  std::vector<double> coeff(n + 1);
  double fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    const double d = (k % 4 == 0) ? s0 : (k % 4 == 1) ? c0 : (k % 4 == 2) ? -s0 : -c0;
    coeff[k] = d / fact;
  }
  return compose_maclaurin(a, coeff);
}

Taylor1 cos(const Taylor1& a) {
  const int n = a.order();
  const double s0 = std::sin(a[0]), c0 = std::cos(a[0]);
  std::vector<double> coeff(n + 1);
  double fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    const double d = (k % 4 == 0) ? c0 : (k % 4 == 1) ? -s0 : (k % 4 == 2) ? -c0 : s0;
    coeff[k] = d / fact;
  }
  return compose_maclaurin(a, coeff);
}

Taylor1 exp(const Taylor1& a) {
  const int n = a.order();
  const double e0 = std::exp(a[0]);
  std::vector<double> coeff(n + 1);
  double fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    coeff[k] = e0 / fact;
  }
  return compose_maclaurin(a, coeff);
}

}  // namespace srh
