#include "srh/core/stencils.hpp"

#include <cmath>
#include <stdexcept>

namespace srh {

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> x, int m) {
  const int n = static_cast<int>(x.size());
  if (n < m + 1) throw std::invalid_argument("fornberg_weights: too few nodes");
  // c[k][j]: running weights, updated node by node.
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

// 4th-order first-derivative weights on offsets {0..4} evaluated at offset r,
// divided by h afterwards.  Generated once via the Fornberg recursion.
const std::vector<std::vector<double>>& edge_weights() {
  static const std::vector<std::vector<double>> w = [] {
    std::vector<std::vector<double>> rows;
    const double nodes[5] = {0, 1, 2, 3, 4};
    for (int r = 0; r < 2; ++r) {
      rows.push_back(fornberg_weights(r, std::span<const double>(nodes, 5), 1)[1]);
    }
    return rows;
  }();
  return w;
}

}  // namespace

void derivative4(std::span<const double> f, double h, std::span<double> out) {
  const int n = static_cast<int>(f.size());
  if (n < 5) throw std::invalid_argument("derivative4: need at least 5 points");
  const auto& ew = edge_weights();
  const double ih = 1.0 / h;
  for (int r = 0; r < 2; ++r) {
    double acc_l = 0.0, acc_r = 0.0;
    for (int i = 0; i < 5; ++i) {
      acc_l += ew[r][i] * f[i];
      acc_r -= ew[r][i] * f[n - 1 - i];  // mirrored stencil flips the sign
    }
    out[r] = acc_l * ih;
    out[n - 1 - r] = acc_r * ih;
  }
  const double c1 = 8.0 / 12.0, c2 = 1.0 / 12.0;
  for (int j = 2; j < n - 2; ++j) {
    out[j] = (c1 * (f[j + 1] - f[j - 1]) - c2 * (f[j + 2] - f[j - 2])) * ih;
  }
}

void cumulative_integral4(std::span<const double> f, double h, std::span<double> out) {
  const int n = static_cast<int>(f.size());
  if (n < 4) throw std::invalid_argument("cumulative_integral4: need at least 4 points");
  out[0] = 0.0;
  // First interval: cubic through the first four samples.
  out[1] = out[0] + h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
  for (int j = 1; j + 2 < n; ++j) {
    out[j + 1] = out[j] + h * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]) / 24.0;
  }
  if (n >= 4) {
    const int j = n - 2;
    out[j + 1] = out[j] + h * (f[j - 2] - 5.0 * f[j - 1] + 19.0 * f[j] + 9.0 * f[j + 1]) / 24.0;
  }
}

double richardson_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) return 0.0;
  return std::log2(e_coarse / e_fine);
}

}  // namespace srh
