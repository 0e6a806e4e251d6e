#pragma once

#include <cmath>
#include <vector>

namespace srh {

// Uniform 1-D grid of n points on [a, b].
struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  int n = 2;

  double h() const { return (b - a) / (n - 1); }
  double point(int i) const { return a + i * h(); }
  std::vector<double> points() const {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = point(i);
    return p;
  }
  bool operator==(const Grid1D&) const = default;
};

}  // namespace srh
