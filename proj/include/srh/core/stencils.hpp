#pragma once

#include <span>
#include <vector>

namespace srh {

// Weights reproducing derivatives 0..m at x0 from samples at the given nodes
// (Fornberg recursion).  w[k][i] multiplies f(x[i]) in the k-th derivative.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> x, int m);

// First derivative of a uniformly sampled field.  Fourth-order: five-point
// central stencil in the interior, shifted five-point stencils at the edges.
void derivative4(std::span<const double> f, double h, std::span<double> out);

// Cumulative integral of a uniformly sampled field, out[0] = 0.  Each
// interval uses the integral of the local cubic interpolant (fourth order).
void cumulative_integral4(std::span<const double> f, double h, std::span<double> out);

// log2(e_coarse/e_fine) for a halved step; NaN-safe (returns 0 on degenerate input).
double richardson_order(double e_coarse, double e_fine);

}  // namespace srh
