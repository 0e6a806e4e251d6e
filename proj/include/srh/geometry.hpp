#pragma once

#include <array>
#include <vector>

#include "srh/evolution.hpp"
#include "srh/jets.hpp"
#include "srh/profiles.hpp"

namespace srh::geometry {

using evolution::GridField;
using jets::StateZ;
using profiles::ProfileParams;

// Row-major scalar field over an (n_tau x n_lam) grid.
struct Field2 {
  int nt = 0, nl = 0;
  std::vector<double> v;

  Field2() = default;
  Field2(int nt_, int nl_) : nt(nt_), nl(nl_), v(static_cast<size_t>(nt_) * nl_, 0.0) {}
  double& at(int i, int j) { return v[static_cast<size_t>(i) * nl + j]; }
  double at(int i, int j) const { return v[static_cast<size_t>(i) * nl + j]; }
};

struct Rect {
  double x0 = 0, x1 = 0, u0 = 0, u1 = 0;
};

// Geometric coordinates and potential derived from a solved field, plus an
// optional resampled block on a regular (x, u) sub-rectangle.
struct ChartData {
  // Source grid layout.
  double tau0 = 0, dtau = 0;
  Grid1D lam;
  int nt = 0, nl = 0;

  // Copies of the solution fields (row-major over (tau, lambda)).
  Field2 q, s, b, g, pi;
  // Reconstructed coordinates and potential.
  Field2 x, u, phi;
  // Max cell-circulation residuals of the three closed one-forms.
  double loop_dx = 0, loop_du = 0, loop_dphi = 0;
  // Admissibility extrema copied from the solver diagnostics.
  double min_q = 0, min_pi = 0, min_abs_qlam = 0;

  // Resampled block (valid when rn > 0).
  int rn = 0;
  Rect rect;
  Field2 r_tau, r_lam, r_q, r_s, r_b, r_g, r_pi, r_phi;

  double hx() const { return (rect.x1 - rect.x0) / (rn - 1); }
  double hu() const { return (rect.u1 - rect.u0) / (rn - 1); }
};

// Path-integrates dx = (B dtau - S dlam)/Pi and du = (Q dlam - S dtau)/Pi
// over a spanning tree of grid edges (first column in tau, then rows in
// lambda), anchored to x = u = 0 at the lower-left corner.  Throws
// PositivityError if Pi <= 0 anywhere.
ChartData reconstruct_coords(const GridField& grid);

// Adds phi from dphi = tau dx + lambda du with the same integrator.
void reconstruct_potential(ChartData& chart);

// Builds a regular n x n (x, u) grid on the largest safe sub-rectangle of
// the chart image and pulls all fields back through Newton inversion of the
// coordinate map (bicubic interpolation, tolerance 1e-10).  Throws
// ResampleError when no usable rectangle exists or the inversion stalls.
void build_resample(ChartData& chart, int n);

struct GeometryReport {
  // Hermitian residuals of the verified curvature equation.
  double rh_max = 0;
  std::array<double, 3> rh_components{};
  double theta_mean = 0, theta_dev = 0;
  double kappa_mean = 0, kappa_dev = 0;
  double sigma_check_max = 0;   // |4 sigma - Y alpha - s|
  double mixed_partial_max = 0; // |dQ/du - dS/dx|
  double trace_identity_max = 0;  // residual of 2 r(v,.) + dY, both by differencing
  double min_q = 0, min_pi = 0, min_abs_qlam = 0;
  double hess_min = 0;           // min |alpha| * max component of the tau-Hessian
  double hess_zero_fraction = 0; // fraction below 1e-8 * field scale
  double loop_dx = 0, loop_du = 0, loop_dphi = 0;
  Rect rect;
  int resample_n = 0;
  bool finite_ok = true;
};

// Curvature verification by direct differencing of the resampled raw
// fields; never substitutes the marching equations.
GeometryReport verify_ricci_hessian(const ChartData& chart, const ProfileParams& prof);

struct Metric4 {
  std::array<double, 16> m{};  // coordinates ordered (x, x', u, u')
  double pi = 0;
  bool positive = false;  // leading principal minors all positive
};

Metric4 metric_at(const StateZ& z);

// Ricci tensor assembled from finite-differenced Christoffel symbols of the
// full 4x4 metric, on the resampled grid (index range [2, rn-3]).
std::vector<std::array<double, 16>> curvature_oracle_full(const ChartData& chart);

// Max mismatch between the oracle Ricci and the log-determinant shortcut.
double curvature_oracle_mismatch(const ChartData& chart);

}  // namespace srh::geometry
