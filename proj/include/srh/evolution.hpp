#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "srh/core/grid.hpp"
#include "srh/expr.hpp"
#include "srh/jets.hpp"
#include "srh/profiles.hpp"

namespace srh::evolution {

using jets::StateZ;
using profiles::ProfileParams;

// One constant-tau line of the solution.  Fields are stored per component
// for stencil work; state_at assembles the pointwise view.
struct Slice {
  double tau = 0.0;
  Grid1D lam;
  std::vector<double> q, s, b, g;

  StateZ state_at(int j) const { return {q[j], s[j], b[j], g[j]}; }
  int size() const { return lam.n; }
};

struct SliceDiagnostics {
  double min_q = 0.0;
  double min_pi = 0.0;
  double min_abs_qlam = 0.0;
  double c1 = 0.0;  // max-norm of the lambda-direction compatibility residual
  double c2 = 0.0;  // max-norm of the G_lambda residual
};

struct GridField {
  ProfileParams profile;
  Grid1D lam;
  std::vector<Slice> slices;
  std::vector<SliceDiagnostics> diagnostics;
  bool truncated = false;
  std::string truncation_reason;

  std::vector<double> tau_grid() const {
    std::vector<double> t(slices.size());
    for (size_t i = 0; i < slices.size(); ++i) t[i] = slices[i].tau;
    return t;
  }
  double dtau() const {
    return slices.size() > 1 ? slices[1].tau - slices[0].tau : 0.0;
  }
};

// Stabilizing low-pass for the marching direction.  The march amplifies
// mesh-scale perturbations at a rate proportional to their wavenumber
// (there are no real characteristics), so each accepted step projects the
// fields onto a fixed space of smooth profiles.
//
// poly_projection: exact l2-orthogonal projection onto polynomials of the
// given degree (grid-independent smoothness scale; idempotent and
// non-expansive, so repeated application injects nothing).
// trend_fourier: endpoint-matched degree-9 trend plus a tapered Fourier
// cutoff on the periodized remainder (kept for comparison runs).
struct FilterOptions {
  enum class Kind { poly_projection, trend_fourier };
  bool enabled = true;
  Kind kind = Kind::poly_projection;
  int poly_degree = 20;
  double cutoff = 40.0;  // physical wavenumber (trend_fourier)
  double taper = 14.0;
};

struct EvolveOptions {
  double dt_ratio = 0.4;  // tau step as a fraction of the lambda spacing
  FilterOptions filter;
  bool record_all_slices = true;
};

// Initial data on the line tau = tau0: Q and S are prescribed by the seed
// functions, B and G are integrated along lambda from (b0, g0) so that the
// two lambda-direction compatibility conditions hold.  Throws
// PositivityError when Q <= 0, Pi <= 0, or the lambda-derivative of Q
// vanishes on the grid; DomainError if tau0 is out of range.
Slice generate_initial_data(const ProfileParams& prof, double tau0, const Grid1D& lam_grid,
                            const SeedFn& q_fn, const SeedFn& s_fn, double b0, double g0);

// March the initial slice to tau1 in n_steps equal steps (classical
// four-stage one-step integrator; fourth-order lambda stencils).  On
// positivity failure or non-finite values the march stops and the partial
// field is returned with `truncated` set.
GridField evolve(const ProfileParams& prof, const Slice& initial, double tau1, int n_steps,
                 const EvolveOptions& opts = {});

// Max-norm over interior points (4 columns trimmed per edge) of the two
// non-evolved residuals (C1, C2).
std::array<double, 2> constraint_norms(const Slice& slice, const profiles::ProfileEval& pe);

SliceDiagnostics slice_diagnostics(const Slice& slice, const profiles::ProfileEval& pe);

// Max-norm of the full six-equation residual with the jet reconstructed by
// finite differences in both directions (interior points only).
double jet_consistency_residual(const GridField& field);

struct ConvergenceRow {
  int n_lam = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  double solution_diff = 0.0;  // vs next-finer level on shared points
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  std::vector<double> c1_orders;
  std::vector<double> c2_orders;
  std::vector<double> solution_orders;
  bool reliable = true;
  std::string note;
};

struct StudyConfig {
  ProfileParams profile;
  double tau0 = 0.0, tau1 = 0.5;
  double lam0 = 0.0, lam1 = 2.0;
  SeedFn q_fn, s_fn;
  double b0 = 1.0, g0 = 0.0;
  std::vector<int> levels = {65, 129, 257};
  EvolveOptions evolve;
};

// Repeats the run over the resolution levels (tau step scaled with the
// lambda spacing) and reports Richardson orders of the final-slice
// constraint norms and of solution differences on shared points.
ConvergenceStudy convergence_study(const StudyConfig& config);

}  // namespace srh::evolution
