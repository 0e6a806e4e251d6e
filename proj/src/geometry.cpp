#include "srh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srh/core/errors.hpp"
#include "srh/core/parallel.hpp"
#include "srh/core/stencils.hpp"

namespace srh::geometry {

namespace {

// Smooth chart evaluator: each tau-slice of each field is represented by a
// Chebyshev fit in lambda (an exact representation for the projected
// marching fields, which are polynomials), combined with 8-point Lagrange
// interpolation across slices.  Piecewise-low-order interpolation is
// deliberately avoided: its stencil-shift kinks do not survive the second
// differences taken by the verifier.
class ChartEvaluator {
 public:
  enum FieldId { kQ = 0, kS, kB, kG, kX, kU, kPhi, kCount };

  ChartEvaluator(const ChartData& chart, int fit_degree)
      : nt_(chart.nt),
        tau0_(chart.tau0),
        dtau_(chart.dtau),
        lam_(chart.lam),
        m_(std::min(fit_degree, chart.nl - 1) + 1) {
    build_basis(chart.nl);
    const Field2* fields[kCount] = {&chart.q, &chart.s, &chart.b, &chart.g,
                                    &chart.x, &chart.u, &chart.phi};
    for (int f = 0; f < kCount; ++f) {
      cheb_[f].assign(static_cast<size_t>(nt_) * m_, 0.0);
      for (int i = 0; i < nt_; ++i) fit_slice(*fields[f], i, cheb_[f].data() + i * m_);
    }
  }

  double operator()(FieldId f, double tau, double lam) const {
    const double x = scaled(lam);
    // slice window for the tau-Lagrange
    const int width = std::min(8, nt_);
    double pos = (tau - tau0_) / dtau_;
    int i0 = static_cast<int>(std::floor(pos)) - width / 2 + 1;
    i0 = std::clamp(i0, 0, nt_ - width);
    double acc = 0.0;
    for (int a = 0; a < width; ++a) {
      double w = 1.0;
      for (int b = 0; b < width; ++b) {
        if (b != a) w *= (pos - (i0 + b)) / (a - b);
      }
      acc += w * clenshaw(cheb_[f].data() + (i0 + a) * m_, x);
    }
    return acc;
  }

 private:
  double scaled(double lam) const {
    return std::clamp((2.0 * lam - lam_.a - lam_.b) / (lam_.b - lam_.a), -1.0, 1.0);
  }

  double clenshaw(const double* c, double x) const {
    double b1 = 0.0, b2 = 0.0;
    for (int k = m_ - 1; k >= 1; --k) {
      const double b0 = c[k] + 2.0 * x * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return c[0] + x * b1 - b2;
  }

  // Discrete-orthonormal polynomial basis carried in Chebyshev coefficients,
  // so that sample-space projections can be evaluated anywhere stably.
  void build_basis(int n) {
    n_ = n;
    samples_.assign(static_cast<size_t>(m_) * n, 0.0);
    chebrep_.assign(static_cast<size_t>(m_) * m_, 0.0);
    std::vector<double> xg(n);
    for (int j = 0; j < n; ++j) xg[j] = scaled(lam_.point(j));
    std::vector<double> col(n), rep(m_);
    for (int d = 0; d < m_; ++d) {
      for (int j = 0; j < n; ++j) col[j] = std::cos(d * std::acos(xg[j]));
      std::fill(rep.begin(), rep.end(), 0.0);
      rep[d] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (int e = 0; e < d; ++e) {
          double dot = 0.0;
          for (int j = 0; j < n; ++j) dot += col[j] * samples_[static_cast<size_t>(e) * n + j];
          for (int j = 0; j < n; ++j) col[j] -= dot * samples_[static_cast<size_t>(e) * n + j];
          for (int k = 0; k < m_; ++k) rep[k] -= dot * chebrep_[static_cast<size_t>(e) * m_ + k];
        }
      }
      double nrm = 0.0;
      for (double v : col) nrm += v * v;
      nrm = std::sqrt(nrm);
      for (int j = 0; j < n; ++j) samples_[static_cast<size_t>(d) * n + j] = col[j] / nrm;
      for (int k = 0; k < m_; ++k) chebrep_[static_cast<size_t>(d) * m_ + k] = rep[k] / nrm;
    }
  }

  void fit_slice(const Field2& f, int i, double* out) const {
    for (int k = 0; k < m_; ++k) out[k] = 0.0;
    for (int d = 0; d < m_; ++d) {
      double dot = 0.0;
      for (int j = 0; j < n_; ++j) dot += samples_[static_cast<size_t>(d) * n_ + j] * f.at(i, j);
      for (int k = 0; k < m_; ++k) out[k] += dot * chebrep_[static_cast<size_t>(d) * m_ + k];
    }
  }

  int nt_;
  double tau0_, dtau_;
  Grid1D lam_;
  int m_ = 0;
  int n_ = 0;
  std::vector<double> samples_, chebrep_;
  std::array<std::vector<double>, kCount> cheb_;
};

// Cell circulation of the one-form ft dtau + fl dlam (trapezoid per edge).
double max_cell_circulation(const Field2& ft, const Field2& fl, double dt, double h) {
  double worst = 0.0;
  for (int i = 0; i + 1 < ft.nt; ++i) {
    for (int j = 0; j + 1 < ft.nl; ++j) {
      const double bottom = 0.5 * h * (fl.at(i, j) + fl.at(i, j + 1));
      const double right = 0.5 * dt * (ft.at(i, j + 1) + ft.at(i + 1, j + 1));
      const double top = 0.5 * h * (fl.at(i + 1, j + 1) + fl.at(i + 1, j));
      const double left = 0.5 * dt * (ft.at(i + 1, j) + ft.at(i, j));
      worst = std::max(worst, std::abs(bottom + right - top - left));
    }
  }
  return worst;
}

// Integrate the one-form over the spanning tree: first column in tau, then
// each row in lambda.
Field2 integrate_form(const Field2& ft, const Field2& fl, double dt, double h) {
  const int nt = ft.nt, nl = ft.nl;
  Field2 out(nt, nl);
  std::vector<double> col(nt), acc_col(nt), row(nl), acc_row(nl);
  for (int i = 0; i < nt; ++i) col[i] = ft.at(i, 0);
  cumulative_integral4(col, dt, acc_col);
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < nl; ++j) row[j] = fl.at(i, j);
    cumulative_integral4(row, h, acc_row);
    for (int j = 0; j < nl; ++j) out.at(i, j) = acc_col[i] + acc_row[j];
  }
  return out;
}

void central_xy(const Field2& f, double hx, double hu, Field2& fx, Field2& fu) {
  fx = Field2(f.nt, f.nl);
  fu = Field2(f.nt, f.nl);
  for (int i = 1; i + 1 < f.nt; ++i) {
    for (int j = 1; j + 1 < f.nl; ++j) {
      fx.at(i, j) = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * hx);
      fu.at(i, j) = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * hu);
    }
  }
}

}  // namespace

ChartData reconstruct_coords(const GridField& grid) {
  const int nt = static_cast<int>(grid.slices.size());
  const int nl = grid.lam.n;
  if (nt < 5) throw ConfigError("chart reconstruction needs at least 5 slices");

  ChartData chart;
  chart.tau0 = grid.slices.front().tau;
  chart.dtau = grid.dtau();
  chart.lam = grid.lam;
  chart.nt = nt;
  chart.nl = nl;
  chart.q = Field2(nt, nl);
  chart.s = Field2(nt, nl);
  chart.b = Field2(nt, nl);
  chart.g = Field2(nt, nl);
  chart.pi = Field2(nt, nl);

  chart.min_q = std::numeric_limits<double>::infinity();
  chart.min_pi = chart.min_q;
  chart.min_abs_qlam = chart.min_q;
  for (const auto& d : grid.diagnostics) {
    chart.min_q = std::min(chart.min_q, d.min_q);
    chart.min_pi = std::min(chart.min_pi, d.min_pi);
    chart.min_abs_qlam = std::min(chart.min_abs_qlam, d.min_abs_qlam);
  }

  for (int i = 0; i < nt; ++i) {
    const auto& sl = grid.slices[i];
    for (int j = 0; j < nl; ++j) {
      const StateZ z = sl.state_at(j);
      if (!(z.pi() > 0.0)) {
        throw PositivityError("Pi <= 0 in chart reconstruction");
      }
      chart.q.at(i, j) = z.q;
      chart.s.at(i, j) = z.s;
      chart.b.at(i, j) = z.b;
      chart.g.at(i, j) = z.g;
      chart.pi.at(i, j) = z.pi();
    }
  }

  Field2 ft(nt, nl), fl(nt, nl);
  // dx = (B dtau - S dlam)/Pi
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nl; ++j) {
      ft.at(i, j) = chart.b.at(i, j) / chart.pi.at(i, j);
      fl.at(i, j) = -chart.s.at(i, j) / chart.pi.at(i, j);
    }
  chart.x = integrate_form(ft, fl, chart.dtau, chart.lam.h());
  chart.loop_dx = max_cell_circulation(ft, fl, chart.dtau, chart.lam.h());
  // du = (Q dlam - S dtau)/Pi
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nl; ++j) {
      ft.at(i, j) = -chart.s.at(i, j) / chart.pi.at(i, j);
      fl.at(i, j) = chart.q.at(i, j) / chart.pi.at(i, j);
    }
  chart.u = integrate_form(ft, fl, chart.dtau, chart.lam.h());
  chart.loop_du = max_cell_circulation(ft, fl, chart.dtau, chart.lam.h());
  return chart;
}

void reconstruct_potential(ChartData& chart) {
  const int nt = chart.nt, nl = chart.nl;
  Field2 ft(nt, nl), fl(nt, nl);
  for (int i = 0; i < nt; ++i) {
    const double tau = chart.tau0 + i * chart.dtau;
    for (int j = 0; j < nl; ++j) {
      const double lam = chart.lam.point(j);
      const double pi = chart.pi.at(i, j);
      // dphi = tau dx + lambda du in (tau, lambda) components.
      ft.at(i, j) = (tau * chart.b.at(i, j) - lam * chart.s.at(i, j)) / pi;
      fl.at(i, j) = (lam * chart.q.at(i, j) - tau * chart.s.at(i, j)) / pi;
    }
  }
  chart.phi = integrate_form(ft, fl, chart.dtau, chart.lam.h());
  chart.loop_dphi = max_cell_circulation(ft, fl, chart.dtau, chart.lam.h());
}

namespace {

// Newton inversion of the coordinate map from a given parameter seed.
// The requested accuracy (1e-13) is deliberately tighter than the 1e-10
// contract: inversion jitter must stay below the second differences taken
// later.  Returns false when the target lies outside the chart (iteration
// stalls on the parameter boundary).
bool invert_point(const ChartData& chart, const ChartEvaluator& ev, double xt, double ut,
                  double& tau, double& lam, double boundary_margin = 0.0) {
  const int nt = chart.nt;
  const double tau_hi = chart.tau0 + (nt - 1) * chart.dtau;
  const double tol = 1e-13 * (1.0 + std::abs(xt) + std::abs(ut));
  for (int it = 0; it < 80; ++it) {
    const double rx = ev(ChartEvaluator::kX, tau, lam) - xt;
    const double ru = ev(ChartEvaluator::kU, tau, lam) - ut;
    if (std::abs(rx) < tol && std::abs(ru) < tol) {
      const double mt = boundary_margin * (tau_hi - chart.tau0);
      const double ml = boundary_margin * (chart.lam.b - chart.lam.a);
      return tau >= chart.tau0 + mt && tau <= tau_hi - mt && lam >= chart.lam.a + ml &&
             lam <= chart.lam.b - ml;
    }
    const double qv = ev(ChartEvaluator::kQ, tau, lam);
    const double sv = ev(ChartEvaluator::kS, tau, lam);
    const double bv = ev(ChartEvaluator::kB, tau, lam);
    const double piv = qv * bv - sv * sv;
    if (!(piv > 0.0) || !(qv > 0.0)) return false;
    const double j11 = bv / piv, j12 = -sv / piv;
    const double j21 = -sv / piv, j22 = qv / piv;
    const double det = j11 * j22 - j12 * j21;
    tau += (-rx * j22 + ru * j12) / det;
    lam += (-ru * j11 + rx * j21) / det;
    tau = std::clamp(tau, chart.tau0, tau_hi);
    lam = std::clamp(lam, chart.lam.a, chart.lam.b);
  }
  return false;
}

}  // namespace

void build_resample(ChartData& chart, int n) {
  if (n < 9) throw ResampleError("resample grid too small");
  if (chart.phi.v.empty()) reconstruct_potential(chart);
  const int nt = chart.nt, nl = chart.nl;
  const ChartEvaluator ev(chart, 24);

  // Largest centered axis-aligned rectangle inside the (generally sheared)
  // chart image: expand a box about the image of the parameter center until
  // its boundary leaves the chart, bisecting on the scale and sweeping the
  // box aspect.
  const int ic = nt / 2, jc = nl / 2;
  const double xc = chart.x.at(ic, jc), uc = chart.u.at(ic, jc);
  const double ax0 = 0.5 * (chart.x.at(nt - 1, jc) - chart.x.at(0, jc));
  const double au0 = 0.5 * (chart.u.at(ic, nl - 1) - chart.u.at(ic, 0));
  if (!(ax0 > 0.0) || !(au0 > 0.0)) {
    throw ResampleError("chart image too distorted to hold a regular rectangle");
  }

  auto feasible = [&](double ax, double au) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a == 1 && b == 1) continue;
        const double xt = xc + (a - 1) * ax, ut = uc + (b - 1) * au;
        double tau = chart.tau0 + ic * chart.dtau, lam = chart.lam.point(jc);
        if (!invert_point(chart, ev, xt, ut, tau, lam, 0.005)) return false;
      }
    }
    return true;
  };

  double best_s = 0.0, best_gamma = 1.0;
  for (double gamma : {0.35, 0.5, 0.7, 1.0, 1.4, 2.0}) {
    double lo = 0.0, hi = 1.3;
    if (!feasible(0.02 * gamma * ax0, 0.02 * au0 / gamma)) continue;
    lo = 0.02;
    for (int it = 0; it < 30; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid * gamma * ax0, mid * au0 / gamma)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    if (lo > best_s) {
      best_s = lo;
      best_gamma = gamma;
    }
  }
  if (best_s == 0.0) {
    throw ResampleError("chart image too distorted to hold a regular rectangle");
  }
  const double ax = 0.985 * best_s * best_gamma * ax0;
  const double au = 0.985 * best_s * au0 / best_gamma;
  chart.rn = n;
  chart.rect = {xc - ax, xc + ax, uc - au, uc + au};
  for (Field2* f : {&chart.r_tau, &chart.r_lam, &chart.r_q, &chart.r_s, &chart.r_b, &chart.r_g,
                    &chart.r_pi, &chart.r_phi}) {
    *f = Field2(n, n);
  }

  const double hx = chart.hx(), hu = chart.hu();
  // Rows march in x; each row is seeded from the previous row's first solve
  // and then marches in u with warm starts.
  double seed_tau = chart.tau0 + ic * chart.dtau, seed_lam = chart.lam.point(jc);
  for (int a = 0; a < n; ++a) {
    const double xt = chart.rect.x0 + a * hx;
    double tau = seed_tau, lam = seed_lam;
    for (int bcol = 0; bcol < n; ++bcol) {
      const double ut = chart.rect.u0 + bcol * hu;
      if (!invert_point(chart, ev, xt, ut, tau, lam)) {
        throw ResampleError("chart inversion failed to converge");
      }
      if (bcol == 0) {
        seed_tau = tau;
        seed_lam = lam;
      }
      chart.r_tau.at(a, bcol) = tau;
      chart.r_lam.at(a, bcol) = lam;
      const double qv = ev(ChartEvaluator::kQ, tau, lam);
      const double sv = ev(ChartEvaluator::kS, tau, lam);
      const double bv = ev(ChartEvaluator::kB, tau, lam);
      chart.r_q.at(a, bcol) = qv;
      chart.r_s.at(a, bcol) = sv;
      chart.r_b.at(a, bcol) = bv;
      chart.r_g.at(a, bcol) = ev(ChartEvaluator::kG, tau, lam);
      chart.r_pi.at(a, bcol) = qv * bv - sv * sv;
      chart.r_phi.at(a, bcol) = ev(ChartEvaluator::kPhi, tau, lam);
    }
  }
  (void)nl;
}

GeometryReport verify_ricci_hessian(const ChartData& chart, const ProfileParams& prof) {
  if (chart.rn < 9) throw ResampleError("verify requires a resampled chart");
  const int n = chart.rn;
  const double hx = chart.hx(), hu = chart.hu();

  GeometryReport rep;
  rep.rect = chart.rect;
  rep.resample_n = n;
  rep.min_q = chart.min_q;
  rep.min_pi = chart.min_pi;
  rep.min_abs_qlam = chart.min_abs_qlam;
  rep.loop_dx = chart.loop_dx;
  rep.loop_du = chart.loop_du;
  rep.loop_dphi = chart.loop_dphi;

  Field2 P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P.at(i, j) = std::log(chart.r_pi.at(i, j));

  Field2 Px, Pu, Qx, Qu, Sx, Su;
  central_xy(P, hx, hu, Px, Pu);
  central_xy(chart.r_q, hx, hu, Qx, Qu);
  central_xy(chart.r_s, hx, hu, Sx, Su);

  // Scalar curvature s = -Lap P with the metric Laplacian
  // Lap f = (d/dx (B f_x - S f_u) + d/du (Q f_u - S f_x)) / Pi.
  Field2 flux_x(n, n), flux_u(n, n);
  for (int i = 1; i + 1 < n; ++i)
    for (int j = 1; j + 1 < n; ++j) {
      flux_x.at(i, j) = chart.r_b.at(i, j) * Px.at(i, j) - chart.r_s.at(i, j) * Pu.at(i, j);
      flux_u.at(i, j) = chart.r_q.at(i, j) * Pu.at(i, j) - chart.r_s.at(i, j) * Px.at(i, j);
    }

  // Second derivatives of P and the trace identity ingredient dY.
  const int lo = 2, hi = n - 3;
  double theta_min = std::numeric_limits<double>::infinity(), theta_max = -theta_min;
  double kappa_min = theta_min, kappa_max = -theta_min;
  double theta_sum = 0.0, kappa_sum = 0.0;
  long count = 0;
  double hess_scale = 0.0;
  Field2 hess_mag(n, n);

  for (int i = lo; i <= hi; ++i) {
    for (int j = lo; j <= hi; ++j) {
      const double tau = chart.r_tau.at(i, j);
      const auto pe = profiles::eval(prof, tau);
      const double qv = chart.r_q.at(i, j), sv = chart.r_s.at(i, j), bv = chart.r_b.at(i, j);

      const double pxx = (P.at(i + 1, j) - 2.0 * P.at(i, j) + P.at(i - 1, j)) / (hx * hx);
      const double puu = (P.at(i, j + 1) - 2.0 * P.at(i, j) + P.at(i, j - 1)) / (hu * hu);
      const double pxu = (P.at(i + 1, j + 1) - P.at(i + 1, j - 1) - P.at(i - 1, j + 1) +
                          P.at(i - 1, j - 1)) /
                         (4.0 * hx * hu);

      const double sigma = -0.5 * (qv * pe.alpha1 + pe.F1);
      const double r1 = pe.alpha * Qx.at(i, j) - pxx - 2.0 * sigma * qv;
      const double r2 = pe.alpha * Qu.at(i, j) - pxu - 2.0 * sigma * sv;
      const double r3 = pe.alpha * Su.at(i, j) - puu - 2.0 * sigma * bv;
      rep.rh_components[0] = std::max(rep.rh_components[0], std::abs(r1));
      rep.rh_components[1] = std::max(rep.rh_components[1], std::abs(r2));
      rep.rh_components[2] = std::max(rep.rh_components[2], std::abs(r3));

      const double div = (flux_x.at(i + 1, j) - flux_x.at(i - 1, j)) / (2.0 * hx) +
                         (flux_u.at(i, j + 1) - flux_u.at(i, j - 1)) / (2.0 * hu);
      const double s_scal = -div / chart.r_pi.at(i, j);
      const double Y = Px.at(i, j);
      rep.sigma_check_max =
          std::max(rep.sigma_check_max, std::abs(4.0 * sigma - (Y * pe.alpha + s_scal)));

      const double theta = 0.5 * (pe.alpha * s_scal + 4.0 * pe.eps * Y);
      const double kappa = theta * pe.psi + Y / pe.alpha - qv;
      theta_min = std::min(theta_min, theta);
      theta_max = std::max(theta_max, theta);
      kappa_min = std::min(kappa_min, kappa);
      kappa_max = std::max(kappa_max, kappa);
      theta_sum += theta;
      kappa_sum += kappa;
      ++count;

      rep.mixed_partial_max =
          std::max(rep.mixed_partial_max, std::abs(Qu.at(i, j) - Sx.at(i, j)));

      // 2 r(v,.) + dY with the Ricci entries taken from the potential
      // shortcut; both routes are finite differences of P.
      const double t1 = -pxx + (Px.at(i + 1, j) - Px.at(i - 1, j)) / (2.0 * hx);
      const double t2 = -pxu + (Px.at(i, j + 1) - Px.at(i, j - 1)) / (2.0 * hu);
      rep.trace_identity_max = std::max({rep.trace_identity_max, std::abs(t1), std::abs(t2)});

      const double hm =
          std::abs(pe.alpha) *
          std::max({std::abs(Qx.at(i, j)), std::abs(Qu.at(i, j)), std::abs(Su.at(i, j))});
      hess_mag.at(i, j) = hm;
      hess_scale = std::max(hess_scale, hm);

      for (double vcheck : {r1, r2, r3, s_scal, theta, kappa}) {
        if (!std::isfinite(vcheck)) rep.finite_ok = false;
      }
    }
  }

  rep.rh_max = std::max({rep.rh_components[0], rep.rh_components[1], rep.rh_components[2]});
  rep.theta_mean = theta_sum / count;
  rep.kappa_mean = kappa_sum / count;
  rep.theta_dev = theta_max - theta_min;
  rep.kappa_dev = kappa_max - kappa_min;

  long zero_count = 0;
  rep.hess_min = std::numeric_limits<double>::infinity();
  for (int i = lo; i <= hi; ++i)
    for (int j = lo; j <= hi; ++j) {
      rep.hess_min = std::min(rep.hess_min, hess_mag.at(i, j));
      if (hess_mag.at(i, j) < 1e-8 * hess_scale) ++zero_count;
    }
  rep.hess_zero_fraction = static_cast<double>(zero_count) / count;
  return rep;
}

Metric4 metric_at(const StateZ& z) {
  Metric4 m;
  const double Q = z.q, S = z.s, B = z.b;
  m.m = {Q, 0, S, 0, 0, Q, 0, S, S, 0, B, 0, 0, S, 0, B};
  m.pi = z.pi();
  // Leading principal minors: Q, Q^2, Q*Pi, Pi^2.
  m.positive = Q > 0.0 && m.pi > 0.0;
  return m;
}

namespace {

struct MetricDeriv {
  std::array<double, 16> g{}, gx{}, gu{};
};

std::array<double, 16> metric_entries(double Q, double S, double B) {
  return {Q, 0, S, 0, 0, Q, 0, S, S, 0, B, 0, 0, S, 0, B};
}

// Christoffel symbols (second kind) at an interior resample node by central
// differencing of the metric entries; indices ordered (x, x', u, u').
std::array<double, 64> christoffel_at(const ChartData& chart, int i, int j) {
  const double hx = chart.hx(), hu = chart.hu();
  const auto at = [&](int a, int b) {
    return metric_entries(chart.r_q.at(a, b), chart.r_s.at(a, b), chart.r_b.at(a, b));
  };
  const auto g = at(i, j);
  const auto gxp = at(i + 1, j), gxm = at(i - 1, j);
  const auto gup = at(i, j + 1), gum = at(i, j - 1);
  std::array<std::array<double, 16>, 4> dg{};  // derivative along each coordinate
  for (int e = 0; e < 16; ++e) {
    dg[0][e] = (gxp[e] - gxm[e]) / (2.0 * hx);
    dg[2][e] = (gup[e] - gum[e]) / (2.0 * hu);
  }
  const double Q = chart.r_q.at(i, j), S = chart.r_s.at(i, j), B = chart.r_b.at(i, j);
  const double pi = Q * B - S * S;
  const std::array<double, 16> ginv = {B / pi, 0, -S / pi, 0, 0,      B / pi, 0, -S / pi,
                                       -S / pi, 0, Q / pi, 0, 0,      -S / pi, 0, Q / pi};
  std::array<double, 64> gamma{};
  for (int l = 0; l < 4; ++l)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double acc = 0.0;
        for (int m = 0; m < 4; ++m) {
          const double first =
              0.5 * (dg[a][4 * m + b] + dg[b][4 * m + a] - dg[m][4 * a + b]);
          acc += ginv[4 * l + m] * first;
        }
        gamma[16 * l + 4 * a + b] = acc;
      }
  (void)g;
  return gamma;
}

}  // namespace

std::vector<std::array<double, 16>> curvature_oracle_full(const ChartData& chart) {
  if (chart.rn < 9) throw ResampleError("curvature oracle requires a resampled chart");
  const int n = chart.rn;
  const double hx = chart.hx(), hu = chart.hu();
  std::vector<std::array<double, 16>> ricci(static_cast<size_t>(n) * n);

  parallel_for(n, [&](int i) {
    if (i < 2 || i > n - 3) return;
    for (int j = 2; j <= n - 3; ++j) {
      const auto gc = christoffel_at(chart, i, j);
      const auto gxp = christoffel_at(chart, i + 1, j);
      const auto gxm = christoffel_at(chart, i - 1, j);
      const auto gup = christoffel_at(chart, i, j + 1);
      const auto gum = christoffel_at(chart, i, j - 1);
      auto dgamma = [&](int dir, int idx) {
        if (dir == 0) return (gxp[idx] - gxm[idx]) / (2.0 * hx);
        if (dir == 2) return (gup[idx] - gum[idx]) / (2.0 * hu);
        return 0.0;
      };
      std::array<double, 16> R{};
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double val = 0.0;
          for (int m = 0; m < 4; ++m) {
            val += dgamma(m, 16 * m + 4 * a + b);   // d_m Gamma^m_ab
            val -= dgamma(b, 16 * m + 4 * a + m);   // d_b Gamma^m_am
            for (int l = 0; l < 4; ++l) {
              val += gc[16 * m + 4 * m + l] * gc[16 * l + 4 * a + b];
              val -= gc[16 * m + 4 * b + l] * gc[16 * l + 4 * a + m];
            }
          }
          R[4 * a + b] = val;
        }
      ricci[static_cast<size_t>(i) * n + j] = R;
    }
  });
  return ricci;
}

double curvature_oracle_mismatch(const ChartData& chart) {
  const auto ricci = curvature_oracle_full(chart);
  const int n = chart.rn;
  const double hx = chart.hx(), hu = chart.hu();
  Field2 P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P.at(i, j) = std::log(chart.r_pi.at(i, j));
  double worst = 0.0;
  for (int i = 2; i <= n - 3; ++i)
    for (int j = 2; j <= n - 3; ++j) {
      const double pxx = (P.at(i + 1, j) - 2.0 * P.at(i, j) + P.at(i - 1, j)) / (hx * hx);
      const double puu = (P.at(i, j + 1) - 2.0 * P.at(i, j) + P.at(i, j - 1)) / (hu * hu);
      const double pxu = (P.at(i + 1, j + 1) - P.at(i + 1, j - 1) - P.at(i - 1, j + 1) +
                          P.at(i - 1, j - 1)) /
                         (4.0 * hx * hu);
      const std::array<double, 16> expect = {
          -0.5 * pxx, 0, -0.5 * pxu, 0, 0, -0.5 * pxx, 0, -0.5 * pxu,
          -0.5 * pxu, 0, -0.5 * puu, 0, 0, -0.5 * pxu, 0, -0.5 * puu};
      const auto& R = ricci[static_cast<size_t>(i) * n + j];
      for (int e = 0; e < 16; ++e) worst = std::max(worst, std::abs(R[e] - expect[e]));
    }
  return worst;
}

}  // namespace srh::geometry
