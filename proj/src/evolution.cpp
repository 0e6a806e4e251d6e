#include "srh/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "srh/core/errors.hpp"
#include "srh/core/stencils.hpp"

namespace srh::evolution {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Edge columns excluded from reported norms (one-sided stencil region).
constexpr int kEdgeTrim = 4;

using profiles::ProfileEval;

// ---------------------------------------------------------------------------
// Exact l2-orthogonal projection onto polynomials of fixed degree, built by
// twice-iterated Gram-Schmidt on the grid samples.

class PolyProjectionFilter {
 public:
  PolyProjectionFilter(const Grid1D& grid, int degree) : n_(grid.n), m_(degree + 1) {
    basis_.assign(static_cast<size_t>(m_) * n_, 0.0);
    const double mid = 0.5 * (grid.a + grid.b);
    const double half = 0.5 * (grid.b - grid.a);
    std::vector<double> col(n_);
    for (int d = 0; d < m_; ++d) {
      for (int j = 0; j < n_; ++j) {
        const double x = (grid.point(j) - mid) / half;
        col[j] = d == 0 ? 1.0 : std::pow(x, d);
      }
      for (int pass = 0; pass < 2; ++pass) {
        for (int e = 0; e < d; ++e) {
          double dot = 0.0;
          for (int j = 0; j < n_; ++j) dot += col[j] * basis_[static_cast<size_t>(e) * n_ + j];
          for (int j = 0; j < n_; ++j) col[j] -= dot * basis_[static_cast<size_t>(e) * n_ + j];
        }
      }
      double nrm = 0.0;
      for (double v : col) nrm += v * v;
      nrm = std::sqrt(nrm);
      for (int j = 0; j < n_; ++j) basis_[static_cast<size_t>(d) * n_ + j] = col[j] / nrm;
    }
    coeff_.resize(m_);
  }

  void apply(std::span<double> f) const {
    for (int d = 0; d < m_; ++d) {
      double dot = 0.0;
      const double* b = basis_.data() + static_cast<size_t>(d) * n_;
      for (int j = 0; j < n_; ++j) dot += b[j] * f[j];
      coeff_[d] = dot;
    }
    for (int j = 0; j < n_; ++j) f[j] = 0.0;
    for (int d = 0; d < m_; ++d) {
      const double* b = basis_.data() + static_cast<size_t>(d) * n_;
      for (int j = 0; j < n_; ++j) f[j] += coeff_[d] * b[j];
    }
  }

 private:
  int n_, m_;
  std::vector<double> basis_;
  mutable std::vector<double> coeff_;
};

// ---------------------------------------------------------------------------
// Low-pass filter: trend removal + circulant Fourier taper on the remainder.

class SpectralFilter {
 public:
  SpectralFilter(const Grid1D& grid, const FilterOptions& opts) : n_(grid.n) {
    build_trend_stencils(grid.h());
    build_kernel(grid.h(), opts);
  }

  void apply(std::span<double> f) const {
    // Degree-9 polynomial matching value and four derivatives at both ends.
    std::array<double, 10> rhs{};
    rhs[0] = f[0];
    rhs[5] = f[n_ - 1];
    for (int d = 1; d <= 4; ++d) {
      double l = 0.0, r = 0.0;
      for (int i = 0; i < kTrendNodes; ++i) {
        l += dweights_[d - 1][i] * f[i];
        r += dweights_[d - 1][i] * f[n_ - 1 - i] * ((d % 2) ? -1.0 : 1.0);
      }
      rhs[d] = l;
      rhs[5 + d] = r;
    }
    std::array<double, 10> coef = solve_trend(rhs);

    work_.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      work_[j] = f[j] - trend_eval(coef, j);
    }
    // Circulant convolution with the precomputed kernel.
    for (int j = 0; j < n_; ++j) {
      double acc = 0.0;
      for (int l = 0; l < n_; ++l) {
        int d = j - l;
        if (d < 0) d += n_;
        acc += kernel_[d] * work_[l];
      }
      f[j] = trend_eval(coef, j) + acc;
    }
  }

 private:
  static constexpr int kTrendNodes = 9;

  void build_trend_stencils(double h) {
    std::array<double, kTrendNodes> nodes{};
    for (int i = 0; i < kTrendNodes; ++i) nodes[i] = i * h;
    auto w = fornberg_weights(0.0, std::span<const double>(nodes.data(), kTrendNodes), 4);
    for (int d = 1; d <= 4; ++d) {
      for (int i = 0; i < kTrendNodes; ++i) dweights_[d - 1][i] = w[d][i];
    }

    // Condition matrix for the scaled monomial basis ((j - mid)/half)^m.
    mid_ = 0.5 * (n_ - 1);
    half_ = std::max(1.0, mid_);
    hh_ = h;
    std::array<std::array<double, 10>, 10> A{};
    for (int end = 0; end < 2; ++end) {
      const double jj = end == 0 ? 0.0 : static_cast<double>(n_ - 1);
      const double x = (jj - mid_) / half_;
      for (int d = 0; d <= 4; ++d) {
        for (int m = 0; m < 10; ++m) {
          // d-th tau-derivative of ((j-mid)/half)^m at x, with dj = dtau/h.
          double fac = 1.0;
          for (int k = 0; k < d; ++k) fac *= (m - k);
          if (m - d < 0) {
            A[5 * end + d][m] = 0.0;
          } else {
            A[5 * end + d][m] = fac * std::pow(x, m - d) / std::pow(half_ * h, d);
          }
        }
      }
    }
    lu_ = A;
    // LU factorization with partial pivoting (small fixed size).
    for (int k = 0; k < 10; ++k) {
      int piv = k;
      for (int i = k + 1; i < 10; ++i)
        if (std::abs(lu_[i][k]) > std::abs(lu_[piv][k])) piv = i;
      std::swap(lu_[k], lu_[piv]);
      std::swap(perm_[k], perm_[piv]);
      for (int i = k + 1; i < 10; ++i) {
        lu_[i][k] /= lu_[k][k];
        for (int j = k + 1; j < 10; ++j) lu_[i][j] -= lu_[i][k] * lu_[k][j];
      }
    }
  }

  std::array<double, 10> solve_trend(const std::array<double, 10>& rhs) const {
    std::array<double, 10> x{};
    for (int i = 0; i < 10; ++i) x[i] = rhs[perm_[i]];
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu_[i][j] * x[j];
    for (int i = 9; i >= 0; --i) {
      for (int j = i + 1; j < 10; ++j) x[i] -= lu_[i][j] * x[j];
      x[i] /= lu_[i][i];
    }
    return x;
  }

  double trend_eval(const std::array<double, 10>& coef, int j) const {
    const double x = (j - mid_) / half_;
    double acc = 0.0;
    for (int m = 9; m >= 0; --m) acc = acc * x + coef[m];
    return acc;
  }

  void build_kernel(double h, const FilterOptions& opts) {
    kernel_.assign(n_, 0.0);
    const double period = n_ * h;
    for (int k = 0; k < n_; ++k) {
      const int m = std::min(k, n_ - k);
      const double kphys = 2.0 * kPi * m / period;
      double rho = 1.0;
      if (kphys > opts.cutoff) {
        const double x = (kphys - opts.cutoff) / opts.taper;
        const double arg = x * x * x * x;
        rho = arg > 40.0 ? 0.0 : std::exp(-arg);
      }
      rho_max_k_ = std::max(rho_max_k_, kphys * rho);
      for (int d = 0; d < n_; ++d) {
        kernel_[d] += rho * std::cos(2.0 * kPi * k * d / n_) / n_;
      }
    }
  }

  int n_;
  double mid_ = 0.0, half_ = 1.0, hh_ = 1.0;
  std::array<std::array<double, kTrendNodes>, 4> dweights_{};
  std::array<std::array<double, 10>, 10> lu_{};
  std::array<int, 10> perm_{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> kernel_;
  double rho_max_k_ = 0.0;
  mutable std::vector<double> work_;
};

// ---------------------------------------------------------------------------

struct Fields {
  std::vector<double> q, s, b, g;

  void resize(size_t n) {
    q.assign(n, 0.0);
    s.assign(n, 0.0);
    b.assign(n, 0.0);
    g.assign(n, 0.0);
  }
};

// Marching right-hand side:
//   Q_t = Q*a + F - S_l
//   S_t = S*a + G - B_l
//   B_t = (S*S_t + B*S_l - S*B_l)/Q
//   G_t = -S*a'
void rhs(const Slice& sl, const ProfileEval& pe, Fields& out, std::vector<double>& s_lam,
         std::vector<double>& b_lam) {
  const int n = sl.size();
  const double h = sl.lam.h();
  s_lam.resize(n);
  b_lam.resize(n);
  derivative4(sl.s, h, s_lam);
  derivative4(sl.b, h, b_lam);
  out.resize(n);
  for (int j = 0; j < n; ++j) {
    const double q = sl.q[j], s = sl.s[j], b = sl.b[j], g = sl.g[j];
    const double qt = q * pe.alpha + pe.F - s_lam[j];
    const double st = s * pe.alpha + g - b_lam[j];
    out.q[j] = qt;
    out.s[j] = st;
    out.b[j] = (s * st + b * s_lam[j] - s * b_lam[j]) / q;
    out.g[j] = -s * pe.alpha1;
  }
}

Slice axpy(const Slice& base, double coef, const Fields& k) {
  Slice out = base;
  for (int j = 0; j < out.size(); ++j) {
    out.q[j] = base.q[j] + coef * k.q[j];
    out.s[j] = base.s[j] + coef * k.s[j];
    out.b[j] = base.b[j] + coef * k.b[j];
    out.g[j] = base.g[j] + coef * k.g[j];
  }
  return out;
}

bool finite(const Slice& sl) {
  for (int j = 0; j < sl.size(); ++j) {
    if (!std::isfinite(sl.q[j]) || !std::isfinite(sl.s[j]) || !std::isfinite(sl.b[j]) ||
        !std::isfinite(sl.g[j]))
      return false;
  }
  return true;
}

}  // namespace

Slice generate_initial_data(const ProfileParams& prof, double tau0, const Grid1D& lam_grid,
                            const SeedFn& q_fn, const SeedFn& s_fn, double b0, double g0) {
  const ProfileEval pe = profiles::eval(prof, tau0);
  const int n = lam_grid.n;
  if (n < 9) throw ConfigError("lambda grid needs at least 9 points");

  Slice sl;
  sl.tau = tau0;
  sl.lam = lam_grid;
  sl.q.resize(n);
  sl.s.resize(n);
  sl.b.resize(n);
  sl.g.resize(n);

  for (int j = 0; j < n; ++j) {
    sl.q[j] = q_fn(lam_grid.point(j));
    sl.s[j] = s_fn(lam_grid.point(j));
  }

  // B' = (Q*G - S*F - Q'*B + 2*S*S')/Q,  G' = Q*a' + F' along the slice.
  auto ode = [&](double lam, double B, double G, double& dB, double& dG) {
    const double q = q_fn(lam), s = s_fn(lam);
    const double qp = q_fn.deriv(lam), sp = s_fn.deriv(lam);
    dG = q * pe.alpha1 + pe.F1;
    dB = (q * G - s * pe.F - qp * B + 2.0 * s * sp) / q;
  };

  const double h = lam_grid.h();
  double B = b0, G = g0;
  sl.b[0] = B;
  sl.g[0] = G;
  for (int j = 0; j + 1 < n; ++j) {
    const double lam = lam_grid.point(j);
    double k1b, k1g, k2b, k2g, k3b, k3g, k4b, k4g;
    ode(lam, B, G, k1b, k1g);
    ode(lam + 0.5 * h, B + 0.5 * h * k1b, G + 0.5 * h * k1g, k2b, k2g);
    ode(lam + 0.5 * h, B + 0.5 * h * k2b, G + 0.5 * h * k2g, k3b, k3g);
    ode(lam + h, B + h * k3b, G + h * k3g, k4b, k4g);
    B += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    G += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    sl.b[j + 1] = B;
    sl.g[j + 1] = G;
  }

  for (int j = 0; j < n; ++j) {
    const StateZ z = sl.state_at(j);
    if (!(z.q > 0.0)) {
      throw PositivityError("Q <= 0 at lambda = " + std::to_string(lam_grid.point(j)));
    }
    if (!(z.pi() > 0.0)) {
      throw PositivityError("Q*B - S^2 <= 0 at lambda = " + std::to_string(lam_grid.point(j)));
    }
    if (q_fn.deriv(lam_grid.point(j)) == 0.0) {
      throw PositivityError("Q has vanishing lambda-derivative at lambda = " +
                            std::to_string(lam_grid.point(j)));
    }
  }
  return sl;
}

std::array<double, 2> constraint_norms(const Slice& slice, const ProfileEval& pe) {
  const int n = slice.size();
  const double h = slice.lam.h();
  std::vector<double> q_lam(n), s_lam(n), b_lam(n), g_lam(n);
  derivative4(slice.q, h, q_lam);
  derivative4(slice.s, h, s_lam);
  derivative4(slice.b, h, b_lam);
  derivative4(slice.g, h, g_lam);
  double c1 = 0.0, c2 = 0.0;
  const int lo = std::min(kEdgeTrim, n / 2 - 1);
  for (int j = lo; j < n - lo; ++j) {
    const double q = slice.q[j], s = slice.s[j], b = slice.b[j], g = slice.g[j];
    const double r1 = q * b_lam[j] + b * q_lam[j] - 2.0 * s * s_lam[j] - q * g + s * pe.F;
    const double r2 = g_lam[j] - q * pe.alpha1 - pe.F1;
    c1 = std::max(c1, std::abs(r1));
    c2 = std::max(c2, std::abs(r2));
  }
  return {c1, c2};
}

SliceDiagnostics slice_diagnostics(const Slice& slice, const ProfileEval& pe) {
  SliceDiagnostics d;
  const int n = slice.size();
  std::vector<double> q_lam(n);
  derivative4(slice.q, slice.lam.h(), q_lam);
  d.min_q = slice.q[0];
  d.min_pi = slice.state_at(0).pi();
  d.min_abs_qlam = std::abs(q_lam[0]);
  for (int j = 0; j < n; ++j) {
    d.min_q = std::min(d.min_q, slice.q[j]);
    d.min_pi = std::min(d.min_pi, slice.state_at(j).pi());
    d.min_abs_qlam = std::min(d.min_abs_qlam, std::abs(q_lam[j]));
  }
  const auto c = constraint_norms(slice, pe);
  d.c1 = c[0];
  d.c2 = c[1];
  return d;
}

GridField evolve(const ProfileParams& prof, const Slice& initial, double tau1, int n_steps,
                 const EvolveOptions& opts) {
  GridField field;
  field.profile = prof;
  field.lam = initial.lam;

  {
    const ProfileEval pe0 = profiles::eval(prof, initial.tau);
    field.slices.push_back(initial);
    field.diagnostics.push_back(slice_diagnostics(initial, pe0));
    if (!(field.diagnostics.back().min_q > 0.0) || !(field.diagnostics.back().min_pi > 0.0)) {
      throw PositivityError("initial slice is not admissible");
    }
  }
  if (tau1 == initial.tau || n_steps == 0) return field;
  if (n_steps < 0) throw ConfigError("evolve: n_steps must be nonnegative");

  const double dt = (tau1 - initial.tau) / n_steps;
  std::optional<PolyProjectionFilter> poly_filter;
  std::optional<SpectralFilter> fourier_filter;
  if (opts.filter.enabled) {
    if (opts.filter.kind == FilterOptions::Kind::poly_projection) {
      poly_filter.emplace(initial.lam, opts.filter.poly_degree);
    } else {
      fourier_filter.emplace(initial.lam, opts.filter);
    }
  }
  auto filter_fields = [&](Slice& sl) {
    if (poly_filter) {
      poly_filter->apply(sl.q);
      poly_filter->apply(sl.s);
      poly_filter->apply(sl.b);
      poly_filter->apply(sl.g);
    } else if (fourier_filter) {
      fourier_filter->apply(sl.q);
      fourier_filter->apply(sl.s);
      fourier_filter->apply(sl.b);
      fourier_filter->apply(sl.g);
    }
  };

  Slice cur = initial;
  Fields k1, k2, k3, k4;
  std::vector<double> ws, wb;

  for (int step = 0; step < n_steps; ++step) {
    const double t0 = cur.tau;
    ProfileEval pe;
    try {
      pe = profiles::eval(prof, t0);
      rhs(cur, pe, k1, ws, wb);
      Slice st = axpy(cur, 0.5 * dt, k1);
      pe = profiles::eval(prof, t0 + 0.5 * dt);
      rhs(st, pe, k2, ws, wb);
      st = axpy(cur, 0.5 * dt, k2);
      rhs(st, pe, k3, ws, wb);
      st = axpy(cur, dt, k3);
      pe = profiles::eval(prof, t0 + dt);
      rhs(st, pe, k4, ws, wb);
    } catch (const DomainError&) {
      field.truncated = true;
      field.truncation_reason = "domain";
      return field;
    }

    Slice next = cur;
    next.tau = t0 + dt;
    for (int j = 0; j < next.size(); ++j) {
      next.q[j] = cur.q[j] + dt / 6.0 * (k1.q[j] + 2.0 * k2.q[j] + 2.0 * k3.q[j] + k4.q[j]);
      next.s[j] = cur.s[j] + dt / 6.0 * (k1.s[j] + 2.0 * k2.s[j] + 2.0 * k3.s[j] + k4.s[j]);
      next.b[j] = cur.b[j] + dt / 6.0 * (k1.b[j] + 2.0 * k2.b[j] + 2.0 * k3.b[j] + k4.b[j]);
      next.g[j] = cur.g[j] + dt / 6.0 * (k1.g[j] + 2.0 * k2.g[j] + 2.0 * k3.g[j] + k4.g[j]);
    }
    filter_fields(next);

    if (!finite(next)) {
      field.truncated = true;
      field.truncation_reason = "blowup";
      return field;
    }
    const ProfileEval pe_next = profiles::eval(prof, next.tau);
    const SliceDiagnostics diag = slice_diagnostics(next, pe_next);
    if (!(diag.min_q > 0.0) || !(diag.min_pi > 0.0) || !(diag.min_abs_qlam > 0.0)) {
      field.truncated = true;
      field.truncation_reason = "positivity";
      return field;
    }

    cur = std::move(next);
    if (opts.record_all_slices || step + 1 == n_steps) {
      field.slices.push_back(cur);
      field.diagnostics.push_back(diag);
    }
  }
  return field;
}

double jet_consistency_residual(const GridField& field) {
  const size_t nt = field.slices.size();
  const int nl = field.lam.n;
  if (nt < 5) throw ConfigError("jet consistency needs at least 5 slices");
  const double dt = field.dtau();
  const double h = field.lam.h();

  // tau-derivatives of each field via 4th-order stencils across slices.
  auto field_at = [&](int which, size_t i, int j) -> double {
    const Slice& sl = field.slices[i];
    switch (which) {
      case 0: return sl.q[j];
      case 1: return sl.s[j];
      case 2: return sl.b[j];
      default: return sl.g[j];
    }
  };

  double worst = 0.0;
  std::vector<double> col(nt), dcol(nt);
  std::vector<std::array<double, 4>> tau_deriv(nt * nl);
  for (int which = 0; which < 4; ++which) {
    for (int j = 0; j < nl; ++j) {
      for (size_t i = 0; i < nt; ++i) col[i] = field_at(which, i, j);
      derivative4(col, dt, dcol);
      for (size_t i = 0; i < nt; ++i) tau_deriv[i * nl + j][which] = dcol[i];
    }
  }

  std::vector<double> dq(nl), ds(nl), db(nl), dg(nl);
  for (size_t i = kEdgeTrim; i + kEdgeTrim < nt; ++i) {
    const Slice& sl = field.slices[i];
    const auto pe = profiles::eval(field.profile, sl.tau);
    derivative4(sl.q, h, dq);
    derivative4(sl.s, h, ds);
    derivative4(sl.b, h, db);
    derivative4(sl.g, h, dg);
    for (int j = kEdgeTrim; j < nl - kEdgeTrim; ++j) {
      jets::Jet1 jet;
      jet.q_tau = tau_deriv[i * nl + j][0];
      jet.s_tau = tau_deriv[i * nl + j][1];
      jet.b_tau = tau_deriv[i * nl + j][2];
      jet.g_tau = tau_deriv[i * nl + j][3];
      jet.q_lam = dq[j];
      jet.s_lam = ds[j];
      jet.b_lam = db[j];
      jet.g_lam = dg[j];
      const auto res = jets::residual_system(sl.state_at(j), jet, pe);
      for (double r : res) worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

ConvergenceStudy convergence_study(const StudyConfig& config) {
  ConvergenceStudy study;
  if (config.levels.size() < 2) throw DegenerateStudyError("need at least two resolution levels");
  for (size_t i = 0; i + 1 < config.levels.size(); ++i) {
    if (config.levels[i] == config.levels[i + 1]) {
      throw DegenerateStudyError("identical resolution levels");
    }
  }

  std::vector<GridField> fields;
  for (int n_lam : config.levels) {
    if (n_lam < 33) {
      study.reliable = false;
      study.note = "level below 33 points; orders unreliable";
    }
    Grid1D grid{config.lam0, config.lam1, n_lam};
    const Slice init = generate_initial_data(config.profile, config.tau0, grid, config.q_fn,
                                             config.s_fn, config.b0, config.g0);
    const double h = grid.h();
    const int steps =
        std::max(1, static_cast<int>(std::ceil((config.tau1 - config.tau0) / (config.evolve.dt_ratio * h))));
    GridField f = evolve(config.profile, init, config.tau1, steps, config.evolve);
    if (f.truncated) {
      study.reliable = false;
      study.note = "run truncated (" + f.truncation_reason + ") at level " + std::to_string(n_lam);
    }
    ConvergenceRow row;
    row.n_lam = n_lam;
    row.c1 = f.diagnostics.back().c1;
    row.c2 = f.diagnostics.back().c2;
    study.rows.push_back(row);
    fields.push_back(std::move(f));
  }

  // Solution differences on shared points for nested levels.
  for (size_t i = 0; i + 1 < fields.size(); ++i) {
    const GridField& coarse = fields[i];
    const GridField& fine = fields[i + 1];
    const int rc = coarse.lam.n - 1, rf = fine.lam.n - 1;
    if (rf % rc != 0 || coarse.slices.empty() || fine.slices.empty()) continue;
    const int stride = rf / rc;
    const Slice& sc = coarse.slices.back();
    const Slice& sf = fine.slices.back();
    double diff = 0.0;
    for (int j = kEdgeTrim; j < coarse.lam.n - kEdgeTrim; ++j) {
      diff = std::max(diff, std::abs(sc.q[j] - sf.q[j * stride]));
      diff = std::max(diff, std::abs(sc.s[j] - sf.s[j * stride]));
      diff = std::max(diff, std::abs(sc.b[j] - sf.b[j * stride]));
      diff = std::max(diff, std::abs(sc.g[j] - sf.g[j * stride]));
    }
    study.rows[i].solution_diff = diff;
  }

  for (size_t i = 0; i + 1 < study.rows.size(); ++i) {
    const double ratio = std::log2(static_cast<double>(study.rows[i + 1].n_lam - 1) /
                                   (study.rows[i].n_lam - 1));
    if (ratio <= 0) continue;
    study.c1_orders.push_back(richardson_order(study.rows[i].c1, study.rows[i + 1].c1) / ratio);
    study.c2_orders.push_back(richardson_order(study.rows[i].c2, study.rows[i + 1].c2) / ratio);
    if (i + 2 < study.rows.size() && study.rows[i].solution_diff > 0 &&
        study.rows[i + 1].solution_diff > 0) {
      study.solution_orders.push_back(
          richardson_order(study.rows[i].solution_diff, study.rows[i + 1].solution_diff) / ratio);
    }
  }
  return study;
}

}  // namespace srh::evolution
