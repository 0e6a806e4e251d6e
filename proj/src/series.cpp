#include "srh/series.hpp"

#include <cmath>
#include <vector>

#include "srh/core/errors.hpp"

namespace srh::series {

namespace {

// Dense (order+1)^2 scratch with triangular occupancy.
struct Coeff {
  int n;
  std::vector<double> v;
  explicit Coeff(int order) : n(order + 1), v(static_cast<size_t>(order + 1) * (order + 1), 0.0) {}
  double& at(int i, int j) { return v[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return v[static_cast<size_t>(i) * n + j]; }
};

// sum_{m<=i, l<=j} A[m][l] * B[i-m][j-l]
double conv2(const Coeff& A, const Coeff& B, int i, int j) {
  double acc = 0.0;
  for (int m = 0; m <= i; ++m)
    for (int l = 0; l <= j; ++l) acc += A.at(m, l) * B.at(i - m, j - l);
  return acc;
}

Poly2 to_poly(const Coeff& c, int order) {
  Poly2 p(order);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) p.at(i, j) = c.at(i, j);
  return p;
}

Poly2 tau_only_poly(const Taylor1& t, int order) {
  Poly2 p(order);
  for (int i = 0; i <= std::min(order, t.order()); ++i) p.at(i, 0) = t[i];
  return p;
}

}  // namespace

TaylorZ taylor_extend(const StateZ& z, const ProfileParams& prof, double tau_star, double lam_star,
                      double q_tau, double q_lam, const std::optional<SeedSeries>& seed, int order) {
  if (order > kMaxOrder) throw OrderError("series order capped at 12");
  if (order < 1) throw OrderError("series order must be at least 1");
  if (!z.admissible()) throw AdmissibilityError("series extension needs an admissible state");

  const Taylor1 a = profiles::alpha_series(prof, tau_star, order + 1);
  const Taylor1 f = profiles::f_series(prof, tau_star, order + 1);
  const int N = order;

  Coeff Q(N), S(N), B(N), G(N);
  Q.at(0, 0) = z.q;
  S.at(0, 0) = z.s;
  B.at(0, 0) = z.b;
  G.at(0, 0) = z.g;

  // Initial-line expansions of Q and S.
  if (seed) {
    if (std::abs(seed->q[0] - z.q) > 1e-12 * (1.0 + std::abs(z.q)) ||
        std::abs(seed->s[0] - z.s) > 1e-12 * (1.0 + std::abs(z.s))) {
      throw ConfigError("seed series constant terms disagree with the state");
    }
    for (int j = 1; j <= N; ++j) {
      Q.at(0, j) = j <= seed->q.order() ? seed->q[j] : 0.0;
      S.at(0, j) = j <= seed->s.order() ? seed->s[j] : 0.0;
    }
  } else {
    if (N >= 1) {
      Q.at(0, 1) = q_lam;
      S.at(0, 1) = z.q * a[0] + f[0] - q_tau;  // lambda-slope forced by the first equation
    }
  }

  const double a0 = a[0], a1 = a[1], f0 = f[0], f1 = f[1];
  (void)a0;

  // Degree-by-degree fill.
  for (int d = 1; d <= N; ++d) {
    // Initial-line coefficients at (0, d): G from the G_lambda relation,
    // B from the lambda compatibility combination.
    {
      const int j = d - 1;
      G.at(0, d) = (a1 * Q.at(0, j) + (j == 0 ? f1 : 0.0)) / d;
      // (Q*B)_lambda = (S^2)_lambda + Q*G - S*F on the line.
      double s2 = 0.0;
      for (int m = 0; m <= d; ++m) s2 += S.at(0, m) * S.at(0, d - m);
      double qg = 0.0;
      for (int m = 0; m <= j; ++m) qg += Q.at(0, m) * G.at(0, j - m);
      double qb = s2 + (qg - f0 * S.at(0, j)) / d;
      for (int m = 1; m <= d; ++m) qb -= Q.at(0, m) * B.at(0, d - m);
      B.at(0, d) = qb / Q.at(0, 0);
    }
    // tau-levels k = 1..d at position (k, d-k), driven by the marching
    // equations evaluated at coefficient (k-1, d-k).
    for (int k = 1; k <= d; ++k) {
      const int i = k - 1;
      const int j = d - k;
      // Q_t = Q*a + F - S_l
      double qa = 0.0;
      for (int m = 0; m <= i; ++m) qa += a[m] * Q.at(i - m, j);
      Q.at(k, j) = (qa + (j == 0 ? f[i] : 0.0) - (j + 1) * S.at(i, j + 1)) / k;
      // S_t = S*a + G - B_l
      double sa = 0.0;
      for (int m = 0; m <= i; ++m) sa += a[m] * S.at(i - m, j);
      S.at(k, j) = (sa + G.at(i, j) - (j + 1) * B.at(i, j + 1)) / k;
      // G_t = -S*a'
      double sap = 0.0;
      for (int m = 0; m <= i; ++m) sap += (m + 1) * a[m + 1] * S.at(i - m, j);
      G.at(k, j) = -sap / k;
      // Q*B_t = S*S_t + B*S_l - S*B_l at (i, j); solve for B(k, j).
      double rhs = 0.0;
      for (int m = 0; m <= i; ++m)
        for (int l = 0; l <= j; ++l) {
          const double st = (i - m + 1) * S.at(i - m + 1, j - l);
          const double sl = (j - l + 1) * S.at(i - m, j - l + 1);
          const double bl = (j - l + 1) * B.at(i - m, j - l + 1);
          rhs += S.at(m, l) * st + B.at(m, l) * sl - S.at(m, l) * bl;
        }
      double known = 0.0;
      for (int m = 0; m <= i; ++m)
        for (int l = 0; l <= j; ++l) {
          if (m == 0 && l == 0) continue;
          known += Q.at(m, l) * (k - m) * B.at(k - m, j - l);
        }
      B.at(k, j) = (rhs - known) / (k * Q.at(0, 0));
    }
  }

  TaylorZ out;
  out.tau_c = tau_star;
  out.lam_c = lam_star;
  out.order = N;
  out.q = to_poly(Q, N);
  out.s = to_poly(S, N);
  out.b = to_poly(B, N);
  out.g = to_poly(G, N);
  const double pd = profiles::pole_distance(prof, tau_star);
  out.trust_radius = std::isfinite(pd) ? 0.25 * pd : 1e100;
  return out;
}

StateZ eval_taylor(const TaylorZ& t, double tau, double lam) {
  const double dt = tau - t.tau_c;
  const double dl = lam - t.lam_c;
  if (std::hypot(dt, dl) > t.trust_radius) {
    throw RadiusError("evaluation point outside the trust radius");
  }
  return {t.q.eval(dt, dl), t.s.eval(dt, dl), t.b.eval(dt, dl), t.g.eval(dt, dl)};
}

jets::Jet1 first_jet(const TaylorZ& t) {
  jets::Jet1 jet;
  jet.q_tau = t.q.at(1, 0);
  jet.s_tau = t.s.at(1, 0);
  jet.b_tau = t.b.at(1, 0);
  jet.g_tau = t.g.at(1, 0);
  jet.q_lam = t.q.at(0, 1);
  jet.s_lam = t.s.at(0, 1);
  jet.b_lam = t.b.at(0, 1);
  jet.g_lam = t.g.at(0, 1);
  return jet;
}

std::array<Poly2, 6> residual_series(const TaylorZ& t, const ProfileParams& prof) {
  const int N = t.order;
  const Poly2 A = tau_only_poly(profiles::alpha_series(prof, t.tau_c, N), N);
  const Poly2 F = tau_only_poly(profiles::f_series(prof, t.tau_c, N), N);
  const Poly2 A1 = tau_only_poly(profiles::alpha_series(prof, t.tau_c, N + 1).derivative(), N);
  const Poly2 F1 = tau_only_poly(profiles::f_series(prof, t.tau_c, N + 1).derivative(), N);

  const Poly2 qt = t.q.dtau(), ql = t.q.dlam();
  const Poly2 st = t.s.dtau(), sl = t.s.dlam();
  const Poly2 bt = t.b.dtau(), bl = t.b.dlam();
  const Poly2 gt = t.g.dtau(), gl = t.g.dlam();

  return {
      qt + sl - t.q * A - F,
      st + bl - t.s * A - t.g,
      t.q * bt + t.s * bl - t.s * st - t.b * sl,
      t.s * qt + t.b * ql - t.q * st - t.s * sl,
      gt + t.s * A1,
      gl - t.q * A1 - F1,
  };
}

std::array<Poly2, 2> consequence_series(const TaylorZ& t, const ProfileParams& prof) {
  const int N = t.order;
  const Poly2 A = tau_only_poly(profiles::alpha_series(prof, t.tau_c, N), N);
  const Poly2 F = tau_only_poly(profiles::f_series(prof, t.tau_c, N), N);
  const Poly2 qt = t.q.dtau(), ql = t.q.dlam();
  const Poly2 st = t.s.dtau(), sl = t.s.dlam();
  const Poly2 bt = t.b.dtau(), bl = t.b.dlam();
  const Poly2 pi = t.q * t.b - t.s * t.s;
  return {
      t.q * bt + t.b * qt - 2.0 * (t.s * st) - pi * A - t.b * F + t.s * t.g,
      t.q * bl + t.b * ql - 2.0 * (t.s * sl) - t.q * t.g + t.s * F,
  };
}

}  // namespace srh::series
