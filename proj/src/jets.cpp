#include "srh/jets.hpp"

#include <algorithm>
#include <cmath>

#include "srh/core/errors.hpp"

namespace srh::jets {

double scale(const StateZ& z, const ProfileEval& prof) {
  double m = 1.0;
  for (double v : {z.q, z.s, z.b, z.g, prof.alpha, prof.F}) m = std::max(m, std::abs(v));
  return m;
}

std::array<double, 6> residual_system(const StateZ& z, const Jet1& jet, const ProfileEval& prof) {
  return {
      jet.q_tau + jet.s_lam - z.q * prof.alpha - prof.F,
      jet.s_tau + jet.b_lam - z.s * prof.alpha - z.g,
      z.q * jet.b_tau + z.s * jet.b_lam - z.s * jet.s_tau - z.b * jet.s_lam,
      z.s * jet.q_tau + z.b * jet.q_lam - z.q * jet.s_tau - z.s * jet.s_lam,
      jet.g_tau + z.s * prof.alpha1,
      jet.g_lam - z.q * prof.alpha1 - prof.F1,
  };
}

std::array<double, 2> residual_consequences(const StateZ& z, const Jet1& jet,
                                            const ProfileEval& prof) {
  const double pi = z.pi();
  return {
      z.q * jet.b_tau + z.b * jet.q_tau - 2.0 * z.s * jet.s_tau - pi * prof.alpha -
          z.b * prof.F + z.s * z.g,
      z.q * jet.b_lam + z.b * jet.q_lam - 2.0 * z.s * jet.s_lam - z.q * z.g + z.s * prof.F,
  };
}

Jet1 solve_jet(const StateZ& z, const ProfileEval& prof, double q_tau, double q_lam) {
  if (!(z.q > 0.0)) throw AdmissibilityError("solve_jet requires Q > 0");
  Jet1 jet;
  jet.q_tau = q_tau;
  jet.q_lam = q_lam;
  jet.s_lam = z.q * prof.alpha + prof.F - q_tau;
  jet.s_tau = (z.s * q_tau + z.b * q_lam - z.s * jet.s_lam) / z.q;
  jet.b_lam = z.s * prof.alpha + z.g - jet.s_tau;
  jet.b_tau = (z.s * jet.s_tau + z.b * jet.s_lam - z.s * jet.b_lam) / z.q;
  jet.g_tau = -z.s * prof.alpha1;
  jet.g_lam = z.q * prof.alpha1 + prof.F1;
  return jet;
}

namespace {
Jet1 jet_sub(const Jet1& a, const Jet1& b) {
  return {a.q_tau - b.q_tau, a.s_tau - b.s_tau, a.b_tau - b.b_tau, a.g_tau - b.g_tau,
          a.q_lam - b.q_lam, a.s_lam - b.s_lam, a.b_lam - b.b_lam, a.g_lam - b.g_lam};
}
}  // namespace

AffineBasis affine_basis(const StateZ& z, const ProfileEval& prof) {
  AffineBasis basis;
  basis.particular = solve_jet(z, prof, 0.0, 0.0);
  basis.e1 = jet_sub(solve_jet(z, prof, 1.0, 0.0), basis.particular);
  basis.e2 = jet_sub(solve_jet(z, prof, 0.0, 1.0), basis.particular);
  return basis;
}

RateZ phi_map(const Jet1& jet, const Direction& dir) {
  return {
      jet.q_tau * dir.tau_dot + jet.q_lam * dir.lam_dot,
      jet.s_tau * dir.tau_dot + jet.s_lam * dir.lam_dot,
      jet.b_tau * dir.tau_dot + jet.b_lam * dir.lam_dot,
      jet.g_tau * dir.tau_dot + jet.g_lam * dir.lam_dot,
  };
}

std::array<double, 2> check_L(const StateZ& z, const ProfileEval& prof, const Direction& dir,
                              const RateZ& rate) {
  const double pi = z.pi();
  const double g_target = -z.s * prof.alpha1 * dir.tau_dot +
                          (z.q * prof.alpha1 + prof.F1) * dir.lam_dot;
  const double pi_target = (pi * prof.alpha + z.b * prof.F - z.s * z.g) * dir.tau_dot +
                           (z.q * z.g - z.s * prof.F) * dir.lam_dot;
  return {
      rate.g_dot - g_target,
      z.q * rate.b_dot + z.b * rate.q_dot - 2.0 * z.s * rate.s_dot - pi_target,
  };
}

Jet1 invert_phi(const StateZ& z, const ProfileEval& prof, const Direction& dir, const RateZ& rate,
                double tol) {
  if (!dir.horizontal()) throw DirectionError("invert_phi requires a nonzero direction");
  if (!(z.q > 0.0)) throw AdmissibilityError("invert_phi requires Q > 0");
  const double sc = scale(z, prof);
  const auto membership = check_L(z, prof, dir, rate);
  if (std::max(std::abs(membership[0]), std::abs(membership[1])) > tol * sc) {
    throw MembershipError("rate does not satisfy the tangency conditions");
  }

  // Q_dot and S_dot as affine functions of (Q_tau, Q_lam):
  //   Q_dot = t*Q_tau + l*Q_lam
  //   S_dot = t*S_tau + l*S_lam with S_lam = Q*a + F - Q_tau and
  //           S_tau = (2S*Q_tau + B*Q_lam)/Q - S*(Q*a + F)/Q.
  const double t = dir.tau_dot, l = dir.lam_dot;
  const double qaf = z.q * prof.alpha + prof.F;
  const double a11 = t;
  const double a12 = l;
  const double a21 = 2.0 * z.s * t / z.q - l;
  const double a22 = z.b * t / z.q;
  const double r1 = rate.q_dot;
  const double r2 = rate.s_dot + t * z.s * qaf / z.q - l * qaf;
  const double det = a11 * a22 - a12 * a21;  // equals (B t^2 - 2S t l + Q l^2)/Q
  const double dir_norm = t * t + l * l;
  if (std::abs(det) <= 1e-14 * dir_norm * sc) {
    throw SingularError("degenerate reduced system in invert_phi");
  }
  const double q_tau = (r1 * a22 - r2 * a12) / det;
  const double q_lam = (a11 * r2 - a21 * r1) / det;
  Jet1 jet = solve_jet(z, prof, q_tau, q_lam);

  // The remaining two components are determined; verify they match.
  const RateZ back = phi_map(jet, dir);
  const double db = std::abs(back.b_dot - rate.b_dot);
  const double dg = std::abs(back.g_dot - rate.g_dot);
  const double dirsc = std::max(std::abs(t), std::abs(l));
  if (std::max(db, dg) > std::max(tol, 1e-10) * sc * std::max(1.0, dirsc)) {
    throw MembershipError("recovered jet does not reproduce the full rate");
  }
  return jet;
}

}  // namespace srh::jets
