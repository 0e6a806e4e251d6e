#pragma once

#include <array>

#include "srh/profiles.hpp"

namespace srh::jets {

// Pointwise unknown Z = (Q, S, B, G).  Q, S, B are the second derivatives of
// the potential; admissibility means Q > 0 and pi() = Q*B - S^2 > 0.
struct StateZ {
  double q = 0.0;
  double s = 0.0;
  double b = 0.0;
  double g = 0.0;

  double pi() const { return q * b - s * s; }
  bool admissible() const { return q > 0.0 && pi() > 0.0; }
};

// The eight first partials, tau block then lambda block.
struct Jet1 {
  double q_tau = 0.0, s_tau = 0.0, b_tau = 0.0, g_tau = 0.0;
  double q_lam = 0.0, s_lam = 0.0, b_lam = 0.0, g_lam = 0.0;
};

struct Direction {
  double tau_dot = 0.0;
  double lam_dot = 0.0;
  bool horizontal() const { return tau_dot != 0.0 || lam_dot != 0.0; }
};

struct RateZ {
  double q_dot = 0.0, s_dot = 0.0, b_dot = 0.0, g_dot = 0.0;
};

using profiles::ProfileEval;

// Relative scale for residual tolerances.
double scale(const StateZ& z, const ProfileEval& prof);

// Left-hand sides of the six first-order equations, in the fixed order:
// [Q_t + S_l - Q*a - F,
//  S_t + B_l - S*a - G,
//  Q*B_t + S*B_l - S*S_t - B*S_l,
//  S*Q_t + B*Q_l - Q*S_t - S*S_l,
//  G_t + S*a',
//  G_l - Q*a' - F']
std::array<double, 6> residual_system(const StateZ& z, const Jet1& jet, const ProfileEval& prof);

// The two derived combinations that vanish on solutions:
// [Q*B_t + B*Q_t - 2S*S_t - Pi*a - B*F + S*G,
//  Q*B_l + B*Q_l - 2S*S_l - Q*G + S*F]
std::array<double, 2> residual_consequences(const StateZ& z, const Jet1& jet, const ProfileEval& prof);

// The unique jet solving the system with prescribed (Q_tau, Q_lam).
// Throws AdmissibilityError if Q <= 0.
Jet1 solve_jet(const StateZ& z, const ProfileEval& prof, double q_tau, double q_lam);

struct AffineBasis {
  Jet1 particular;  // solve_jet with (0, 0)
  Jet1 e1;          // direction of unit Q_tau
  Jet1 e2;          // direction of unit Q_lam
};

// Parametrization of the two-dimensional affine solution set by (Q_tau, Q_lam).
AffineBasis affine_basis(const StateZ& z, const ProfileEval& prof);

// Directional derivative of the jet along dir.
RateZ phi_map(const Jet1& jet, const Direction& dir);

// Residuals of the two linear conditions cutting out the rate space:
// [G_dot + S*a'*tau_dot - (Q*a' + F')*lam_dot,
//  Q*B_dot + B*Q_dot - 2S*S_dot - (Pi*a + B*F - S*G)*tau_dot - (Q*G - S*F)*lam_dot]
std::array<double, 2> check_L(const StateZ& z, const ProfileEval& prof, const Direction& dir,
                              const RateZ& rate);

// Inverse of phi_map restricted to the affine solution set: recovers the
// unique jet whose directional derivative along dir equals rate.  Throws
// DirectionError for a zero direction, MembershipError when check_L exceeds
// tol*scale, SingularError if the reduced 2x2 system degenerates.
Jet1 invert_phi(const StateZ& z, const ProfileEval& prof, const Direction& dir, const RateZ& rate,
                double tol);

}  // namespace srh::jets
