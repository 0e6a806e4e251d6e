#pragma once

#include <string>
#include <vector>

#include "srh/core/taylor1.hpp"

namespace srh::profiles {

// Admissible coefficient families for the scalar profile alpha(tau).  The
// first five are the canonical normal forms; the last two are one-parameter
// interpolations connecting them (parameter stored in `param`).
enum class Family { const2, reciprocal, tanh2, coth2, cot2, eps_continuation, t_continuation };

std::string family_name(Family f);
Family family_from_name(const std::string& name);  // throws ConfigError

struct ProfileParams {
  Family family = Family::const2;
  double param = 0.0;   // eps for eps_continuation, t for t_continuation
  double theta = 0.0;
  double kappa = 0.0;
  // Reparametrization tau_hat = p + tau/c applied on top of the base family;
  // alpha_hat(tau_hat) = c * alpha(c*(tau_hat - p)).  c must be nonzero.
  double affine_c = 1.0;
  double affine_p = 0.0;
};

// Pointwise values of the coefficient functions and their derivatives.
// Invariants (up to round-off): alpha2 + alpha*alpha1 = 0,
// 2*alpha1 + alpha^2 = 4*eps, F2 = -F*alpha1, d(psi)/dtau = 1/alpha^2.
struct ProfileEval {
  double alpha = 0.0;
  double alpha1 = 0.0;  // d alpha / d tau
  double alpha2 = 0.0;  // d^2 alpha / d tau^2
  double F = 0.0;
  double F1 = 0.0;
  double F2 = 0.0;
  double psi = 0.0;
  double eps = 0.0;
};

struct Interval {
  double lo;
  double hi;
  bool contains(double t) const { return t > lo && t < hi; }
};

// Evaluate all coefficient functions at tau.  Throws DomainError within
// 1e-8 of a pole and ConfigError for affine_c == 0.
ProfileEval eval(const ProfileParams& params, double tau);

// Compose an affine reparametrization onto params.  theta and kappa are
// rescaled so that F transforms consistently (F_hat(tau_hat) = F(tau)/c).
ProfileParams affine_modify(const ProfileParams& params, double c, double p);

enum class ContinuationKind { eps_family, t_family };

// alpha for the two continuation families, without the theta/kappa payload.
double continuation_alpha(ContinuationKind kind, double param, double tau);

// Maximal pole-free open intervals of the profile.  Families with
// periodic poles report the intervals overlapping [-4pi, 4pi] scaled into
// the modified coordinate.
std::vector<Interval> valid_intervals(const ProfileParams& params);

// Distance from tau to the nearest pole (infinity if pole-free).
double pole_distance(const ProfileParams& params, double tau);

// Taylor coefficients of alpha about tau_star to the given order, generated
// from the first-order relation 2*alpha' = 4*eps - alpha^2 by recursion.
Taylor1 alpha_series(const ProfileParams& params, double tau_star, int order);

// Taylor coefficients of F about tau_star, from F'' = -F*alpha'.
Taylor1 f_series(const ProfileParams& params, double tau_star, int order);

}  // namespace srh::profiles
