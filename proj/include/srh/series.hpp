#pragma once

#include <array>
#include <optional>

#include "srh/core/poly2.hpp"
#include "srh/core/taylor1.hpp"
#include "srh/jets.hpp"
#include "srh/profiles.hpp"

namespace srh::series {

using jets::StateZ;
using profiles::ProfileParams;

// Bivariate Taylor expansion of (Q, S, B, G) about (tau_c, lam_c), truncated
// to total degree `order`.  Substituting the truncated series into the six
// first-order equations leaves residuals whose coefficients vanish through
// total degree order-1 (up to round-off).
struct TaylorZ {
  double tau_c = 0.0;
  double lam_c = 0.0;
  int order = 0;
  Poly2 q, s, b, g;
  double trust_radius = 0.0;
};

// Optional seed: full lambda-expansions of Q and S along the initial line.
struct SeedSeries {
  Taylor1 q;
  Taylor1 s;
};

constexpr int kMaxOrder = 12;

// Degree-by-degree extension: along tau = tau_c the expansions of B and G
// follow from the two lambda-direction compatibility recursions; each next
// tau-level follows from the lambda-differentiated marching equations.
// Without a seed series, Q and S are taken affine along the initial line
// with slopes fixed by (q_tau, q_lam); with a seed series, q_tau and q_lam
// are ignored and the slopes come from the series.  The degree-1 part
// always coincides with jets::solve_jet.
TaylorZ taylor_extend(const StateZ& z, const ProfileParams& prof, double tau_star, double lam_star,
                      double q_tau, double q_lam, const std::optional<SeedSeries>& seed, int order);

// Horner evaluation of all four series.  Throws RadiusError outside the
// trust radius.
StateZ eval_taylor(const TaylorZ& t, double tau, double lam);

// Jet of the degree-1 part.
jets::Jet1 first_jet(const TaylorZ& t);

// Coefficient-level residuals of the six equations (valid through total
// degree order-1) for self-tests.
std::array<Poly2, 6> residual_series(const TaylorZ& t, const ProfileParams& prof);

// Same for the two derived consequence combinations.
std::array<Poly2, 2> consequence_series(const TaylorZ& t, const ProfileParams& prof);

}  // namespace srh::series
