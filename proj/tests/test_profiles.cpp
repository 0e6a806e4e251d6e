#include <cmath>
#include <random>

#include "doctest.h"
#include "srh/core/errors.hpp"
#include "srh/core/stencils.hpp"
#include "srh/profiles.hpp"

using namespace srh;
using namespace srh::profiles;

namespace {

// Random tau inside a pole-free interval of the family, away from guard bands.
double sample_tau(Family f, double param, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const double u = unit(rng);
  switch (f) {
    case Family::const2:
    case Family::tanh2:
    case Family::t_continuation:
      return -3.0 + 6.0 * u;
    case Family::reciprocal:
    case Family::coth2:
      return (rng() % 2 ? 1.0 : -1.0) * (0.05 + 3.0 * u);
    case Family::cot2:
      return 3.14159265358979 * (0.03 + 0.94 * u);
    case Family::eps_continuation: {
      if (param < 0.0) {
        // stay left of the first zero of alpha
        const double period = 3.14159265358979 / std::sqrt(-param);
        return period * (0.03 + 0.42 * u);
      }
      return 0.05 + 3.0 * u;
    }
  }
  return u;
}

}  // namespace

TEST_CASE("pointwise values for the canonical families") {
  // const2 with theta = 2, kappa = 0 at tau = 0
  {
    ProfileParams p{Family::const2, 0.0, 2.0, 0.0};
    const auto e = eval(p, 0.0);
    CHECK(e.alpha == doctest::Approx(2.0));
    CHECK(e.alpha1 == doctest::Approx(0.0));
    CHECK(e.eps == doctest::Approx(1.0));
    CHECK(e.F == doctest::Approx(1.0));
  }
  // reciprocal at tau = 2: psi = tau^3/12
  {
    ProfileParams p{Family::reciprocal, 0.0, 0.7, 0.3};
    const auto e = eval(p, 2.0);
    CHECK(e.alpha == doctest::Approx(1.0));
    CHECK(e.eps == doctest::Approx(0.0));
    CHECK(e.psi == doctest::Approx(2.0 / 3.0));
  }
  // coth at tau = 1: the hyperbolic identity forces eps = 1
  {
    ProfileParams p{Family::coth2};
    const auto e = eval(p, 1.0);
    CHECK(2.0 * e.alpha1 + e.alpha * e.alpha == doctest::Approx(4.0));
    CHECK(e.eps == doctest::Approx(1.0));
  }
}

TEST_CASE("domain and config errors") {
  ProfileParams cot{Family::cot2};
  CHECK_THROWS_AS(eval(cot, 0.0), DomainError);
  CHECK_THROWS_AS(eval(cot, 3.14159265358979), DomainError);
  ProfileParams rec{Family::reciprocal};
  CHECK_THROWS_AS(eval(rec, 1e-12), DomainError);
  ProfileParams bad{Family::const2};
  bad.affine_c = 0.0;
  CHECK_THROWS_AS(eval(bad, 0.0), ConfigError);
  CHECK_THROWS_AS(affine_modify(rec, 0.0, 1.0), ConfigError);
}

TEST_CASE("affine modification") {
  // translation of tanh
  {
    ProfileParams p{Family::tanh2, 0.0, 1.3, -0.4};
    ProfileParams m = affine_modify(p, 1.0, 0.7);
    const auto e = eval(m, 1.5);
    CHECK(e.alpha == doctest::Approx(2.0 * std::tanh(0.8)).epsilon(1e-14));
  }
  // scaling of the constant family
  {
    ProfileParams p{Family::const2};
    ProfileParams m = affine_modify(p, 2.0, 0.0);
    const auto e = eval(m, 0.3);
    CHECK(e.alpha == doctest::Approx(4.0));
    CHECK(e.eps == doctest::Approx(4.0));
  }
  // identity modification
  {
    ProfileParams p{Family::coth2, 0.0, 0.9, 0.2};
    ProfileParams m = affine_modify(p, 1.0, 0.0);
    const auto a = eval(p, 1.2);
    const auto b = eval(m, 1.2);
    CHECK(a.alpha == doctest::Approx(b.alpha).epsilon(1e-15));
    CHECK(a.F == doctest::Approx(b.F).epsilon(1e-15));
    CHECK(a.psi == doctest::Approx(b.psi).epsilon(1e-15));
  }
}

TEST_CASE("affine modification round-trips through its inverse") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cd(0.5, 2.0), pd(-1.0, 1.0);
  for (Family fam : {Family::const2, Family::tanh2, Family::coth2, Family::cot2,
                     Family::reciprocal}) {
    for (int rep = 0; rep < 20; ++rep) {
      ProfileParams p{fam, 0.0, 1.7, 0.6};
      const double c = cd(rng) * (rng() % 2 ? 1.0 : -1.0);
      const double shift = (fam == Family::reciprocal) ? 0.0 : pd(rng);
      ProfileParams fwd = affine_modify(p, c, shift);
      ProfileParams back = affine_modify(fwd, 1.0 / c, -shift * c);
      const double tau = sample_tau(fam, 0.0, rng);
      const auto a = eval(p, tau);
      const auto b = eval(back, tau);
      CHECK(a.alpha == doctest::Approx(b.alpha).epsilon(1e-13));
      CHECK(a.F == doctest::Approx(b.F).epsilon(1e-13));
      CHECK(a.eps == doctest::Approx(b.eps).epsilon(1e-13));
    }
  }
}

TEST_CASE("F transforms as F/c under affine modification") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cd(0.4, 2.5), pd(-0.8, 0.8);
  for (Family fam : {Family::const2, Family::tanh2, Family::coth2, Family::cot2,
                     Family::reciprocal}) {
    for (int rep = 0; rep < 30; ++rep) {
      ProfileParams p{fam, 0.0, -0.9, 1.4};
      const double c = cd(rng);
      const double shift = (fam == Family::reciprocal) ? 0.0 : pd(rng);
      ProfileParams m = affine_modify(p, c, shift);
      const double tau = sample_tau(fam, 0.0, rng);
      const double tau_hat = shift + tau / c;
      const auto base = eval(p, tau);
      const auto hat = eval(m, tau_hat);
      CHECK(hat.alpha == doctest::Approx(c * base.alpha).epsilon(1e-12));
      CHECK(hat.F == doctest::Approx(base.F / c).epsilon(1e-11));
    }
  }
}

TEST_CASE("continuation families") {
  CHECK(continuation_alpha(ContinuationKind::eps_family, 0.0, 3.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(continuation_alpha(ContinuationKind::t_family, 0.0, 5.0) == doctest::Approx(2.0));
  CHECK(continuation_alpha(ContinuationKind::t_family, 1.0, 1.0) ==
        doctest::Approx(2.0 * std::tanh(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(continuation_alpha(ContinuationKind::eps_family, 1.0, 0.0), DomainError);

  // eps = 1 reproduces 2*coth, eps = -1 reproduces 2*cot
  CHECK(continuation_alpha(ContinuationKind::eps_family, 1.0, 0.8) ==
        doctest::Approx(2.0 / std::tanh(0.8)).epsilon(1e-13));
  CHECK(continuation_alpha(ContinuationKind::eps_family, -1.0, 0.8) ==
        doctest::Approx(2.0 / std::tan(0.8)).epsilon(1e-13));
  // continuity across small eps: the spread is O(eps)
  const double a_minus = continuation_alpha(ContinuationKind::eps_family, -1e-9, 1.7);
  const double a_plus = continuation_alpha(ContinuationKind::eps_family, 1e-9, 1.7);
  const double a_zero = continuation_alpha(ContinuationKind::eps_family, 0.0, 1.7);
  CHECK(std::abs(a_minus - a_zero) < 1e-8);
  CHECK(std::abs(a_plus - a_zero) < 1e-8);
}

TEST_CASE("eps is computed, and constant, along continuation families") {
  std::mt19937_64 rng(3);
  for (double epsv : {0.35, -0.6, 0.0}) {
    ProfileParams p{Family::eps_continuation, epsv, 0.8, -0.2};
    double first = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double tau = sample_tau(Family::eps_continuation, epsv, rng);
      const auto e = eval(p, tau);
      const double eps_measured = (2.0 * e.alpha1 + e.alpha * e.alpha) / 4.0;
      if (k == 0) first = eps_measured;
      CHECK(eps_measured == doctest::Approx(first).epsilon(1e-11));
      CHECK(eps_measured == doctest::Approx(epsv).epsilon(1e-11));
    }
  }
}

TEST_CASE("valid intervals") {
  CHECK(valid_intervals(ProfileParams{Family::const2}).size() == 1);
  const auto rec = valid_intervals(ProfileParams{Family::reciprocal});
  REQUIRE(rec.size() == 2);
  CHECK(rec[0].hi == doctest::Approx(0.0));
  CHECK(rec[1].lo == doctest::Approx(0.0));
  const auto cot = valid_intervals(ProfileParams{Family::cot2});
  REQUIRE(cot.size() == 8);
  CHECK(cot[4].lo == doctest::Approx(0.0));
  CHECK(cot[4].hi == doctest::Approx(3.14159265358979).epsilon(1e-12));
  // affine map of intervals
  ProfileParams shifted = affine_modify(ProfileParams{Family::reciprocal}, 2.0, 1.0);
  const auto ivs = valid_intervals(shifted);
  REQUIRE(ivs.size() == 2);
  CHECK(ivs[0].hi == doctest::Approx(1.0));  // pole moved to tau_hat = 1
}

TEST_CASE("identity suite over random samples") {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> th(-2.0, 2.0);
  const Family fams[] = {Family::const2, Family::reciprocal, Family::tanh2, Family::coth2,
                         Family::cot2, Family::eps_continuation, Family::t_continuation};
  for (Family fam : fams) {
    double worst_ode = 0.0, worst_eps = 0.0, worst_f = 0.0;
    for (int k = 0; k < 2000; ++k) {
      ProfileParams p{fam, 0.0, th(rng), th(rng)};
      if (fam == Family::eps_continuation) p.param = th(rng) / 2.0;
      if (fam == Family::t_continuation) p.param = th(rng);
      const double tau = sample_tau(fam, p.param, rng);
      const auto e = eval(p, tau);
      const double ode = std::abs(e.alpha2 + e.alpha * e.alpha1) /
                         (1.0 + std::abs(e.alpha * e.alpha1));
      const double epsr = std::abs(2.0 * e.alpha1 + e.alpha * e.alpha - 4.0 * e.eps) /
                          (1.0 + e.alpha * e.alpha);
      const double fr = std::abs(e.F2 + e.F * e.alpha1) /
                        (1.0 + std::abs(e.F) * (1.0 + std::abs(e.alpha1)));
      worst_ode = std::max(worst_ode, ode);
      worst_eps = std::max(worst_eps, epsr);
      worst_f = std::max(worst_f, fr);
    }
    CHECK(worst_ode <= 1e-12);
    CHECK(worst_eps <= 1e-12);
    CHECK(worst_f <= 1e-10);
  }
}

TEST_CASE("psi derivative matches 1/alpha^2 at second order") {
  ProfileParams p{Family::coth2, 0.0, 1.1, 0.4};
  auto err_at = [&](double h) {
    double worst = 0.0;
    for (double tau : {0.8, 1.3, 2.1}) {
      const double lhs = (eval(p, tau + h).psi - eval(p, tau - h).psi) / (2.0 * h);
      const auto e = eval(p, tau);
      worst = std::max(worst, std::abs(lhs - 1.0 / (e.alpha * e.alpha)));
    }
    return worst;
  };
  const double e1 = err_at(1e-2), e2 = err_at(5e-3), e3 = err_at(2.5e-3);
  CHECK(srh::richardson_order(e1, e2) > 1.9);
  CHECK(srh::richardson_order(e2, e3) > 1.9);
}

TEST_CASE("alpha and F series match pointwise derivatives") {
  for (Family fam : {Family::tanh2, Family::coth2, Family::cot2}) {
    ProfileParams p{fam, 0.0, 0.7, -0.3};
    const double tau = fam == Family::tanh2 ? 0.4 : 1.1;
    const auto e = eval(p, tau);
    const Taylor1 a = alpha_series(p, tau, 6);
    CHECK(a[0] == doctest::Approx(e.alpha).epsilon(1e-14));
    CHECK(a[1] == doctest::Approx(e.alpha1).epsilon(1e-13));
    CHECK(2.0 * a[2] == doctest::Approx(e.alpha2).epsilon(1e-12));
    const Taylor1 f = f_series(p, tau, 6);
    CHECK(f[0] == doctest::Approx(e.F).epsilon(1e-14));
    CHECK(f[1] == doctest::Approx(e.F1).epsilon(1e-13));
    CHECK(2.0 * f[2] == doctest::Approx(e.F2).epsilon(1e-12));
  }
}
