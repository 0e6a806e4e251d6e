#include <cmath>
#include <random>

#include "doctest.h"
#include "srh/core/errors.hpp"
#include "srh/core/stencils.hpp"
#include "srh/jets.hpp"
#include "srh/series.hpp"

using namespace srh;
using namespace srh::series;
using jets::Jet1;
using jets::StateZ;
using profiles::Family;
using profiles::ProfileParams;

namespace {

StateZ random_admissible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> qd(0.3, 4.0), pid(0.1, 4.0), sd(-1.5, 1.5),
      gd(-2.0, 2.0);
  StateZ z;
  z.q = qd(rng);
  z.s = sd(rng);
  z.b = (pid(rng) + z.s * z.s) / z.q;
  z.g = gd(rng);
  return z;
}

double jet_gap(const Jet1& a, const Jet1& b) {
  return std::max({std::abs(a.q_tau - b.q_tau), std::abs(a.s_tau - b.s_tau),
                   std::abs(a.b_tau - b.b_tau), std::abs(a.g_tau - b.g_tau),
                   std::abs(a.q_lam - b.q_lam), std::abs(a.s_lam - b.s_lam),
                   std::abs(a.b_lam - b.b_lam), std::abs(a.g_lam - b.g_lam)});
}

}  // namespace

TEST_CASE("degree-1 truncation equals solve_jet for random seeds") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> qd(-2.0, 2.0), td(0.6, 1.4);
  const ProfileParams profs[] = {{Family::const2, 0.0, 0.7, 0.2},
                                 {Family::coth2, 0.0, 1.2, -0.4},
                                 {Family::tanh2, 0.0, -0.8, 0.5}};
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const ProfileParams& prof = profs[k % 3];
    const double tau = td(rng);
    const StateZ z = random_admissible(rng);
    const double qt = qd(rng), ql = qd(rng);
    const TaylorZ t = taylor_extend(z, prof, tau, 0.0, qt, ql, std::nullopt, 6);
    const Jet1 direct = jets::solve_jet(z, profiles::eval(prof, tau), qt, ql);
    worst = std::max(worst, jet_gap(first_jet(t), direct));
    // seed value reproduced at the center
    const StateZ center = eval_taylor(t, tau, 0.0);
    CHECK(center.q == doctest::Approx(z.q).epsilon(1e-14));
    CHECK(center.b == doctest::Approx(z.b).epsilon(1e-14));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("soliton degree-1 coefficients") {
  const ProfileParams prof{Family::const2, 0.0, 0.0, 0.0};
  const StateZ z{1.0, 0.0, 1.0, 0.0};
  const TaylorZ t = taylor_extend(z, prof, 0.0, 0.0, 0.0, 1.0, std::nullopt, 4);
  CHECK(t.q.at(1, 0) == doctest::Approx(0.0));
  CHECK(t.q.at(0, 1) == doctest::Approx(1.0));
  CHECK(t.s.at(1, 0) == doctest::Approx(1.0));
  CHECK(t.s.at(0, 1) == doctest::Approx(2.0));
  CHECK(t.b.at(1, 0) == doctest::Approx(2.0));
  CHECK(t.b.at(0, 1) == doctest::Approx(-1.0));
  CHECK(t.g.at(1, 0) == doctest::Approx(0.0));
  CHECK(t.g.at(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("degree-1 series evaluates to z + h * jet") {
  const ProfileParams prof{Family::const2, 0.0, 0.0, 0.0};
  const StateZ z{1.0, 0.0, 1.0, 0.0};
  const TaylorZ t = taylor_extend(z, prof, 0.0, 0.0, 0.0, 1.0, std::nullopt, 1);
  const double h = 0.125;
  const StateZ v = eval_taylor(t, h, 0.0);
  CHECK(v.q == doctest::Approx(z.q + h * 0.0));
  CHECK(v.s == doctest::Approx(z.s + h * 1.0));
  CHECK(v.b == doctest::Approx(z.b + h * 2.0));
  CHECK(v.g == doctest::Approx(z.g));
}

TEST_CASE("residual and consequence coefficients vanish through degree N-1") {
  std::mt19937_64 rng(23);
  const ProfileParams profs[] = {{Family::const2, 0.0, 0.9, 0.1},
                                 {Family::coth2, 0.0, 1.4, -0.2},
                                 {Family::cot2, 0.0, 0.8, 0.3},
                                 {Family::reciprocal, 0.0, 0.5, 0.7}};
  for (const auto& prof : profs) {
    const double tau = prof.family == Family::cot2 ? 1.2 : 1.0;
    for (int rep = 0; rep < 5; ++rep) {
      const StateZ z = random_admissible(rng);
      const int N = 7;
      const TaylorZ t = taylor_extend(z, prof, tau, 0.0, 0.4, 1.1, std::nullopt, N);
      double scale = 1.0;
      for (const Poly2* p : {&t.q, &t.s, &t.b, &t.g}) {
        scale = std::max(scale, p->max_abs_coeff());
      }
      for (const Poly2& r : residual_series(t, prof)) {
        CHECK(r.max_abs_coeff(N - 1) <= 1e-11 * scale);
      }
      for (const Poly2& r : consequence_series(t, prof)) {
        CHECK(r.max_abs_coeff(N - 1) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("alpha series recursion matches exponential/trig Taylor arithmetic") {
  // Independent route: expand 2tanh, 2coth, 2cot at the center with truncated
  // exp/sin/cos series arithmetic and compare all coefficients through
  // order 8.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> cd(0.5, 1.2);
  const int ord = 8;
  for (int k = 0; k < 20; ++k) {
    const double c = cd(rng);
    const Taylor1 x = Taylor1::variable(c, ord);
    const Taylor1 one = Taylor1::constant(1.0, ord);

    // 2 tanh = 2 (e^{2x}-1)/(e^{2x}+1)
    {
      const Taylor1 e2 = exp(2.0 * x);
      const Taylor1 ref = 2.0 * ((e2 - one) / (e2 + one));
      const Taylor1 mine = profiles::alpha_series({Family::tanh2}, c, ord);
      for (int i = 0; i <= ord; ++i) {
        CHECK(mine[i] == doctest::Approx(ref[i]).epsilon(1e-11));
      }
    }
    // 2 coth = 2 (e^{2x}+1)/(e^{2x}-1)
    {
      const Taylor1 e2 = exp(2.0 * x);
      const Taylor1 ref = 2.0 * ((e2 + one) / (e2 - one));
      const Taylor1 mine = profiles::alpha_series({Family::coth2}, c, ord);
      for (int i = 0; i <= ord; ++i) {
        CHECK(mine[i] == doctest::Approx(ref[i]).epsilon(1e-11));
      }
    }
    // 2 cot = 2 cos/sin
    {
      const Taylor1 ref = 2.0 * (cos(x) / sin(x));
      const Taylor1 mine = profiles::alpha_series({Family::cot2}, c, ord);
      for (int i = 0; i <= ord; ++i) {
        CHECK(mine[i] == doctest::Approx(ref[i]).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("pointwise residual of the truncated series decays like r^N") {
  const ProfileParams prof{Family::const2, 0.0, 0.4, 0.1};
  const StateZ z{1.3, 0.2, 1.1, 0.3};
  const int N = 8;
  const TaylorZ t = taylor_extend(z, prof, 0.0, 0.0, 0.3, 0.9, std::nullopt, N);
  const auto pe0 = profiles::eval(prof, 0.0);
  (void)pe0;

  const Poly2 qt = t.q.dtau(), ql = t.q.dlam();
  const Poly2 st = t.s.dtau(), sl = t.s.dlam();
  const Poly2 bt = t.b.dtau(), bl = t.b.dlam();
  const Poly2 gt = t.g.dtau(), gl = t.g.dlam();

  auto residual_on_circle = [&](double r) {
    double worst = 0.0;
    for (int k = 0; k < 24; ++k) {
      const double ang = 2.0 * 3.14159265358979 * k / 24;
      const double dt = r * std::cos(ang), dl = r * std::sin(ang);
      StateZ v{t.q.eval(dt, dl), t.s.eval(dt, dl), t.b.eval(dt, dl), t.g.eval(dt, dl)};
      Jet1 jet{qt.eval(dt, dl), st.eval(dt, dl), bt.eval(dt, dl), gt.eval(dt, dl),
               ql.eval(dt, dl), sl.eval(dt, dl), bl.eval(dt, dl), gl.eval(dt, dl)};
      const auto res = jets::residual_system(v, jet, profiles::eval(prof, t.tau_c + dt));
      for (double rr : res) worst = std::max(worst, std::abs(rr));
    }
    return worst;
  };
  const double e1 = residual_on_circle(0.4), e2 = residual_on_circle(0.2);
  CHECK(richardson_order(e1, e2) >= N - 0.5);
}

TEST_CASE("seed series mode reproduces prescribed slice expansions") {
  const ProfileParams prof{Family::coth2, 0.0, 1.1, 0.2};
  const StateZ z{1.5, 0.3, 0.9, 0.4};
  const int N = 6;
  // seed series: Q = 1.5 + 0.7 dl - 0.2 dl^2, S = 0.3 + 0.1 dl + 0.05 dl^3
  Taylor1 qs(N), ss(N);
  qs[0] = 1.5;
  qs[1] = 0.7;
  qs[2] = -0.2;
  ss[0] = 0.3;
  ss[1] = 0.1;
  ss[3] = 0.05;
  const TaylorZ t = taylor_extend(z, prof, 1.0, 0.5, 0.0, 0.0, SeedSeries{qs, ss}, N);
  CHECK(t.q.at(0, 1) == doctest::Approx(0.7));
  CHECK(t.q.at(0, 2) == doctest::Approx(-0.2));
  CHECK(t.s.at(0, 3) == doctest::Approx(0.05));
  // slice data forces the full first jet through the marching equations
  const auto pe = profiles::eval(prof, 1.0);
  const double expected_q_tau = z.q * pe.alpha + pe.F - ss[1];
  CHECK(t.q.at(1, 0) == doctest::Approx(expected_q_tau).epsilon(1e-13));
  // mismatched constant term is rejected
  Taylor1 bad = qs;
  bad[0] = 2.0;
  CHECK_THROWS_AS(taylor_extend(z, prof, 1.0, 0.5, 0.0, 0.0, SeedSeries{bad, ss}, N),
                  ConfigError);
}

TEST_CASE("order and admissibility guards, trust radius") {
  const ProfileParams prof{Family::coth2, 0.0, 0.0, 0.0};
  const StateZ z{1.0, 0.0, 1.0, 0.0};
  CHECK_THROWS_AS(taylor_extend(z, prof, 1.0, 0.0, 0.0, 1.0, std::nullopt, 13), OrderError);
  CHECK_THROWS_AS(taylor_extend(StateZ{-1.0, 0.0, 1.0, 0.0}, prof, 1.0, 0.0, 0.0, 1.0,
                                std::nullopt, 6),
                  AdmissibilityError);
  const TaylorZ t = taylor_extend(z, prof, 1.0, 0.0, 0.0, 1.0, std::nullopt, 6);
  // trust radius = 0.25 * distance to the pole at tau = 0
  CHECK(t.trust_radius == doctest::Approx(0.25));
  CHECK_THROWS_AS(eval_taylor(t, 1.3, 0.0), RadiusError);
  CHECK_NOTHROW(eval_taylor(t, 1.2, 0.1));
}
