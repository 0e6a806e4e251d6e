#include <cmath>
#include <vector>

#include "doctest.h"
#include "srh/core/errors.hpp"
#include "srh/core/poly2.hpp"
#include "srh/core/stencils.hpp"
#include "srh/core/taylor1.hpp"
#include "srh/expr.hpp"

using namespace srh;

TEST_CASE("fornberg weights reproduce the classic central stencil") {
  const double nodes[5] = {-2, -1, 0, 1, 2};
  auto w = fornberg_weights(0.0, std::span<const double>(nodes, 5), 2);
  // first derivative: (1, -8, 0, 8, -1)/12
  CHECK(w[1][0] == doctest::Approx(1.0 / 12.0));
  CHECK(w[1][1] == doctest::Approx(-8.0 / 12.0));
  CHECK(w[1][3] == doctest::Approx(8.0 / 12.0));
  // second derivative: (-1, 16, -30, 16, -1)/12
  CHECK(w[2][2] == doctest::Approx(-30.0 / 12.0));
}

TEST_CASE("derivative4 is fourth order on a smooth function") {
  auto run = [](int n) {
    const double h = 1.0 / (n - 1);
    std::vector<double> f(n), d(n);
    for (int i = 0; i < n; ++i) f[i] = std::sin(3.0 * i * h);
    derivative4(f, h, d);
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(d[i] - 3.0 * std::cos(3.0 * i * h)));
    return err;
  };
  const double e1 = run(65), e2 = run(129);
  CHECK(richardson_order(e1, e2) > 3.5);
}

TEST_CASE("cumulative integral is fourth order") {
  auto run = [](int n) {
    const double h = 1.0 / (n - 1);
    std::vector<double> f(n), acc(n);
    for (int i = 0; i < n; ++i) f[i] = std::exp(2.0 * i * h);
    cumulative_integral4(f, h, acc);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      err = std::max(err, std::abs(acc[i] - 0.5 * (std::exp(2.0 * i * h) - 1.0)));
    }
    return err;
  };
  const double e1 = run(65), e2 = run(129);
  CHECK(richardson_order(e1, e2) > 3.5);
}

TEST_CASE("taylor arithmetic matches closed forms") {
  const int n = 10;
  Taylor1 x = Taylor1::variable(0.3, n);
  Taylor1 f = sin(x) * exp(x) / (Taylor1::constant(1.0, n) + x * x);
  const double h = 0.05;
  const double expect = std::sin(0.35) * std::exp(0.35) / (1.0 + 0.35 * 0.35);
  CHECK(f.eval(h) == doctest::Approx(expect).epsilon(1e-12));

  Taylor1 d = f.derivative();
  const double fd = (f.eval(1e-6) - f.eval(-1e-6)) / 2e-6;
  CHECK(d.eval(0.0) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("poly2 product and derivatives") {
  Poly2 p(4), q(4);
  p.at(0, 0) = 1.0;
  p.at(1, 0) = 2.0;
  p.at(0, 1) = -1.0;
  q.at(0, 0) = 3.0;
  q.at(1, 1) = 0.5;
  Poly2 r = p * q;
  CHECK(r.at(0, 0) == doctest::Approx(3.0));
  CHECK(r.at(1, 1) == doctest::Approx(0.5 - 3.0 * 0.0 + 0.0));
  CHECK(r.at(2, 1) == doctest::Approx(2.0 * 0.5));
  CHECK(r.eval(0.1, 0.2) == doctest::Approx(p.eval(0.1, 0.2) * q.eval(0.1, 0.2)).epsilon(1e-12));
  CHECK(p.dtau().at(0, 0) == doctest::Approx(2.0));
  CHECK(p.dlam().at(0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("expression parser: values, derivatives, taylor") {
  Expr e = Expr::parse("1 + lambda/2 - 0.3*sin(2*lambda) + exp(-lambda)*cos(lambda)");
  auto ref = [](double x) {
    return 1.0 + x / 2.0 - 0.3 * std::sin(2.0 * x) + std::exp(-x) * std::cos(x);
  };
  CHECK(e(0.7) == doctest::Approx(ref(0.7)).epsilon(1e-14));
  const double fd = (ref(0.7 + 1e-6) - ref(0.7 - 1e-6)) / 2e-6;
  CHECK(e.deriv(0.7) == doctest::Approx(fd).epsilon(1e-8));
  Taylor1 t = e.taylor(0.7, 8);
  CHECK(t.eval(0.1) == doctest::Approx(ref(0.8)).epsilon(1e-9));

  CHECK_THROWS_AS(Expr::parse("1 + bogus(lambda)"), srh::ConfigError);
  CHECK_THROWS_AS(Expr::parse("1 +"), srh::ConfigError);
}
