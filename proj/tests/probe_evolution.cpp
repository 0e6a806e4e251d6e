// Scratch probe for solver behavior; not part of the test suite.
#include <cstdio>
#include <cstdlib>

#include "srh/evolution.hpp"

using namespace srh;
using namespace srh::evolution;

static void run_case(const char* name, profiles::ProfileParams prof, double tau0, double tau1,
                     double lam1, const char* qe, const char* se, double b0, double g0,
                     int degree) {
  SeedFn q_fn = SeedFn::from_expression(qe);
  SeedFn s_fn = SeedFn::from_expression(se);
  std::printf("--- %s (deg %d) ---\n", name, degree);
  for (int n : {65, 129, 257}) {
    Grid1D lam{0.0, lam1, n};
    Slice init;
    try {
      init = generate_initial_data(prof, tau0, lam, q_fn, s_fn, b0, g0);
    } catch (const std::exception& e) {
      std::printf("n=%3d init failed: %s\n", n, e.what());
      continue;
    }
    EvolveOptions opts;
    opts.filter.poly_degree = degree;
    const int steps = static_cast<int>(std::ceil((tau1 - tau0) / (opts.dt_ratio * lam.h())));
    GridField f = evolve(prof, init, tau1, steps, opts);
    const auto& d = f.diagnostics.back();
    std::printf("n=%3d steps=%3d trunc=%d(%s) c1=%.3e c2=%.3e min_q=%.3f min_pi=%.3f min|q_l|=%.3e",
                n, steps, f.truncated, f.truncation_reason.c_str(), d.c1, d.c2, d.min_q, d.min_pi,
                d.min_abs_qlam);
    if (!f.truncated) std::printf(" jetres=%.3e", jet_consistency_residual(f));
    std::printf("\n");
  }
}

int main(int argc, char** argv) {
  const int degree = argc < 2 ? 20 : std::atoi(argv[1]);
  run_case("cot lam[0,1] b0=1.4 g0=3", {profiles::Family::cot2, 0, 2.0, 0.0}, 1.0, 1.4, 1.0,
           "1 + lambda/2", "0.3*sin(lambda)", 1.4, 3.0, degree);
  run_case("cot lam[0,1] b0=1.4 g0=2.6 th=1.4", {profiles::Family::cot2, 0, 1.4, 0.0}, 1.0, 1.4,
           1.0, "1 + lambda/2", "0.3*sin(lambda)", 1.4, 2.6, degree);
  return 0;
}