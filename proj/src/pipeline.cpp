#include "srh/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "srh/core/errors.hpp"
#include "srh/io.hpp"

namespace srh::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

RunConfig config_from_json(const json& j) {
  RunConfig c;
  if (!j.contains("profile")) throw ConfigError("config: missing \"profile\"");
  c.profile = io::profile_from_json(j["profile"]);

  const json grid = j.value("grid", json::object());
  c.tau0 = grid.value("tau0", 0.0);
  c.tau1 = grid.value("tau1", 0.5);
  c.lam0 = grid.value("lam0", 0.0);
  c.lam1 = grid.value("lam1", 2.0);
  c.n_lam = grid.value("n_lam", 129);
  if (grid.contains("n_tau")) c.n_tau = grid["n_tau"].get<int>();
  if (c.n_lam < 33) throw ConfigError("config: n_lam must be at least 33");
  if (!(c.lam1 > c.lam0)) throw ConfigError("config: lambda range is empty");

  const json seeds = j.value("seeds", json::object());
  c.q_fn = SeedFn::from_expression(seeds.value("q_fn", "1 + lambda/2"));
  c.s_fn = SeedFn::from_expression(seeds.value("s_fn", "0.3*sin(lambda)"));
  c.b0 = seeds.value("b0", 1.0);
  c.g0 = seeds.value("g0", 0.0);

  const json checks = j.value("checks", json::object());
  c.resample_n = checks.value("resample_n", 129);
  c.series_order = checks.value("series_order", 0);
  if (checks.contains("convergence_levels")) {
    for (const auto& v : checks["convergence_levels"]) c.convergence_levels.push_back(v.get<int>());
  }
  c.loop_tol = checks.value("loop_tol", 1e-4);

  const json ev = j.value("evolve", json::object());
  c.evolve.dt_ratio = ev.value("dt_ratio", 0.4);
  if (ev.contains("filter")) {
    const json& f = ev["filter"];
    c.evolve.filter.enabled = f.value("enabled", true);
    c.evolve.filter.cutoff = f.value("cutoff", 40.0);
    c.evolve.filter.taper = f.value("taper", 14.0);
  }
  c.output_dir = j.value("output_dir", "");

  // The tau range must stay inside one pole-free interval.
  bool inside = false;
  for (const auto& iv : profiles::valid_intervals(c.profile)) {
    if (iv.contains(c.tau0) && iv.contains(c.tau1)) inside = true;
  }
  if (!inside) throw DomainError("config: tau range crosses or leaves the profile domain");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
  json j;
  j["profile"] = io::profile_to_json(c.profile);
  j["grid"] = {{"tau0", c.tau0}, {"tau1", c.tau1}, {"lam0", c.lam0},
               {"lam1", c.lam1}, {"n_lam", c.n_lam}};
  if (c.n_tau) j["grid"]["n_tau"] = *c.n_tau;
  j["seeds"] = {{"q_fn", c.q_fn.expr.text()}, {"s_fn", c.s_fn.expr.text()},
                {"b0", c.b0}, {"g0", c.g0}};
  j["checks"] = {{"resample_n", c.resample_n},
                 {"series_order", c.series_order},
                 {"convergence_levels", c.convergence_levels},
                 {"loop_tol", c.loop_tol}};
  j["evolve"] = {{"dt_ratio", c.evolve.dt_ratio},
                 {"filter",
                  {{"enabled", c.evolve.filter.enabled},
                   {"cutoff", c.evolve.filter.cutoff},
                   {"taper", c.evolve.filter.taper}}}};
  j["output_dir"] = c.output_dir;
  return j;
}

evolution::StudyConfig study_config_from(const RunConfig& c) {
  evolution::StudyConfig sc;
  sc.profile = c.profile;
  sc.tau0 = c.tau0;
  sc.tau1 = c.tau1;
  sc.lam0 = c.lam0;
  sc.lam1 = c.lam1;
  sc.q_fn = c.q_fn;
  sc.s_fn = c.s_fn;
  sc.b0 = c.b0;
  sc.g0 = c.g0;
  sc.levels = c.convergence_levels.empty() ? std::vector<int>{65, 129, 257} : c.convergence_levels;
  sc.evolve = c.evolve;
  return sc;
}

SeriesCheck series_cross_check(const RunConfig& config, const evolution::GridField& field,
                               int order, double radius) {
  SeriesCheck check;
  check.radius = radius;

  const Grid1D lam = field.lam;
  const int jc = lam.n / 2;
  const double lam_c = lam.point(jc);
  const double tau_c = field.slices.front().tau;

  const evolution::Slice& init = field.slices.front();
  jets::StateZ z{config.q_fn(lam_c), config.s_fn(lam_c), init.b[jc], init.g[jc]};
  series::SeedSeries seed{config.q_fn.taylor(lam_c, order), config.s_fn.taylor(lam_c, order)};
  const series::TaylorZ tz =
      series::taylor_extend(z, config.profile, tau_c, lam_c, 0.0, 0.0, seed, order);

  const double h = lam.h();
  const double dtau = field.dtau();
  check.tolerance = 0.1 * std::pow(radius, order) + 5.0 * std::pow(h, 4);

  for (size_t i = 0; i < field.slices.size(); ++i) {
    const evolution::Slice& sl = field.slices[i];
    const double dt = sl.tau - tau_c;
    if (std::abs(dt) > radius) continue;
    for (int j = 0; j < lam.n; ++j) {
      const double dl = lam.point(j) - lam_c;
      if (dt * dt + dl * dl > radius * radius) continue;
      const jets::StateZ sz = series::eval_taylor(tz, sl.tau, lam.point(j));
      const double diff = std::max({std::abs(sz.q - sl.q[j]), std::abs(sz.s - sl.s[j]),
                                    std::abs(sz.b - sl.b[j]), std::abs(sz.g - sl.g[j])});
      check.max_diff = std::max(check.max_diff, diff);
      ++check.points;
    }
  }
  (void)dtau;
  check.pass = check.points > 0 && check.max_diff <= check.tolerance;
  return check;
}

PipelineResult run_pipeline(const RunConfig& config) {
  PipelineResult result;

  Grid1D lam{config.lam0, config.lam1, config.n_lam};
  evolution::Slice init = evolution::generate_initial_data(
      config.profile, config.tau0, lam, config.q_fn, config.s_fn, config.b0, config.g0);

  int steps;
  if (config.n_tau) {
    steps = std::max(1, *config.n_tau - 1);
  } else {
    steps = std::max(
        1, static_cast<int>(std::ceil((config.tau1 - config.tau0) /
                                      (config.evolve.dt_ratio * lam.h()))));
  }
  result.field = evolution::evolve(config.profile, init, config.tau1, steps, config.evolve);

  const bool write = !config.output_dir.empty();
  if (write) io::save_grid_field(config.output_dir, result.field);

  if (result.field.truncated) {
    result.hard_gates_pass = false;
    result.gate_failure = "march truncated: " + result.field.truncation_reason;
    return result;
  }

  result.chart = geometry::reconstruct_coords(result.field);
  geometry::reconstruct_potential(result.chart);
  geometry::build_resample(result.chart, config.resample_n);
  result.report = geometry::verify_ricci_hessian(result.chart, config.profile);

  if (config.series_order > 0) {
    result.series = series_cross_check(config, result.field, config.series_order, 0.1);
  }
  if (!config.convergence_levels.empty()) {
    result.convergence = evolution::convergence_study(study_config_from(config));
  }

  // Hard gates: positivity, nondegeneracy, closedness, finiteness.
  result.hard_gates_pass = true;
  auto fail = [&](const std::string& why) {
    result.hard_gates_pass = false;
    if (result.gate_failure.empty()) result.gate_failure = why;
  };
  if (!(result.report.min_q > 0.0)) fail("min Q <= 0");
  if (!(result.report.min_pi > 0.0)) fail("min Pi <= 0");
  if (!(result.report.min_abs_qlam > 0.0)) fail("Q_lambda vanishes");
  if (!result.report.finite_ok) fail("non-finite verification fields");
  const double loop_worst =
      std::max({result.report.loop_dx, result.report.loop_du, result.report.loop_dphi});
  if (loop_worst > config.loop_tol) fail("closedness residual above loop_tol");

  if (write) {
    const fs::path dir(config.output_dir);
    io::save_chart_csv(dir, result.chart);
    json rep = io::report_to_json(result.report);
    rep["hard_gates_pass"] = result.hard_gates_pass;
    if (!result.gate_failure.empty()) rep["gate_failure"] = result.gate_failure;
    rep["constraint"] = {{"c1", result.field.diagnostics.back().c1},
                         {"c2", result.field.diagnostics.back().c2}};
    if (result.series) {
      rep["series_check"] = {{"max_diff", result.series->max_diff},
                             {"tolerance", result.series->tolerance},
                             {"points", result.series->points},
                             {"pass", result.series->pass}};
    }
    if (result.convergence) {
      json rows = json::array();
      for (const auto& r : result.convergence->rows) {
        rows.push_back({{"n_lam", r.n_lam}, {"c1", r.c1}, {"c2", r.c2},
                        {"solution_diff", r.solution_diff}});
      }
      rep["convergence"] = {{"rows", rows},
                            {"c1_orders", result.convergence->c1_orders},
                            {"c2_orders", result.convergence->c2_orders},
                            {"solution_orders", result.convergence->solution_orders},
                            {"reliable", result.convergence->reliable}};
    }
    std::ofstream out(dir / "report.json");
    out << rep.dump(2) << '\n';
  }
  return result;
}

}  // namespace srh::pipeline
