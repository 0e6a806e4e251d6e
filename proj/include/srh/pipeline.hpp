#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "srh/evolution.hpp"
#include "srh/geometry.hpp"
#include "srh/series.hpp"

namespace srh::pipeline {

struct RunConfig {
  profiles::ProfileParams profile;
  double tau0 = 0.0, tau1 = 0.5;
  double lam0 = 0.0, lam1 = 2.0;
  int n_lam = 129;
  std::optional<int> n_tau;  // overrides the dt_ratio-derived step count
  SeedFn q_fn, s_fn;
  double b0 = 1.0, g0 = 0.0;
  int resample_n = 129;
  int series_order = 0;           // 0 disables the series cross-check
  std::vector<int> convergence_levels;  // empty disables the study
  double loop_tol = 1e-4;         // hard gate on closedness residuals
  evolution::EvolveOptions evolve;
  std::string output_dir;
};

RunConfig config_from_json(const nlohmann::json& j);  // throws ConfigError
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& config);

struct SeriesCheck {
  double radius = 0.1;
  double max_diff = 0.0;
  double tolerance = 0.0;  // 0.1 r^order + 5 h^4
  int points = 0;
  bool pass = false;
};

struct PipelineResult {
  evolution::GridField field;
  geometry::ChartData chart;
  geometry::GeometryReport report;
  std::optional<SeriesCheck> series;
  std::optional<evolution::ConvergenceStudy> convergence;
  bool hard_gates_pass = false;
  std::string gate_failure;
};

// generate -> evolve -> reconstruct -> resample -> verify (+ optional series
// and convergence passes); writes artifacts when output_dir is nonempty.
// Module failures propagate as srh::Error; a truncated march is reported via
// hard_gates_pass with whatever artifacts exist flushed first.
PipelineResult run_pipeline(const RunConfig& config);

// Series cross-check against an already-solved field: expands about the
// middle of the initial slice and compares on the grid points inside the
// given radius.
SeriesCheck series_cross_check(const RunConfig& config, const evolution::GridField& field,
                               int order, double radius);

evolution::StudyConfig study_config_from(const RunConfig& config);

}  // namespace srh::pipeline
