#include "srh/io.hpp"

#include <cstdio>
#include <fstream>

#include "srh/core/errors.hpp"

namespace srh::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json profile_to_json(const profiles::ProfileParams& p) {
  json j;
  j["family"] = profiles::family_name(p.family);
  j["param"] = p.param;
  j["theta"] = p.theta;
  j["kappa"] = p.kappa;
  j["affine"] = {{"c", p.affine_c}, {"p", p.affine_p}};
  return j;
}

profiles::ProfileParams profile_from_json(const json& j) {
  profiles::ProfileParams p;
  if (!j.contains("family")) throw ConfigError("profile: missing \"family\"");
  p.family = profiles::family_from_name(j.at("family").get<std::string>());
  p.param = j.value("param", 0.0);
  p.theta = j.value("theta", 0.0);
  p.kappa = j.value("kappa", 0.0);
  if (j.contains("affine")) {
    p.affine_c = j["affine"].value("c", 1.0);
    p.affine_p = j["affine"].value("p", 0.0);
  }
  if (p.affine_c == 0.0) throw ConfigError("profile: affine c must be nonzero");
  return p;
}

json report_to_json(const geometry::GeometryReport& rep) {
  json j;
  j["rh_residual"] = {{"max", rep.rh_max},
                      {"components", {rep.rh_components[0], rep.rh_components[1],
                                      rep.rh_components[2]}}};
  j["theta"] = {{"mean", rep.theta_mean}, {"max_deviation", rep.theta_dev}};
  j["kappa"] = {{"mean", rep.kappa_mean}, {"max_deviation", rep.kappa_dev}};
  j["sigma_check_max"] = rep.sigma_check_max;
  j["mixed_partial_max"] = rep.mixed_partial_max;
  j["trace_identity_max"] = rep.trace_identity_max;
  j["positivity"] = {{"min_q", rep.min_q}, {"min_pi", rep.min_pi}};
  j["nondegeneracy"] = {{"min_abs_q_lambda", rep.min_abs_qlam},
                        {"hessian_min", rep.hess_min},
                        {"hessian_zero_fraction", rep.hess_zero_fraction}};
  j["closedness"] = {{"dx", rep.loop_dx}, {"du", rep.loop_du}, {"dphi", rep.loop_dphi}};
  j["rectangle"] = {{"x0", rep.rect.x0}, {"x1", rep.rect.x1}, {"u0", rep.rect.u0},
                    {"u1", rep.rect.u1}, {"n", rep.resample_n}};
  j["finite_ok"] = rep.finite_ok;
  return j;
}

namespace {

void write_field_csv(const fs::path& path, const evolution::GridField& field,
                     double (*pick)(const evolution::Slice&, int)) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << "tau,lambda,value\n";
  for (const auto& sl : field.slices) {
    for (int j = 0; j < sl.size(); ++j) {
      out << format_double(sl.tau) << ',' << format_double(sl.lam.point(j)) << ','
          << format_double(pick(sl, j)) << '\n';
    }
  }
}

}  // namespace

void save_grid_field(const fs::path& dir, const evolution::GridField& field) {
  fs::create_directories(dir / "fields");
  write_field_csv(dir / "fields" / "Q.csv", field,
                  [](const evolution::Slice& s, int j) { return s.q[j]; });
  write_field_csv(dir / "fields" / "S.csv", field,
                  [](const evolution::Slice& s, int j) { return s.s[j]; });
  write_field_csv(dir / "fields" / "B.csv", field,
                  [](const evolution::Slice& s, int j) { return s.b[j]; });
  write_field_csv(dir / "fields" / "G.csv", field,
                  [](const evolution::Slice& s, int j) { return s.g[j]; });
  write_field_csv(dir / "fields" / "Pi.csv", field,
                  [](const evolution::Slice& s, int j) { return s.state_at(j).pi(); });

  json manifest;
  manifest["schema_version"] = 1;
  manifest["profile"] = profile_to_json(field.profile);
  manifest["grid"] = {{"lam0", field.lam.a},
                      {"lam1", field.lam.b},
                      {"n_lam", field.lam.n},
                      {"tau0", field.slices.front().tau},
                      {"tau1", field.slices.back().tau},
                      {"n_tau", field.slices.size()}};
  manifest["truncated"] = field.truncated;
  manifest["truncation_reason"] = field.truncation_reason;
  json hist = json::array();
  for (size_t i = 0; i < field.slices.size(); ++i) {
    const auto& d = field.diagnostics[i];
    hist.push_back({{"tau", field.slices[i].tau},
                    {"c1", d.c1},
                    {"c2", d.c2},
                    {"min_q", d.min_q},
                    {"min_pi", d.min_pi},
                    {"min_abs_q_lambda", d.min_abs_qlam}});
  }
  manifest["constraint_history"] = hist;
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

evolution::GridField load_grid_field(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw ConfigError("cannot read " + (dir / "manifest.json").string());
  json manifest = json::parse(in);

  evolution::GridField field;
  field.profile = profile_from_json(manifest.at("profile"));
  const auto& g = manifest.at("grid");
  field.lam = {g.at("lam0").get<double>(), g.at("lam1").get<double>(), g.at("n_lam").get<int>()};
  field.truncated = manifest.value("truncated", false);
  field.truncation_reason = manifest.value("truncation_reason", "");
  const int nt = g.at("n_tau").get<int>();
  const double tau0 = g.at("tau0").get<double>();
  const double tau1 = g.at("tau1").get<double>();
  const double dtau = nt > 1 ? (tau1 - tau0) / (nt - 1) : 0.0;

  field.slices.assign(nt, {});
  for (int i = 0; i < nt; ++i) {
    auto& sl = field.slices[i];
    sl.tau = tau0 + i * dtau;
    sl.lam = field.lam;
    sl.q.assign(field.lam.n, 0.0);
    sl.s.assign(field.lam.n, 0.0);
    sl.b.assign(field.lam.n, 0.0);
    sl.g.assign(field.lam.n, 0.0);
  }

  auto read_field = [&](const std::string& name, auto setter) {
    std::ifstream f(dir / "fields" / (name + ".csv"));
    if (!f) throw ConfigError("missing field CSV: " + name);
    std::string line;
    std::getline(f, line);  // header
    size_t idx = 0;
    while (std::getline(f, line)) {
      const size_t c1 = line.find(',');
      const size_t c2 = line.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) continue;
      const double v = std::stod(line.substr(c2 + 1));
      const int i = static_cast<int>(idx / field.lam.n);
      const int j = static_cast<int>(idx % field.lam.n);
      if (i < nt) setter(field.slices[i], j, v);
      ++idx;
    }
    if (idx != static_cast<size_t>(nt) * field.lam.n) {
      throw ConfigError("field CSV " + name + " has unexpected row count");
    }
  };
  read_field("Q", [](evolution::Slice& s, int j, double v) { s.q[j] = v; });
  read_field("S", [](evolution::Slice& s, int j, double v) { s.s[j] = v; });
  read_field("B", [](evolution::Slice& s, int j, double v) { s.b[j] = v; });
  read_field("G", [](evolution::Slice& s, int j, double v) { s.g[j] = v; });

  field.diagnostics.clear();
  if (manifest.contains("constraint_history")) {
    for (const auto& h : manifest["constraint_history"]) {
      evolution::SliceDiagnostics d;
      d.c1 = h.value("c1", 0.0);
      d.c2 = h.value("c2", 0.0);
      d.min_q = h.value("min_q", 0.0);
      d.min_pi = h.value("min_pi", 0.0);
      d.min_abs_qlam = h.value("min_abs_q_lambda", 0.0);
      field.diagnostics.push_back(d);
    }
  }
  while (field.diagnostics.size() < field.slices.size()) {
    const auto& sl = field.slices[field.diagnostics.size()];
    field.diagnostics.push_back(
        evolution::slice_diagnostics(sl, profiles::eval(field.profile, sl.tau)));
  }
  return field;
}

void save_chart_csv(const fs::path& dir, const geometry::ChartData& chart) {
  fs::create_directories(dir / "fields");
  auto write = [&](const std::string& name, const geometry::Field2& f) {
    std::ofstream out(dir / "fields" / (name + ".csv"));
    out << "x,u,value\n";
    for (int i = 0; i < chart.rn; ++i) {
      for (int j = 0; j < chart.rn; ++j) {
        const double x = chart.rect.x0 + i * chart.hx();
        const double u = chart.rect.u0 + j * chart.hu();
        out << format_double(x) << ',' << format_double(u) << ',' << format_double(f.at(i, j))
            << '\n';
      }
    }
  };
  if (chart.rn > 0) {
    write("resampled_tau", chart.r_tau);
    write("resampled_lambda", chart.r_lam);
    write("resampled_Q", chart.r_q);
    write("resampled_S", chart.r_s);
    write("resampled_B", chart.r_b);
    write("resampled_G", chart.r_g);
    write("resampled_Pi", chart.r_pi);
    write("resampled_phi", chart.r_phi);
  }
}

std::string validate_against_schema(const json& schema, const json& value) {
  const std::string type = schema.value("type", "");
  auto type_ok = [&](const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "number") return value.is_number();
    if (t == "integer") return value.is_number_integer();
    if (t == "string") return value.is_string();
    if (t == "boolean") return value.is_boolean();
    return true;
  };
  if (!type.empty() && !type_ok(type)) {
    return "expected type " + type + ", got " + std::string(value.type_name());
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          return "missing required key \"" + key.get<std::string>() + "\"";
        }
      }
    }
    if (schema.contains("properties")) {
      for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
        if (value.contains(it.key())) {
          const std::string err = validate_against_schema(it.value(), value[it.key()]);
          if (!err.empty()) return it.key() + ": " + err;
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (size_t i = 0; i < value.size(); ++i) {
      const std::string err = validate_against_schema(schema["items"], value[i]);
      if (!err.empty()) return "[" + std::to_string(i) + "]: " + err;
    }
  }
  return "";
}

}  // namespace srh::io
