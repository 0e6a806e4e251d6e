#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "srh/evolution.hpp"
#include "srh/geometry.hpp"
#include "srh/profiles.hpp"

namespace srh::io {

using nlohmann::json;

// Round-trip-exact formatting for CSV cells.
std::string format_double(double v);

json profile_to_json(const profiles::ProfileParams& p);
profiles::ProfileParams profile_from_json(const json& j);  // throws ConfigError

json report_to_json(const geometry::GeometryReport& rep);

// One CSV per field with header (tau, lambda, value), plus manifest.json
// carrying the grid metadata, profile, and per-slice constraint history.
void save_grid_field(const std::filesystem::path& dir, const evolution::GridField& field);
evolution::GridField load_grid_field(const std::filesystem::path& dir);

// Resampled fields as (x, u, value) CSVs.
void save_chart_csv(const std::filesystem::path& dir, const geometry::ChartData& chart);

// Minimal structural validator for the subset of JSON Schema used by the
// shipped schemas: type, properties, required, items.  Returns an empty
// string when valid, else a description of the first violation.
std::string validate_against_schema(const json& schema, const json& value);

}  // namespace srh::io
