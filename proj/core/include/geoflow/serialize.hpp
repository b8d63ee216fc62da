#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "geoflow/curvature.hpp"
#include "geoflow/euler_arnold.hpp"
#include "geoflow/hunter_saxton.hpp"
#include "geoflow/landmarks.hpp"
#include "geoflow/matching.hpp"

namespace geoflow {

using json = nlohmann::json;

json to_json(const KernelSpec& k);
KernelSpec kernel_spec_from_json(const json& j);

json to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& j);

json to_json(const LandmarkState& state);
json to_json(const GeodesicPath& path);
json to_json(const CurvatureReport& report);
json to_json(const MatchResult& result);
json to_json(const LineGrid& grid);
LineGrid line_grid_from_json(const json& j);
json to_json(const DiffLine& phi);
json to_json(const FlatPoint& g);
json to_json(const std::vector<VanishLevelResult>& table);

// CSV trajectory writers: columns t, q flattened, alpha flattened, energy
// (landmarks) or t, samples... (fields). Values printed with max_digits10.
void write_csv(std::ostream& os, const GeodesicPath& path);
void write_csv(std::ostream& os, const HsTrajectory& traj);
void write_csv(std::ostream& os, const EaTrajectory& traj);

// Writes content to path atomically (temp file then rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace geoflow
