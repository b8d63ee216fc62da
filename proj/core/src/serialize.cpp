#include "geoflow/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

namespace geoflow {

namespace {
constexpr int kDigits = std::numeric_limits<double>::max_digits10;
}

json to_json(const KernelSpec& k) {
  return {{"family", to_string(k.family)}, {"sigma", k.sigma}};
}

KernelSpec kernel_spec_from_json(const json& j) {
  KernelSpec k;
  k.family = kernel_family_from_string(j.at("family").get<std::string>());
  k.sigma = j.at("sigma").get<double>();
  if (!(k.sigma > 0.0))
    throw std::invalid_argument("kernel sigma must be positive");
  return k;
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("expected a non-empty array of rows");
  const auto rows = j.size();
  const auto cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

json to_json(const LandmarkState& state) {
  return {{"q", to_json(state.q)}, {"alpha", to_json(state.alpha)}};
}

json to_json(const GeodesicPath& path) {
  json states = json::array();
  for (const auto& s : path.states) states.push_back(to_json(s));
  return {{"times", path.times},
          {"states", std::move(states)},
          {"integrator", to_string(path.integrator)},
          {"dt", path.dt},
          {"energy_trace", path.energy_trace},
          {"truncated", path.truncated}};
}

json to_json(const CurvatureReport& report) {
  return {{"numerator", report.numerator},
          {"denominator", report.denominator},
          {"sectional", report.sectional_defined
                            ? json(report.sectional)
                            : json(nullptr)},
          {"terms",
           {{"stress_force_terms", report.terms.stress_force},
            {"d2K_terms", report.terms.d2k},
            {"force_norm_terms", report.terms.force_norm},
            {"oneill_term", report.terms.oneill}}}};
}

json to_json(const MatchResult& result) {
  return {{"alpha0", to_json(result.alpha0)},
          {"endpoint_error", result.endpoint_error},
          {"path_energy", result.path_energy},
          {"iterations", result.iterations},
          {"converged", result.converged}};
}

json to_json(const LineGrid& grid) {
  return {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"m", grid.m}};
}

LineGrid line_grid_from_json(const json& j) {
  LineGrid grid;
  grid.x_min = j.at("x_min").get<double>();
  grid.x_max = j.at("x_max").get<double>();
  grid.m = j.at("m").get<int>();
  if (!(grid.x_max > grid.x_min) || grid.m < 16)
    throw std::invalid_argument("invalid line grid");
  return grid;
}

json to_json(const DiffLine& phi) {
  std::vector<double> f(phi.f.begin(), phi.f.end());
  std::vector<double> fp(phi.fp.begin(), phi.fp.end());
  return {{"grid", to_json(phi.grid)}, {"f", f}, {"fp", fp}};
}

json to_json(const FlatPoint& g) {
  std::vector<double> gamma(g.gamma.begin(), g.gamma.end());
  return {{"grid", to_json(g.grid)}, {"gamma", gamma}};
}

json to_json(const std::vector<VanishLevelResult>& table) {
  json out = json::array();
  for (const auto& row : table)
    out.push_back({{"level", row.level},
                   {"time_steps", row.time_steps},
                   {"length", row.length},
                   {"iterations", row.iterations},
                   {"converged", row.converged}});
  return out;
}

void write_csv(std::ostream& os, const GeodesicPath& path) {
  os << std::setprecision(kDigits);
  const auto n_points = path.states.empty() ? 0 : path.states[0].q.rows();
  const auto dim = path.states.empty() ? 0 : path.states[0].q.cols();
  os << "t";
  for (Eigen::Index i = 0; i < n_points; ++i)
    for (Eigen::Index a = 0; a < dim; ++a) os << ",q" << i << "_" << a;
  for (Eigen::Index i = 0; i < n_points; ++i)
    for (Eigen::Index a = 0; a < dim; ++a) os << ",alpha" << i << "_" << a;
  os << ",energy\n";
  for (size_t row = 0; row < path.times.size(); ++row) {
    os << path.times[row];
    const auto& s = path.states[row];
    for (Eigen::Index i = 0; i < n_points; ++i)
      for (Eigen::Index a = 0; a < dim; ++a) os << "," << s.q(i, a);
    for (Eigen::Index i = 0; i < n_points; ++i)
      for (Eigen::Index a = 0; a < dim; ++a) os << "," << s.alpha(i, a);
    os << "," << path.energy_trace[row] << "\n";
  }
}

void write_csv(std::ostream& os, const HsTrajectory& traj) {
  os << std::setprecision(kDigits);
  os << "t";
  for (int j = 0; j < traj.grid.m; ++j) os << ",u" << j;
  os << "\n";
  for (size_t row = 0; row < traj.times.size(); ++row) {
    os << traj.times[row];
    for (int j = 0; j < traj.grid.m; ++j) os << "," << traj.velocity[row][j];
    os << "\n";
  }
}

void write_csv(std::ostream& os, const EaTrajectory& traj) {
  os << std::setprecision(kDigits);
  const auto m = traj.fields.empty() ? 0 : traj.fields[0].size();
  os << "t";
  for (Eigen::Index j = 0; j < m; ++j) os << ",u" << j;
  os << ",energy,mean_momentum\n";
  for (size_t row = 0; row < traj.times.size(); ++row) {
    os << traj.times[row];
    for (Eigen::Index j = 0; j < m; ++j) os << "," << traj.fields[row][j];
    os << "," << traj.energy[row] << "," << traj.mean_momentum[row] << "\n";
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
    os << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("atomic rename to " + path + " failed");
}

}  // namespace geoflow
