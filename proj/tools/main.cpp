// Command-line front end: shoot | match | curvature | hs ... | ea ... |
// selftest. Configuration is JSON; trajectories go to CSV, structured
// results to JSON. Outputs are deterministic for a fixed config and seed
// (modulo the timestamp comment line at the top of CSV files).

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "geoflow/curvature.hpp"
#include "geoflow/euler_arnold.hpp"
#include "geoflow/hunter_saxton.hpp"
#include "geoflow/landmarks.hpp"
#include "geoflow/matching.hpp"
#include "geoflow/serialize.hpp"

namespace gf = geoflow;
using gf::json;

namespace {

constexpr const char* kSchemaVersion = "1";

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  unsigned long long seed = 0;
  bool oracle = false;
};

json load_config(const Options& opt) {
  if (opt.config_path.empty())
    throw std::invalid_argument("--config PATH is required");
  std::ifstream is(opt.config_path);
  if (!is) throw std::invalid_argument("cannot read " + opt.config_path);
  return json::parse(is);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw std::invalid_argument("unknown config field: " + key);
  }
}

std::string timestamp_line(const std::string& command) {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  std::ostringstream os;
  os << "# geoflow " << command << " " << t << "\n";
  return os.str();
}

void emit_json(const Options& opt, const std::string& name, json payload) {
  payload["schema_version"] = kSchemaVersion;
  std::filesystem::create_directories(opt.out_dir);
  gf::write_file_atomic((std::filesystem::path(opt.out_dir) / name).string(),
                        payload.dump(2) + "\n");
}

void emit_csv(const Options& opt, const std::string& name,
              const std::string& command, const std::string& body) {
  std::filesystem::create_directories(opt.out_dir);
  gf::write_file_atomic((std::filesystem::path(opt.out_dir) / name).string(),
                        timestamp_line(command) + body);
}

// Smooth compactly supported bump: amplitude * exp(1 - 1/(1-s^2)), |s| < 1.
double bump(double x, double amplitude, double center, double width) {
  const double s = (x - center) / width;
  if (std::abs(s) >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
}

Eigen::VectorXd line_field_from_json(const gf::LineGrid& grid, const json& j) {
  if (j.is_array()) {
    Eigen::VectorXd u(grid.m);
    if (j.size() != static_cast<size_t>(grid.m))
      throw std::invalid_argument("sample array length disagrees with grid");
    for (int i = 0; i < grid.m; ++i) u[i] = j[i].get<double>();
    return u;
  }
  check_keys(j, {"amplitude", "center", "width"});
  Eigen::VectorXd u(grid.m);
  for (int i = 0; i < grid.m; ++i)
    u[i] = bump(grid.node(i), j.at("amplitude").get<double>(),
                j.at("center").get<double>(), j.at("width").get<double>());
  return u;
}

Eigen::VectorXd periodic_field_from_json(int m, const json& j) {
  if (j.is_array()) {
    if (j.size() != static_cast<size_t>(m))
      throw std::invalid_argument("sample array length disagrees with grid");
    Eigen::VectorXd u(m);
    for (int i = 0; i < m; ++i) u[i] = j[i].get<double>();
    return u;
  }
  // {"modes": [{"k": 1, "cos": 0.5, "sin": 0.0}, ...]}
  check_keys(j, {"modes"});
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  for (const auto& mode : j.at("modes")) {
    check_keys(mode, {"k", "cos", "sin"});
    const int k = mode.at("k").get<int>();
    const double c = mode.value("cos", 0.0);
    const double s = mode.value("sin", 0.0);
    for (int i = 0; i < m; ++i) {
      const double x = 2.0 * std::numbers::pi * i / m;
      u[i] += c * std::cos(k * x) + s * std::sin(k * x);
    }
  }
  return u;
}

int cmd_shoot(const Options& opt) {
  const json cfg = load_config(opt);
  check_keys(cfg, {"schema_version", "kernel", "q0", "alpha0", "T", "dt",
                   "integrator"});
  const gf::KernelSpec kernel = gf::kernel_spec_from_json(cfg.at("kernel"));
  gf::LandmarkState state{gf::matrix_from_json(cfg.at("q0")),
                          gf::matrix_from_json(cfg.at("alpha0"))};
  const double T = cfg.value("T", 1.0);
  const double dt = cfg.value("dt", 1e-3);
  if (!(T > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("T and dt must be positive");
  const gf::Integrator integ =
      gf::integrator_from_string(cfg.value("integrator", "rk4"));

  const gf::GeodesicPath path = gf::shoot(kernel, state, T, dt, integ);
  std::ostringstream csv;
  gf::write_csv(csv, path);
  emit_csv(opt, "shoot.csv", "shoot", csv.str());
  emit_json(opt, "shoot.json",
            {{"truncated", path.truncated},
             {"final_energy", path.energy_trace.back()},
             {"initial_energy", path.energy_trace.front()},
             {"steps", path.times.size() - 1}});
  return path.truncated ? 1 : 0;
}

int cmd_match(const Options& opt) {
  const json cfg = load_config(opt);
  check_keys(cfg, {"schema_version", "kernel", "q0", "q1", "mode", "lambda",
                   "dt", "max_iterations"});
  gf::MatchProblem problem;
  problem.kernel = gf::kernel_spec_from_json(cfg.at("kernel"));
  problem.q0 = gf::matrix_from_json(cfg.at("q0"));
  problem.q1 = gf::matrix_from_json(cfg.at("q1"));
  const std::string mode = cfg.value("mode", "exact");
  if (mode == "exact")
    problem.mode = gf::MatchMode::Exact;
  else if (mode == "inexact")
    problem.mode = gf::MatchMode::Inexact;
  else
    throw std::invalid_argument("mode must be exact or inexact");
  problem.lambda = cfg.value("lambda", 1.0);
  problem.dt = cfg.value("dt", 1e-2);
  problem.max_iterations = cfg.value("max_iterations", 200);

  const gf::MatchResult result = gf::match(problem);
  emit_json(opt, "match.json", gf::to_json(result));
  return 0;
}

int cmd_curvature(const Options& opt) {
  const json cfg = load_config(opt);
  check_keys(cfg, {"schema_version", "kernel", "q", "alpha", "beta"});
  const gf::KernelSpec kernel = gf::kernel_spec_from_json(cfg.at("kernel"));
  const Eigen::MatrixXd q = gf::matrix_from_json(cfg.at("q"));
  const Eigen::MatrixXd alpha = gf::matrix_from_json(cfg.at("alpha"));
  const Eigen::MatrixXd beta = gf::matrix_from_json(cfg.at("beta"));

  if (opt.oracle) {
    const Eigen::MatrixXd p1 = gf::sharp(kernel, q, alpha);
    const Eigen::MatrixXd p2 = gf::sharp(kernel, q, beta);
    const double numerator = gf::riemann_fd_oracle(kernel, q, p1, p2);
    emit_json(opt, "curvature.json",
              {{"numerator", numerator}, {"method", "fd_oracle"}});
  } else {
    const gf::CurvatureReport report =
        gf::sectional_numerator(kernel, q, alpha, beta);
    json payload = gf::to_json(report);
    payload["method"] = "stress_force";
    emit_json(opt, "curvature.json", std::move(payload));
  }
  return 0;
}

int cmd_hs_geodesic(const Options& opt) {
  const json cfg = load_config(opt);
  check_keys(cfg, {"schema_version", "grid", "fp0", "fp1", "snapshots"});
  const gf::LineGrid grid = gf::line_grid_from_json(cfg.at("grid"));
  const gf::DiffLine phi0 =
      gf::diffline_from_fp(grid, line_field_from_json(grid, cfg.at("fp0")));
  const gf::DiffLine phi1 =
      gf::diffline_from_fp(grid, line_field_from_json(grid, cfg.at("fp1")));
  const int snapshots = cfg.value("snapshots", 11);

  std::ostringstream csv;
  csv << "t";
  for (int j = 0; j < grid.m; ++j) csv << ",f" << j;
  csv << "\n";
  for (int i = 0; i < snapshots; ++i) {
    const double t = snapshots > 1 ? double(i) / (snapshots - 1) : 0.0;
    const gf::DiffLine phi = gf::hs_geodesic(phi0, phi1, t);
    csv << t;
    for (int j = 0; j < grid.m; ++j) csv << "," << phi.f[j];
    csv << "\n";
  }
  emit_csv(opt, "hs_geodesic.csv", "hs geodesic", csv.str());
  emit_json(opt, "hs_geodesic.json",
            {{"distance", gf::hs_distance(phi0, phi1)},
             {"snapshots", snapshots}});
  return 0;
}

int cmd_hs_evolve(const Options& opt) {
  const json cfg = load_config(opt);
  check_keys(cfg, {"schema_version", "grid", "u0", "T", "dt"});
  const gf::LineGrid grid = gf::line_grid_from_json(cfg.at("grid"));
  const Eigen::VectorXd u0 = line_field_from_json(grid, cfg.at("u0"));
  const gf::HsTrajectory traj =
      gf::hs_evolve(grid, u0, cfg.value("T", 0.5), cfg.value("dt", 1e-3));
  std::ostringstream csv;
  gf::write_csv(csv, traj);
  emit_csv(opt, "hs_evolve.csv", "hs evolve", csv.str());
  return 0;
}

int cmd_hs_distance(const Options& opt) {
  const json cfg = load_config(opt);
  check_keys(cfg, {"schema_version", "grid", "fp0", "fp1"});
  const gf::LineGrid grid = gf::line_grid_from_json(cfg.at("grid"));
  const gf::DiffLine phi0 =
      gf::diffline_from_fp(grid, line_field_from_json(grid, cfg.at("fp0")));
  const gf::DiffLine phi1 =
      gf::diffline_from_fp(grid, line_field_from_json(grid, cfg.at("fp1")));
  emit_json(opt, "hs_distance.json",
            {{"distance", gf::hs_distance(phi0, phi1)}});
  return 0;
}

int cmd_ea_evolve(const Options& opt) {
  const json cfg = load_config(opt);
  check_keys(cfg, {"schema_version", "s", "m", "u0", "T", "dt"});
  const gf::InertiaOp op{cfg.value("s", 1.0), cfg.value("m", 256)};
  const Eigen::VectorXd u0 = periodic_field_from_json(op.m, cfg.at("u0"));
  const gf::EaTrajectory traj =
      gf::ea_evolve(op, u0, cfg.value("T", 1.0), cfg.value("dt", 1e-3));
  std::ostringstream csv;
  gf::write_csv(csv, traj);
  emit_csv(opt, "ea_evolve.csv", "ea evolve", csv.str());
  emit_json(opt, "ea_evolve.json",
            {{"initial_energy", traj.energy.front()},
             {"final_energy", traj.energy.back()}});
  return 0;
}

int cmd_ea_curvature(const Options& opt) {
  const json cfg = load_config(opt);
  check_keys(cfg, {"schema_version", "s", "m", "X", "Y"});
  const gf::InertiaOp op{cfg.value("s", 1.0), cfg.value("m", 256)};
  const Eigen::VectorXd X = periodic_field_from_json(op.m, cfg.at("X"));
  const Eigen::VectorXd Y = periodic_field_from_json(op.m, cfg.at("Y"));
  json payload;
  if (opt.oracle) {
    payload = {{"numerator", gf::arnold_numerator_id(op, X, Y)},
               {"method", "arnold"}};
  } else {
    payload = {{"numerator", gf::sectional_numerator_id(op, X, Y)},
               {"method", "rho"}};
  }
  emit_json(opt, "ea_curvature.json", std::move(payload));
  return 0;
}

int cmd_ea_vanish(const Options& opt) {
  const json cfg = load_config(opt);
  check_keys(cfg, {"schema_version", "s", "m", "target", "levels",
                   "base_steps", "max_iterations"});
  const gf::InertiaOp op{cfg.value("s", 0.0), cfg.value("m", 64)};
  const Eigen::VectorXd target =
      periodic_field_from_json(op.m, cfg.at("target"));
  gf::VanishOptions vopt;
  vopt.base_steps = cfg.value("base_steps", 8);
  vopt.max_iterations = cfg.value("max_iterations", 2000);
  vopt.seed = opt.seed;
  const auto table = gf::vanish_distance_experiment(
      op, target, cfg.value("levels", 4), vopt);
  emit_json(opt, "ea_vanish.json", {{"levels", gf::to_json(table)}});
  return 0;
}

int cmd_selftest() {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  const gf::KernelSpec gauss{gf::KernelFamily::Gaussian, 1.0};
  check("kernel_eval gaussian at 0",
        std::abs(gf::kernel_eval(gauss, Eigen::VectorXd::Zero(2)) - 1.0) <
            1e-15);
  {
    Eigen::VectorXd r(2);
    r << 2.0, 0.0;
    const gf::KernelSpec wide{gf::KernelFamily::Gaussian, 2.0};
    check("kernel_eval gaussian sigma=2",
          std::abs(gf::kernel_eval(wide, r) - std::exp(-0.5)) < 1e-15);
  }
  {
    Eigen::MatrixXd q(1, 2), alpha(1, 2);
    q << 0.0, 0.0;
    alpha << 1.0, 0.0;
    const auto path = gf::shoot(gauss, {q, alpha}, 1.0, 1e-2);
    Eigen::MatrixXd expected(1, 2);
    expected << 1.0, 0.0;
    check("single landmark shoots straight",
          (path.states.back().q - expected).norm() < 1e-10);
    check("single landmark energy 1/2",
          std::abs(path.energy_trace.back() - 0.5) < 1e-12);
  }
  {
    Eigen::MatrixXd q(2, 1), alpha(2, 1), beta(2, 1);
    q << 0.0, 1.0;
    alpha << 1.0, 0.0;
    beta << 0.0, 1.0;
    check("cometric cross term",
          std::abs(gf::cometric(gauss, q, alpha, beta) - std::exp(-0.5)) <
              1e-14);
    const auto report = gf::sectional_numerator(gauss, q, alpha, alpha);
    check("degenerate plane has zero numerator",
          std::abs(report.numerator) < 1e-12);
  }
  {
    const gf::LineGrid grid{-10.0, 10.0, 256};
    const auto id = gf::identity_diffline(grid);
    check("r_map of identity is zero",
          gf::r_map(id).gamma.cwiseAbs().maxCoeff() == 0.0);
    check("hs_distance(phi,phi) = 0", gf::hs_distance(id, id) == 0.0);
  }
  {
    const gf::InertiaOp op{0.0, 64};
    Eigen::VectorXd u(64);
    for (int i = 0; i < 64; ++i) u[i] = std::cos(2.0 * std::numbers::pi * i / 64);
    check("metric_at_id L2 of cos", std::abs(gf::metric_at_id(op, u, u) - 0.5) <
                                        1e-12);
    const Eigen::VectorXd rhs = gf::ea_rhs(op, u);
    Eigen::VectorXd expected(64);
    for (int i = 0; i < 64; ++i) {
      const double x = 2.0 * std::numbers::pi * i / 64;
      expected[i] = 1.5 * std::sin(2.0 * x);
    }
    check("ea_rhs s=0 is -3uu_x",
          (rhs - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
  std::cout << (failures == 0 ? "selftest OK" : "selftest FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesics, curvature, and matching on diffeomorphism groups "
               "and landmark spaces"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "JSON configuration file");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--seed", opt.seed, "RNG seed for stochastic components");
  app.add_flag("--oracle", opt.oracle,
               "use the reference implementation where available");

  auto* shoot_cmd = app.add_subcommand("shoot", "integrate a landmark geodesic");
  auto* match_cmd = app.add_subcommand("match", "landmark boundary-value matching");
  auto* curv_cmd = app.add_subcommand("curvature", "landmark sectional curvature report");
  auto* hs_cmd = app.add_subcommand("hs", "Hunter-Saxton geometry on the line");
  auto* hs_geo = hs_cmd->add_subcommand("geodesic", "closed-form geodesic snapshots");
  auto* hs_evo = hs_cmd->add_subcommand("evolve", "direct PDE integration");
  auto* hs_dist = hs_cmd->add_subcommand("distance", "flat-chart distance");
  hs_cmd->require_subcommand(1);
  auto* ea_cmd = app.add_subcommand("ea", "Euler-Arnold dynamics on Diff(S^1)");
  auto* ea_evo = ea_cmd->add_subcommand("evolve", "geodesic evolution");
  auto* ea_curv = ea_cmd->add_subcommand("curvature", "curvature numerator at Id");
  auto* ea_van = ea_cmd->add_subcommand("vanish", "distance trend experiment");
  ea_cmd->require_subcommand(1);
  auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in example battery");

  // Let the global options (--config, --out, --seed, --oracle) appear after
  // the subcommand name as well as before it.
  for (CLI::App* sub : {shoot_cmd, match_cmd, curv_cmd, hs_cmd, ea_cmd,
                        selftest_cmd, hs_geo, hs_evo, hs_dist, ea_evo,
                        ea_curv, ea_van})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (shoot_cmd->parsed()) return cmd_shoot(opt);
    if (match_cmd->parsed()) return cmd_match(opt);
    if (curv_cmd->parsed()) return cmd_curvature(opt);
    if (hs_geo->parsed()) return cmd_hs_geodesic(opt);
    if (hs_evo->parsed()) return cmd_hs_evolve(opt);
    if (hs_dist->parsed()) return cmd_hs_distance(opt);
    if (ea_evo->parsed()) return cmd_ea_evolve(opt);
    if (ea_curv->parsed()) return cmd_ea_curvature(opt);
    if (ea_van->parsed()) return cmd_ea_vanish(opt);
    if (selftest_cmd->parsed()) return cmd_selftest();
  } catch (const gf::DomainError& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
