// Acceptance gate: every release-blocking criterion with its tolerance
// pinned in code. Prints one PASS/FAIL line per criterion and exits
// nonzero when any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "geoflow/curvature.hpp"
#include "geoflow/euler_arnold.hpp"
#include "geoflow/hunter_saxton.hpp"
#include "geoflow/landmarks.hpp"
#include "geoflow/matching.hpp"

using namespace geoflow;

namespace {

int g_failures = 0;

void report(const char* name, bool ok, const char* detail = "") {
  std::printf("%s %-42s %s\n", ok ? "PASS" : "FAIL", name, detail);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols,
                              double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

Eigen::MatrixXd spread_config(std::mt19937_64& rng, int n_points, int dim,
                              double sigma) {
  while (true) {
    Eigen::MatrixXd q = random_matrix(rng, n_points, dim, 1.3 * sigma);
    bool ok = true;
    for (int i = 0; i < n_points && ok; ++i)
      for (int j = i + 1; j < n_points; ++j)
        if ((q.row(i) - q.row(j)).norm() < 0.4 * sigma) ok = false;
    if (ok) return q;
  }
}

double bump(double x, double amplitude, double center, double width) {
  const double s = (x - center) / width;
  if (std::abs(s) >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
}

Eigen::VectorXd bump_samples(const LineGrid& grid, double amplitude,
                             double center, double width) {
  Eigen::VectorXd v(grid.m);
  for (int j = 0; j < grid.m; ++j)
    v[j] = bump(grid.node(j), amplitude, center, width);
  return v;
}

double bump_deriv(double x, double amplitude, double center, double width) {
  const double s = (x - center) / width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double d = 1.0 - s * s;
  return bump(x, amplitude, center, width) * (-2.0 * s / (d * d)) / width;
}

Eigen::VectorXd mode_field(int m, int k, double c, double s) {
  Eigen::VectorXd u(m);
  for (int j = 0; j < m; ++j) {
    const double x = 2.0 * std::numbers::pi * j / m;
    u[j] = c * std::cos(k * x) + s * std::sin(k * x);
  }
  return u;
}

Eigen::VectorXd random_low_mode(std::mt19937_64& rng, int m, int max_mode,
                                double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  for (int k = 1; k <= max_mode; ++k)
    u += mode_field(m, k, dist(rng), dist(rng));
  return u;
}

// 1. Landmark energy conservation: N=5 Gaussian shoot, RK4 dt=1e-3, T=1,
//    relative drift < 1e-6, runtime < 5 s.
void criterion_energy_conservation() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  const KernelSpec k{KernelFamily::Gaussian, 1.0};
  const Eigen::MatrixXd q = spread_config(rng, 5, 2, k.sigma);
  const Eigen::MatrixXd alpha = random_matrix(rng, 5, 2, 1.0);
  const GeodesicPath path = shoot(k, {q, alpha}, 1.0, 1e-3);
  double drift = 0.0;
  for (double e : path.energy_trace)
    drift = std::max(drift,
                     std::abs(e - path.energy_trace.front()) /
                         path.energy_trace.front());
  char detail[96];
  std::snprintf(detail, sizeof detail, "drift %.2e, %.1f s", drift,
                seconds_since(t0));
  report("landmark energy conservation", drift < 1e-6 && seconds_since(t0) < 5.0,
         detail);
}

// 2. Hamiltonian vs second-order vector formulation agree at T=1 to 1e-6 on
//    20 random instances.
void criterion_formulation_equivalence() {
  std::mt19937_64 rng(102);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const KernelSpec k{trial % 2 == 0 ? KernelFamily::Gaussian
                                      : KernelFamily::Matern52,
                       1.0};
    const int n_points = 2 + trial % 3;
    const Eigen::MatrixXd q0 = spread_config(rng, n_points, 2, k.sigma);
    const Eigen::MatrixXd alpha0 = random_matrix(rng, n_points, 2, 0.6);
    const GeodesicPath ham = shoot(k, {q0, alpha0}, 1.0, 1e-3);

    // Second-order form integrated directly in (q, qdot) with RK4.
    Eigen::MatrixXd q = q0;
    Eigen::MatrixXd v = sharp(k, q0, alpha0);
    const double dt = 1e-3;
    for (int step = 0; step < 1000; ++step) {
      const Eigen::MatrixXd k1q = v, k1v = geodesic_accel(k, q, v);
      const Eigen::MatrixXd k2q = v + 0.5 * dt * k1v,
                            k2v = geodesic_accel(k, q + 0.5 * dt * k1q,
                                                 v + 0.5 * dt * k1v);
      const Eigen::MatrixXd k3q = v + 0.5 * dt * k2v,
                            k3v = geodesic_accel(k, q + 0.5 * dt * k2q,
                                                 v + 0.5 * dt * k2v);
      const Eigen::MatrixXd k4q = v + dt * k3v,
                            k4v = geodesic_accel(k, q + dt * k3q, v + dt * k3v);
      q += dt / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
      v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    worst = std::max(worst, (ham.states.back().q - q).norm());
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "max endpoint gap %.2e", worst);
  report("hamiltonian vs vector formulation", worst < 1e-6, detail);
}

// 3. Stress/force numerator vs FD Riemann oracle: 1e-3 relative on 50
//    instances, N <= 4, n <= 2, under 60 s.
void criterion_curvature_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(103);
  const KernelSpec kernels[] = {{KernelFamily::Gaussian, 1.0},
                                {KernelFamily::Gaussian, 0.8},
                                {KernelFamily::Matern32, 1.2},
                                {KernelFamily::Matern52, 1.0}};
  double worst = 0.0;
  int count = 0;
  while (count < 50) {
    const KernelSpec& k = kernels[count % 4];
    const int n_points = 2 + count % 3;
    const int dim = 1 + count % 2;
    const Eigen::MatrixXd q = spread_config(rng, n_points, dim, k.sigma);
    const Eigen::MatrixXd alpha = random_matrix(rng, n_points, dim, 1.0);
    const Eigen::MatrixXd beta = random_matrix(rng, n_points, dim, 1.0);
    const CurvatureReport r = sectional_numerator(k, q, alpha, beta);
    const double fd = riemann_fd_oracle(k, q, sharp(k, q, alpha),
                                        sharp(k, q, beta));
    const double scale =
        std::max({std::abs(fd), std::abs(r.numerator), 1e-10});
    worst = std::max(worst, std::abs(r.numerator - fd) / scale);
    ++count;
  }
  const double elapsed = seconds_since(t0);
  char detail[96];
  std::snprintf(detail, sizeof detail, "max rel err %.2e, %.1f s", worst,
                elapsed);
  report("curvature vs FD Riemann oracle", worst < 1e-3 && elapsed < 60.0,
         detail);
}

// 4. D(a,b) - D(b,a) = [a#, b#] to 1e-10.
void criterion_bracket_identity() {
  std::mt19937_64 rng(104);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const KernelSpec k{trial % 2 == 0 ? KernelFamily::Gaussian
                                      : KernelFamily::Matern32,
                       1.0};
    const int n_points = 2 + trial % 4;
    const Eigen::MatrixXd q = spread_config(rng, n_points, 2, k.sigma);
    const Eigen::MatrixXd a = random_matrix(rng, n_points, 2, 1.0);
    const Eigen::MatrixXd b = random_matrix(rng, n_points, 2, 1.0);
    const Eigen::MatrixXd lhs = stress(k, q, a, b) - stress(k, q, b, a);
    worst = std::max(worst, (lhs - bracket_sharp(k, q, a, b)).norm());
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "max gap %.2e", worst);
  report("stress bracket identity", worst < 1e-10, detail);
}

// 5. Exact matching: endpoint error < 1e-6 on an N <= 10, displacement
//    <= 2 sigma battery; N=1 returns the closed-form momentum exactly.
void criterion_matching() {
  std::mt19937_64 rng(105);
  bool ok = true;
  double worst = 0.0;
  for (int n_points : {1, 3, 6, 10}) {
    MatchProblem p;
    p.kernel = {KernelFamily::Gaussian, 1.0};
    p.q0 = spread_config(rng, n_points, 2, p.kernel.sigma);
    Eigen::MatrixXd disp = random_matrix(rng, n_points, 2, 0.5);
    for (int i = 0; i < n_points; ++i)
      if (disp.row(i).norm() > 2.0 * p.kernel.sigma)
        disp.row(i) *= 2.0 * p.kernel.sigma / disp.row(i).norm();
    p.q1 = p.q0 + disp;
    const MatchResult r = match(p);
    worst = std::max(worst, r.endpoint_error);
    ok = ok && r.endpoint_error < 1e-6;
    if (n_points == 1)
      ok = ok && (r.alpha0 - (p.q1 - p.q0)).norm() < 1e-10;
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "max endpoint err %.2e", worst);
  report("exact matching battery", ok, detail);
}

// 6. R-map isometry at M=2048 to 1e-4 relative; round-trip refinement order
//    >= 1.9.
void criterion_rmap_isometry() {
  const LineGrid grid{-10.0, 10.0, 2048};
  const DiffLine phi0 = identity_diffline(grid);
  const DiffLine phi1 = diffline_from_fp(grid, bump_samples(grid, 1.2, 0.5, 2.5));
  const int steps = 64;
  std::vector<DiffLine> path;
  std::vector<FlatPoint> flat_path;
  for (int i = 0; i <= steps; ++i) {
    path.push_back(hs_geodesic(phi0, phi1, double(i) / steps));
    flat_path.push_back(r_map(path.back()));
  }
  const double e_h1 = path_energy_h1(path, 1.0 / steps);
  const double e_flat = path_energy_flat(flat_path, 1.0 / steps);
  const double rel = std::abs(e_h1 - e_flat) / e_flat;

  // Round-trip sweep against an analytically consistent (f, f') pair, so
  // the measured error is the quadrature error inside r_inverse.
  std::vector<double> errs;
  for (int m : {256, 512, 1024, 2048}) {
    const LineGrid g{-10.0, 10.0, m};
    DiffLine p{g, Eigen::VectorXd(g.m), Eigen::VectorXd(g.m)};
    for (int j = 0; j < g.m; ++j) {
      p.f[j] = bump(g.node(j), 0.8, -1.0, 2.5);
      p.fp[j] = bump_deriv(g.node(j), 0.8, -1.0, 2.5);
    }
    errs.push_back((r_inverse(r_map(p)).f - p.f).cwiseAbs().maxCoeff());
  }
  double min_order = 1e9;
  for (size_t i = 1; i < errs.size(); ++i)
    min_order = std::min(min_order, std::log2(errs[i - 1] / errs[i]));
  char detail[96];
  std::snprintf(detail, sizeof detail, "isometry gap %.2e, order %.2f", rel,
                min_order);
  report("R-map isometry and round-trip order", rel < 1e-4 && min_order >= 1.9,
         detail);
}

// 7. hs_evolve vs closed-form geodesic: L_inf < 1e-3 at T=0.5, M=2048,
//    dt=1e-3.
void criterion_hs_pde() {
  const LineGrid grid{-10.0, 10.0, 2048};
  const Eigen::VectorXd u0 = bump_samples(grid, 0.8, 0.0, 2.5);
  const HsTrajectory traj = hs_evolve(grid, u0, 0.5, 1e-3);
  const Eigen::VectorXd exact = hs_exact_velocity(grid, u0, 0.5);
  const double err = (traj.velocity.back() - exact).cwiseAbs().maxCoeff();
  char detail[64];
  std::snprintf(detail, sizeof detail, "L_inf err %.2e", err);
  report("Hunter-Saxton PDE vs closed form", err < 1e-3, detail);
}

// 8. rho-based numerator equals Arnold's formula to 1e-8 for s in {1,2} on
//    20 random low-mode pairs; rho symmetry and the cyclic identity to 1e-8.
void criterion_ea_formulas() {
  const int m = 128;
  std::mt19937_64 rng(108);
  double worst = 0.0;
  bool ok = true;
  for (double s : {1.0, 2.0}) {
    const InertiaOp op{s, m};
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXd X = random_low_mode(rng, m, 4, 1.0);
      const Eigen::VectorXd Y = random_low_mode(rng, m, 4, 1.0);
      const double a = sectional_numerator_id(op, X, Y);
      const double b = arnold_numerator_id(op, X, Y);
      const double scale = std::max({std::abs(a), std::abs(b), 1.0});
      worst = std::max(worst, std::abs(a - b) / scale);

      const Eigen::VectorXd Z = random_low_mode(rng, m, 4, 1.0);
      ok = ok && (rho(op, X, Y) - rho(op, Y, X)).cwiseAbs().maxCoeff() < 1e-8;
      const double cyc = metric_at_id(op, rho(op, X, Y), Z) +
                         metric_at_id(op, rho(op, Y, Z), X) +
                         metric_at_id(op, rho(op, Z, X), Y);
      ok = ok && std::abs(cyc) < 1e-8;
    }
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "max rel gap %.2e", worst);
  report("rho vs Arnold curvature formulas", ok && worst < 1e-8, detail);
}

// 9. EA energy conserved to 1e-8 (s=1, smooth, T=1) and RK4 ratio in
//    [12, 20].
void criterion_ea_conservation() {
  const int m = 256;
  std::mt19937_64 rng(109);
  const Eigen::VectorXd u0 = random_low_mode(rng, m, 3, 0.05);
  const InertiaOp op{1.0, m};
  const EaTrajectory traj = ea_evolve(op, u0, 1.0, 1e-3);
  double drift = 0.0;
  for (double e : traj.energy)
    drift = std::max(drift, std::abs(e - traj.energy.front()) /
                                traj.energy.front());

  // Order check at a larger amplitude so the error is well above roundoff.
  const Eigen::VectorXd v0 = random_low_mode(rng, m, 3, 0.15);
  const Eigen::VectorXd ref = ea_evolve(op, v0, 0.5, 5e-5).fields.back();
  const double e1 =
      (ea_evolve(op, v0, 0.5, 4e-3).fields.back() - ref).cwiseAbs().maxCoeff();
  const double e2 =
      (ea_evolve(op, v0, 0.5, 2e-3).fields.back() - ref).cwiseAbs().maxCoeff();
  const double ratio = e1 / e2;
  char detail[96];
  std::snprintf(detail, sizeof detail, "drift %.2e, ratio %.1f", drift, ratio);
  report("Euler-Arnold conservation and order",
         drift < 1e-8 && ratio >= 12.0 && ratio <= 20.0, detail);
}

// 10. Vanishing-distance trend: level-4 length <= half the level-1 length at
//     s=0 while s=1 lengths stay within 10%; under 10 minutes.
void criterion_vanish_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  const int m = 128;
  // Localized oscillatory base displacement; the experiment concentrates it
  // per level with fixed order-1 Sobolev size.
  Eigen::VectorXd target = Eigen::VectorXd::Zero(m);
  const double w0 = std::numbers::pi / 2.0;
  for (int j = 0; j < m; ++j) {
    const double x = 2.0 * std::numbers::pi * j / m;
    const double s = (x - std::numbers::pi) / w0;
    if (std::abs(s) < 1.0)
      target[j] = 0.05 * std::exp(1.0 - 1.0 / (1.0 - s * s)) *
                  std::sin(6.0 * (x - std::numbers::pi));
  }
  VanishOptions vopt;
  vopt.base_steps = 8;
  vopt.seed = 11;

  const auto t_s0 = vanish_distance_experiment({0.0, m}, target, 4, vopt);
  const auto t_s1 = vanish_distance_experiment({1.0, m}, target, 4, vopt);
  const double shrink = t_s0.back().length / t_s0.front().length;
  double s1_min = 1e300, s1_max = 0.0;
  for (const auto& row : t_s1) {
    s1_min = std::min(s1_min, row.length);
    s1_max = std::max(s1_max, row.length);
  }
  const double spread = (s1_max - s1_min) / s1_min;
  const double elapsed = seconds_since(t0);
  char detail[96];
  std::snprintf(detail, sizeof detail,
                "s0 shrink %.2f, s1 spread %.1f%%, %.0f s", shrink,
                100.0 * spread, elapsed);
  report("vanishing-distance trend",
         shrink <= 0.5 && spread <= 0.10 && elapsed < 600.0, detail);
}

}  // namespace

int main() {
  criterion_energy_conservation();
  criterion_formulation_equivalence();
  criterion_curvature_oracle();
  criterion_bracket_identity();
  criterion_matching();
  criterion_rmap_isometry();
  criterion_hs_pde();
  criterion_ea_formulas();
  criterion_ea_conservation();
  criterion_vanish_trend();
  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
