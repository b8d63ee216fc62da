#include "geoflow/hunter_saxton.hpp"

#include <algorithm>
#include <cmath>

namespace geoflow {

Eigen::VectorXd LineGrid::nodes() const {
  Eigen::VectorXd x(m);
  for (int j = 0; j < m; ++j) x[j] = node(j);
  return x;
}

double trapz(const Eigen::VectorXd& y, double h) {
  const auto m = y.size();
  return h * (y.sum() - 0.5 * (y[0] + y[m - 1]));
}

Eigen::VectorXd cumtrapz(const Eigen::VectorXd& y, double h) {
  Eigen::VectorXd out(y.size());
  out[0] = 0.0;
  for (Eigen::Index j = 1; j < y.size(); ++j)
    out[j] = out[j - 1] + 0.5 * h * (y[j - 1] + y[j]);
  return out;
}

DiffLine identity_diffline(const LineGrid& grid) {
  return {grid, Eigen::VectorXd::Zero(grid.m), Eigen::VectorXd::Zero(grid.m)};
}

DiffLine diffline_from_fp(const LineGrid& grid, const Eigen::VectorXd& fp) {
  DiffLine phi{grid, cumtrapz(fp, grid.h()), fp};
  validate(phi);
  return phi;
}

void validate(const DiffLine& phi) {
  const auto& grid = phi.grid;
  if (grid.m < 16) throw std::invalid_argument("LineGrid needs m >= 16");
  if (phi.f.size() != grid.m || phi.fp.size() != grid.m)
    throw std::invalid_argument("DiffLine sample sizes disagree with grid");
  if ((1.0 + phi.fp.array() <= 0.0).any())
    throw NotDiffeo("1 + f' <= 0 somewhere on the grid");
  if (std::abs(phi.f[0]) > 1e-10)
    throw std::invalid_argument("f(x_min) must vanish");
  // f' must be supported inside the margins.
  const double margin = grid.margin();
  for (int j = 0; j < grid.m; ++j) {
    const double x = grid.node(j);
    if (x < grid.x_min + margin || x > grid.x_max - margin)
      if (std::abs(phi.fp[j]) > 1e-8)
        throw std::invalid_argument("f' not supported inside the grid margins");
  }
}

void validate(const FlatPoint& g) {
  if (g.gamma.size() != g.grid.m)
    throw std::invalid_argument("FlatPoint sample size disagrees with grid");
  if ((g.gamma.array() <= -2.0).any())
    throw OutOfChart("gamma <= -2 somewhere on the grid");
}

bool near_boundary(const DiffLine& phi) {
  return (1.0 + phi.fp.array()).minCoeff() < 1e-6;
}

FlatPoint r_map(const DiffLine& phi) {
  validate(phi);
  FlatPoint g{phi.grid,
              2.0 * ((1.0 + phi.fp.array()).sqrt() - 1.0)};
  return g;
}

DiffLine r_inverse(const FlatPoint& g) {
  validate(g);
  // f' = ((gamma/2) + 1)^2 - 1 is exact algebra; only f needs quadrature.
  const Eigen::VectorXd fp =
      ((g.gamma.array() / 2.0 + 1.0).square() - 1.0).matrix();
  return {g.grid, cumtrapz(fp, g.grid.h()), fp};
}

DiffLine hs_geodesic(const DiffLine& phi0, const DiffLine& phi1, double t) {
  if (phi0.grid != phi1.grid)
    throw std::invalid_argument("hs_geodesic endpoints on different grids");
  const FlatPoint g0 = r_map(phi0);
  const FlatPoint g1 = r_map(phi1);
  FlatPoint g{phi0.grid, (1.0 - t) * g0.gamma + t * g1.gamma};
  validate(g);  // OutOfChart only reachable for t outside [0, 1]
  return r_inverse(g);
}

double hs_distance(const DiffLine& phi0, const DiffLine& phi1) {
  if (phi0.grid != phi1.grid)
    throw std::invalid_argument("hs_distance endpoints on different grids");
  const Eigen::VectorXd diff = r_map(phi1).gamma - r_map(phi0).gamma;
  return std::sqrt(trapz(diff.array().square().matrix(), phi0.grid.h()));
}

namespace {

// Fourth-order central first derivative; one-sided second order at the ends
// (fields vanish there anyway).
Eigen::VectorXd deriv(const Eigen::VectorXd& u, double h) {
  const auto m = u.size();
  Eigen::VectorXd d(m);
  d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  d[1] = (u[2] - u[0]) / (2.0 * h);
  for (Eigen::Index j = 2; j < m - 2; ++j)
    d[j] = (u[j - 2] - 8.0 * u[j - 1] + 8.0 * u[j + 1] - u[j + 2]) / (12.0 * h);
  d[m - 2] = (u[m - 1] - u[m - 3]) / (2.0 * h);
  d[m - 1] = (3.0 * u[m - 1] - 4.0 * u[m - 2] + u[m - 3]) / (2.0 * h);
  return d;
}

}  // namespace

Eigen::VectorXd hs_pde_rhs(const LineGrid& grid, const Eigen::VectorXd& u) {
  const double h = grid.h();
  const Eigen::VectorXd ux = deriv(u, h);
  const Eigen::VectorXd accum = cumtrapz(ux.array().square().matrix(), h);
  return (-u.array() * ux.array() + 0.5 * accum.array()).matrix();
}

HsTrajectory hs_evolve(const LineGrid& grid, const Eigen::VectorXd& u0,
                       double T, double dt, double slope_cap) {
  HsTrajectory traj;
  traj.grid = grid;
  Eigen::VectorXd u = u0;
  const int steps = static_cast<int>(std::llround(T / dt));
  traj.times.push_back(0.0);
  traj.velocity.push_back(u);
  for (int i = 0; i < steps; ++i) {
    const Eigen::VectorXd k1 = hs_pde_rhs(grid, u);
    const Eigen::VectorXd k2 = hs_pde_rhs(grid, u + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = hs_pde_rhs(grid, u + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = hs_pde_rhs(grid, u + dt * k3);
    u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (deriv(u, grid.h()).cwiseAbs().maxCoeff() > slope_cap)
      throw BlowUp("velocity gradient exceeded the configured cap at t = " +
                   std::to_string((i + 1) * dt));
    traj.times.push_back((i + 1) * dt);
    traj.velocity.push_back(u);
  }
  return traj;
}

Eigen::VectorXd hs_exact_velocity(const LineGrid& grid,
                                  const Eigen::VectorXd& u0, double t) {
  const double h = grid.h();
  const Eigen::VectorXd u0p = deriv(u0, h);
  // Flat chart: gamma(t) = t * u0', a straight line from the identity.
  const Eigen::VectorXd gamma = t * u0p;
  if ((gamma.array() <= -2.0).any())
    throw OutOfChart("closed-form geodesic left the chart");
  const Eigen::VectorXd fp =
      ((gamma.array() / 2.0 + 1.0).square() - 1.0).matrix();
  const Eigen::VectorXd f = cumtrapz(fp, h);
  // phi_t(x) = u0(x) + (t/2) int_{x_min}^x (u0')^2
  const Eigen::VectorXd phit =
      u0 + 0.5 * t * cumtrapz(u0p.array().square().matrix(), h);
  // u(t, phi(x)) = phi_t(x); resample onto the grid nodes.
  Eigen::VectorXd out(grid.m);
  Eigen::Index lo = 0;
  for (int j = 0; j < grid.m; ++j) {
    const double y = grid.node(j);
    while (lo + 2 < grid.m && grid.node(lo + 1) + f[lo + 1] < y) ++lo;
    const double a = grid.node(lo) + f[lo];
    const double b = grid.node(lo + 1) + f[lo + 1];
    const double w = b > a ? std::clamp((y - a) / (b - a), 0.0, 1.0) : 0.0;
    out[j] = (1.0 - w) * phit[lo] + w * phit[lo + 1];
  }
  return out;
}

double path_energy_h1(const std::vector<DiffLine>& path, double dt) {
  double e = 0.0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const double h = path[i].grid.h();
    const Eigen::VectorXd hp = (path[i + 1].fp - path[i].fp) / dt;
    const Eigen::VectorXd phip_mid =
        1.0 + 0.5 * (path[i].fp + path[i + 1].fp).array();
    e += 0.5 * dt *
         trapz((hp.array().square() / phip_mid.array()).matrix(), h);
  }
  return e;
}

double path_energy_flat(const std::vector<FlatPoint>& path, double dt) {
  double e = 0.0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const double h = path[i].grid.h();
    const Eigen::VectorXd gdot = (path[i + 1].gamma - path[i].gamma) / dt;
    e += 0.5 * dt * trapz(gdot.array().square().matrix(), h);
  }
  return e;
}

}  // namespace geoflow
