#pragma once

#include <Eigen/Dense>
#include <vector>

#include "geoflow/errors.hpp"

namespace geoflow {

// Hunter-Saxton geometry on line diffeomorphisms phi = Id + f through the
// flattening map gamma = 2((1+f')^{1/2} - 1): closed-form geodesics and
// distances in the flat chart, plus a direct PDE integrator.

struct LineGrid {
  double x_min = -10.0;
  double x_max = 10.0;
  int m = 256;  // number of nodes, >= 16

  double h() const { return (x_max - x_min) / (m - 1); }
  double node(int j) const { return x_min + j * h(); }
  Eigen::VectorXd nodes() const;
  // Functions must be supported inside [x_min + margin, x_max - margin].
  double margin() const { return 0.1 * (x_max - x_min); }
  bool operator==(const LineGrid&) const = default;
};

// phi = Id + f with f' stored alongside f (never re-differenced); the
// diffeomorphism condition is 1 + f' > 0. f(x_min) = 0; f' is compactly
// supported inside the grid margins, f itself may carry a shift at x_max.
struct DiffLine {
  LineGrid grid;
  Eigen::VectorXd f;
  Eigen::VectorXd fp;
};

struct FlatPoint {
  LineGrid grid;
  Eigen::VectorXd gamma;  // > -2 everywhere, compactly supported
};

// Trapezoid quadrature helpers on a uniform grid.
double trapz(const Eigen::VectorXd& y, double h);
Eigen::VectorXd cumtrapz(const Eigen::VectorXd& y, double h);

DiffLine identity_diffline(const LineGrid& grid);

// Builds a DiffLine from analytic samples of f'; f is the cumulative
// trapezoid integral. Throws NotDiffeo if 1 + f' <= 0 anywhere.
DiffLine diffline_from_fp(const LineGrid& grid, const Eigen::VectorXd& fp);

// Validity checks; throw NotDiffeo / OutOfChart.
void validate(const DiffLine& phi);
void validate(const FlatPoint& g);

// True when 1 + f' approaches the monotone-map boundary within 1e-6;
// surfaced as a warning, not an error.
bool near_boundary(const DiffLine& phi);

// gamma = 2((1 + f')^{1/2} - 1).
FlatPoint r_map(const DiffLine& phi);

// phi(x) = x + 1/4 int_{x_min}^x (gamma^2 + 4 gamma); f' is recovered
// exactly as ((gamma/2) + 1)^2 - 1, no quadrature in that direction.
DiffLine r_inverse(const FlatPoint& g);

// Straight-line interpolation in the flat chart; t in [0,1] stays in chart.
DiffLine hs_geodesic(const DiffLine& phi0, const DiffLine& phi1, double t);

// L2(dx) distance of the flattened endpoints.
double hs_distance(const DiffLine& phi0, const DiffLine& phi1);

// u_t = -u u_x + 1/2 int_{x_min}^x (u_x)^2 dz, derivatives by central
// differences, cumulative integral by trapezoid.
Eigen::VectorXd hs_pde_rhs(const LineGrid& grid, const Eigen::VectorXd& u);

struct HsTrajectory {
  LineGrid grid;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> velocity;  // u(t_i) samples
};

// RK4 on hs_pde_rhs. Throws BlowUp when |u_x|_inf exceeds slope_cap.
HsTrajectory hs_evolve(const LineGrid& grid, const Eigen::VectorXd& u0,
                       double T, double dt, double slope_cap = 50.0);

// Velocity field of the closed-form geodesic from Id with initial velocity
// u0 at time t, resampled onto the grid. Reference for hs_evolve.
Eigen::VectorXd hs_exact_velocity(const LineGrid& grid,
                                  const Eigen::VectorXd& u0, double t);

// Discrete path energies for the isometry check: Hdot1 energy of a path of
// diffeomorphisms (central time differences, metric int (h')^2 / phi' dx)
// and flat L2 energy of the corresponding gamma path.
double path_energy_h1(const std::vector<DiffLine>& path, double dt);
double path_energy_flat(const std::vector<FlatPoint>& path, double dt);

}  // namespace geoflow
