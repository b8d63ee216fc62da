#pragma once

#include <Eigen/Dense>
#include <vector>

#include "geoflow/errors.hpp"
#include "geoflow/spectral.hpp"

namespace geoflow {

// Right-invariant Sobolev H^s metrics on Diff(S^1): inertia operator with
// Fourier multiplier (1 + k^2)^s, the momentum transport ad*, the geodesic
// (Euler-Arnold) equation, and curvature at the identity.
//
// Bracket convention throughout this module: the Lie algebra bracket is the
// negative of the usual vector-field bracket,
//   ad(X)Y = [X, Y] = -(X Y_x - X_x Y).

struct InertiaOp {
  double s = 1.0;  // nonnegative Sobolev order
  int m = 256;     // grid size, power of two
};

Eigen::VectorXd lie_bracket(const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

Eigen::VectorXd inertia_apply(const InertiaOp& op, const Eigen::VectorXd& u);
Eigen::VectorXd inertia_invert(const InertiaOp& op, const Eigen::VectorXd& m);

// gamma(X,Y) = (1/2pi) \oint (L X) Y dx.
double metric_at_id(const InertiaOp& op, const Eigen::VectorXd& X,
                    const Eigen::VectorXd& Y);

// ad*_u(m) = u m_x + 2 u_x m  (Lie derivative of the momentum density).
Eigen::VectorXd ad_star(const Eigen::VectorXd& u, const Eigen::VectorXd& m);

// u_t = -K(ad*_u(L u)); reduces to u_t = -3 u u_x at s = 0.
Eigen::VectorXd ea_rhs(const InertiaOp& op, const Eigen::VectorXd& u);

struct EaTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> fields;
  std::vector<double> energy;      // gamma(u, u) per step
  std::vector<double> mean_momentum;  // (1/2pi) \oint L u dx per step
};

// RK4 in time, spectral in space. Throws BlowUp when the spectral tail
// fraction exceeds tail_cap.
EaTrajectory ea_evolve(const InertiaOp& op, const Eigen::VectorXd& u0, double T,
                       double dt, double tail_cap = 1e-4);

// rho(xi)eta = 1/2 K(ad*_xi(L eta) + ad*_eta(L xi)); symmetric in (xi, eta).
Eigen::VectorXd rho(const InertiaOp& op, const Eigen::VectorXd& xi,
                    const Eigen::VectorXd& eta);

// Curvature numerator at the identity via the rho-expression:
// gamma(rho_X X, rho_Y Y) - |rho_X Y|^2 + 3/4 |[X,Y]|^2
//   - gamma(rho_X Y, [X,Y]) + gamma(Y, [X,[X,Y]]).
double sectional_numerator_id(const InertiaOp& op, const Eigen::VectorXd& X,
                              const Eigen::VectorXd& Y);

// Same numerator through ad^T(X) = K ad*_X L; requires s >= 1
// (throws OrderTooLow below).
double arnold_numerator_id(const InertiaOp& op, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y);

// 1/2 sum_i gamma(u_i, u_i) dt.
double path_energy(const InertiaOp& op,
                   const std::vector<Eigen::VectorXd>& path, double dt);

struct VanishLevelResult {
  int level = 0;
  int time_steps = 0;
  double length = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct VanishOptions {
  int base_steps = 8;       // time steps at level 1
  int max_iterations = 2000;
  double tol = 1e-7;        // relative energy decrease per iteration
  double init_jitter = 1e-3;  // seeded symmetry-breaking perturbation
  unsigned long long seed = 0;
};

// Path-length minimization on Diff(S^1), one row per refinement level. At
// level l the endpoint is the base displacement profile concentrated about
// x = pi by the factor l with height l^(-1/2), which fixes the order-1
// Sobolev size of the displacement while its L2 size decays like 1/l; the
// path from Id to that endpoint is parameterized by l*base_steps control
// fields and the discrete path energy is minimized by gradient descent.
// The minimized s=0 lengths shrink with the level (the L2 metric is blind
// to concentration, which is why its geodesic distance vanishes) while the
// s=1 lengths stay put (the slope term pins them). Supports s in {0, 1}
// (the orders with a pointwise composition formula for the metric); other
// orders throw OrderTooLow.
std::vector<VanishLevelResult> vanish_distance_experiment(
    const InertiaOp& op, const Eigen::VectorXd& target, int levels,
    const VanishOptions& options = {});

// Discrete path energy and its analytic gradient for the experiment's
// parameterization (intermediate fields f_1..f_{T-1}, endpoints fixed).
// Exposed for the gradient check test.
double vanish_path_energy(const InertiaOp& op,
                          const std::vector<Eigen::VectorXd>& f_path,
                          double dt);
std::vector<Eigen::VectorXd> vanish_path_energy_grad(
    const InertiaOp& op, const std::vector<Eigen::VectorXd>& f_path,
    double dt);

}  // namespace geoflow
