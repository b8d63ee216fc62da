#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "geoflow/kernels.hpp"

namespace geoflow {

// Phase point of landmark dynamics: positions q and covectors alpha,
// both N x n with one landmark per row.
struct LandmarkState {
  Eigen::MatrixXd q;
  Eigen::MatrixXd alpha;
};

enum class Integrator { RK4, ImplicitMidpoint };

Integrator integrator_from_string(const std::string& name);
std::string to_string(Integrator integrator);

struct GeodesicPath {
  std::vector<double> times;
  std::vector<LandmarkState> states;
  Integrator integrator = Integrator::RK4;
  double dt = 0.0;
  std::vector<double> energy_trace;
  // Set when the integration hit a degenerate configuration and the path
  // was truncated before reaching the requested horizon.
  bool truncated = false;
};

// Riemannian metric g_q(P,Q) = sum_{k,l} K^{-1}(q)_{kl} <P_k, Q_l>.
double metric(const KernelSpec& k, const LandmarkConfig& q,
              const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q);

// Cometric g^{-1}_q(alpha,beta) = sum_{i,j} K(q)_{ij} <alpha_i, beta_j>.
double cometric(const KernelSpec& k, const LandmarkConfig& q,
                const Eigen::MatrixXd& alpha, const Eigen::MatrixXd& beta);

// sharp: covector -> tangent, P_k = sum_i K(q_k - q_i) alpha_i.
Eigen::MatrixXd sharp(const KernelSpec& k, const LandmarkConfig& q,
                      const Eigen::MatrixXd& alpha);

// flat: tangent -> covector, solves K(q) alpha = P.
Eigen::MatrixXd flat(const KernelSpec& k, const LandmarkConfig& q,
                     const Eigen::MatrixXd& P);

// Minimal-norm vector field inducing the landmark velocity P, evaluated at x:
// P_hor(x) = sum_{i,j} K(x - q_i) K^{-1}(q)_{ij} P_j.
Eigen::VectorXd horizontal_lift(const KernelSpec& k, const LandmarkConfig& q,
                                const Eigen::MatrixXd& P,
                                const Eigen::VectorXd& x);

// E(q, alpha) = 1/2 sum_{i,j} K(q)_{ij} <alpha_i, alpha_j>.
double energy(const KernelSpec& k, const LandmarkConfig& q,
              const Eigen::MatrixXd& alpha);

// Symplectic gradient of the energy:
//   dq_k     =  sum_i K(q_k - q_i) alpha_i
//   dalpha_k = -sum_i grad K(q_k - q_i) <alpha_k, alpha_i>
struct StateDeriv {
  Eigen::MatrixXd dq;
  Eigen::MatrixXd dalpha;
};
StateDeriv hamiltonian_rhs(const KernelSpec& k, const LandmarkState& state);

// Second-order vector form of the geodesic equation; returns qddot.
Eigen::MatrixXd geodesic_accel(const KernelSpec& k, const LandmarkConfig& q,
                               const Eigen::MatrixXd& qdot);

// Integrates the Hamiltonian system from state0 over [0, T] with fixed step
// dt, sampling every step. On a mid-flight landmark collision the path is
// truncated and flagged instead of throwing.
GeodesicPath shoot(const KernelSpec& k, const LandmarkState& state0, double T,
                   double dt, Integrator integrator = Integrator::RK4);

}  // namespace geoflow
