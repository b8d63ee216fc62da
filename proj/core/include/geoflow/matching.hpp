#pragma once

#include <Eigen/Dense>

#include "geoflow/landmarks.hpp"

namespace geoflow {

// Boundary-value geodesic matching: find initial momenta alpha0 so the
// geodesic from q0 reaches q1 (exact) or minimizes energy plus a weighted
// endpoint mismatch (inexact).

enum class MatchMode { Exact, Inexact };

struct MatchProblem {
  LandmarkConfig q0;
  LandmarkConfig q1;
  KernelSpec kernel;
  MatchMode mode = MatchMode::Exact;
  double lambda = 1.0;  // mismatch weight, inexact mode only
  double dt = 1e-2;     // shooting step; horizon is fixed at T = 1
  Integrator integrator = Integrator::RK4;
  int max_iterations = 200;
  double tol = 1e-10;  // on the squared objective decrease / residual norm
};

struct MatchResult {
  Eigen::MatrixXd alpha0;
  double endpoint_error = 0.0;  // |endpoint(alpha0) - q1| (Frobenius)
  double path_energy = 0.0;     // energy(q0, alpha0), conserved along the path
  int iterations = 0;
  bool converged = false;
};

// q-component at t = 1 of the geodesic shot from (q0, alpha0).
LandmarkConfig endpoint(const KernelSpec& k, const LandmarkConfig& q0,
                        const Eigen::MatrixXd& alpha0, double dt = 1e-2,
                        Integrator integrator = Integrator::RK4);

// Damped Gauss-Newton with finite-difference Jacobians, initialized at
// alpha0 = flat(q1 - q0). Returns the best iterate with converged = false
// instead of throwing when the iteration cap is hit or the line search stalls.
MatchResult match(const MatchProblem& problem);

}  // namespace geoflow
