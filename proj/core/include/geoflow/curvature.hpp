#pragma once

#include <Eigen/Dense>
#include <functional>

#include "geoflow/landmarks.hpp"

namespace geoflow {

// Stress, force, and the sectional-curvature numerator on landmark space,
// organized through the cotangent bundle, plus an independent coordinate
// Riemann-tensor oracle driven by finite differences of the metric.

// Stress D(alpha,beta): i-th row is sum_j <grad K(q_i-q_j), a#_i - a#_j> beta_j
// with a# = sharp(alpha).
Eigen::MatrixXd stress(const KernelSpec& k, const LandmarkConfig& q,
                       const Eigen::MatrixXd& alpha,
                       const Eigen::MatrixXd& beta);

// Force F(alpha,beta): i-th row is
// 1/2 sum_j grad K(q_i-q_j) (<alpha_i,beta_j> + <beta_i,alpha_j>);
// equals half the q-gradient of the cometric.
Eigen::MatrixXd force(const KernelSpec& k, const LandmarkConfig& q,
                      const Eigen::MatrixXd& alpha,
                      const Eigen::MatrixXd& beta);

// Lie bracket [alpha#, beta#] of the two kernel vector fields, written as
// directional-derivative sums (algebraically D(alpha,beta) - D(beta,alpha)).
Eigen::MatrixXd bracket_sharp(const KernelSpec& k, const LandmarkConfig& q,
                              const Eigen::MatrixXd& alpha,
                              const Eigen::MatrixXd& beta);

struct CurvatureTerms {
  double stress_force = 0.0;  // <D(a,a),F(b,b)> + <D(b,b),F(a,a)> - <D(a,b)+D(b,a),F(a,b)>
  double d2k = 0.0;           // 1/2 sum_{i,j} of the three d^2K contractions
  double force_norm = 0.0;    // |F(a,b)|^2_{g^-1} - g^-1(F(a,a),F(b,b))
  double oneill = 0.0;        // -3/4 |[a#,b#]|^2_g, always <= 0
};

struct CurvatureReport {
  double numerator = 0.0;
  double denominator = 0.0;  // squared area of the plane span(a#, b#)
  double sectional = 0.0;
  bool sectional_defined = false;  // false when denominator below tolerance
  CurvatureTerms terms;
};

// Numerator of sectional curvature on the plane spanned by alpha#, beta#,
// evaluated term by term. Sign convention: equals g(R(X,Y)Y,X) for
// X = alpha#, Y = beta# (positive on positively curved planes).
CurvatureReport sectional_numerator(const KernelSpec& k,
                                    const LandmarkConfig& q,
                                    const Eigen::MatrixXd& alpha,
                                    const Eigen::MatrixXd& beta);

// Generic coordinate-chart sectional numerator g(R(X,Y)Y,X) for a metric
// given as a callback x -> G(x) (d x d SPD), via central finite differences
// of the Christoffel symbols. Step h is the base step; a Richardson halving
// estimates the FD error and IllConditioned is thrown above rich_tol.
double fd_sectional_numerator(
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& metric_fn,
    const Eigen::VectorXd& x, const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
    double h, double rich_tol = 1e-2);

// Landmark instantiation of the FD oracle: the flat chart is (R^n)^N and the
// metric matrix is K^{-1}(q) acting blockwise. P1, P2 are tangent vectors
// (N x n). Step defaults to 1e-4 times the configuration diameter.
double riemann_fd_oracle(const KernelSpec& k, const LandmarkConfig& q,
                         const Eigen::MatrixXd& P1, const Eigen::MatrixXd& P2,
                         double h = 0.0);

}  // namespace geoflow
