#pragma once

#include <Eigen/Dense>
#include <string>

#include "geoflow/errors.hpp"

namespace geoflow {

// Translation-invariant scalar kernels K(r) = k(|r|) with analytic gradient
// and Hessian. The kernel matrix K(q)_{ij} = K(q_i - q_j) acts blockwise on
// R^n-valued vectors and defines the cometric on landmark space.

enum class KernelFamily { Gaussian, Matern32, Matern52 };

KernelFamily kernel_family_from_string(const std::string& name);
std::string to_string(KernelFamily family);

struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double sigma = 1.0;  // positive length scale
};

// Landmark configurations are stored as N x n matrices, one point per row.
using LandmarkConfig = Eigen::MatrixXd;

// Minimum pairwise separation below which a configuration is degenerate.
inline double min_separation(const KernelSpec& k) { return 1e-8 * k.sigma; }

// Throws DegenerateConfig if two points are closer than min_separation.
void validate_config(const KernelSpec& k, const LandmarkConfig& q);

double kernel_eval(const KernelSpec& k, const Eigen::VectorXd& r);
Eigen::VectorXd kernel_grad(const KernelSpec& k, const Eigen::VectorXd& r);
Eigen::MatrixXd kernel_hess(const KernelSpec& k, const Eigen::VectorXd& r);

// Radial profile k(rho) and the smooth factors used by grad/hess:
//   grad K(r) = radial_g(|r|) * r,   hess K(r) = radial_g(|r|) I + radial_c(|r|) r r^T.
// Exposed for tests that sweep the profiles directly.
double kernel_radial(const KernelSpec& k, double rho);
double kernel_radial_g(const KernelSpec& k, double rho);
double kernel_radial_c(const KernelSpec& k, double rho);

// N x N matrix K(q)_{ij} = K(q_i - q_j); symmetric positive definite for
// distinct points.
Eigen::MatrixXd kernel_matrix(const KernelSpec& k, const LandmarkConfig& q);

// Solves K(q) X = rhs through a Cholesky factorization. An optional ridge
// (opt-in, default 0) adds ridge*I before factorizing.
Eigen::MatrixXd kernel_solve(const KernelSpec& k, const LandmarkConfig& q,
                             const Eigen::MatrixXd& rhs, double ridge = 0.0);

}  // namespace geoflow
