#include "geoflow/matching.hpp"

#include <cmath>

namespace geoflow {

LandmarkConfig endpoint(const KernelSpec& k, const LandmarkConfig& q0,
                        const Eigen::MatrixXd& alpha0, double dt,
                        Integrator integrator) {
  const GeodesicPath path = shoot(k, {q0, alpha0}, 1.0, dt, integrator);
  if (path.truncated)
    throw DegenerateConfig("geodesic hit a landmark collision before t = 1");
  return path.states.back().q;
}

namespace {

// Residual vector of the least-squares objective. Exact mode: endpoint
// mismatch only. Inexact mode: sqrt(lambda) * mismatch stacked with the
// Cholesky square root of the path energy 1/2 alpha^T K(q0) alpha.
Eigen::VectorXd residual(const MatchProblem& p, const Eigen::MatrixXd& chol_l,
                         const Eigen::MatrixXd& alpha0) {
  const auto n_points = p.q0.rows();
  const auto dim = p.q0.cols();
  const Eigen::MatrixXd qT =
      endpoint(p.kernel, p.q0, alpha0, p.dt, p.integrator);
  const Eigen::MatrixXd mismatch = qT - p.q1;
  const double w =
      p.mode == MatchMode::Inexact ? std::sqrt(p.lambda) : 1.0;
  const Eigen::Index n_mis = n_points * dim;
  const Eigen::Index n_res =
      p.mode == MatchMode::Inexact ? 2 * n_mis : n_mis;
  Eigen::VectorXd r(n_res);
  for (Eigen::Index i = 0; i < n_points; ++i)
    for (Eigen::Index a = 0; a < dim; ++a)
      r[i * dim + a] = w * mismatch(i, a);
  if (p.mode == MatchMode::Inexact) {
    // 1/2 |L^T alpha|^2 = energy; residual rows sqrt(1/2) L^T alpha
    const Eigen::MatrixXd e = chol_l.transpose() * alpha0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < n_points; ++i)
      for (Eigen::Index a = 0; a < dim; ++a)
        r[n_mis + i * dim + a] = e(i, a);
  }
  return r;
}

Eigen::MatrixXd unflatten(const Eigen::VectorXd& v, Eigen::Index n_points,
                          Eigen::Index dim) {
  Eigen::MatrixXd m(n_points, dim);
  for (Eigen::Index i = 0; i < n_points; ++i)
    for (Eigen::Index a = 0; a < dim; ++a) m(i, a) = v[i * dim + a];
  return m;
}

}  // namespace

MatchResult match(const MatchProblem& p) {
  if (p.q0.rows() != p.q1.rows() || p.q0.cols() != p.q1.cols())
    throw std::invalid_argument("q0 and q1 must agree in N and n");
  validate_config(p.kernel, p.q0);
  const auto n_points = p.q0.rows();
  const auto dim = p.q0.cols();
  const Eigen::Index n_var = n_points * dim;

  const Eigen::MatrixXd km = kernel_matrix(p.kernel, p.q0);
  Eigen::LLT<Eigen::MatrixXd> llt(km);
  if (llt.info() != Eigen::Success)
    throw DegenerateConfig("kernel matrix not positive definite");
  const Eigen::MatrixXd chol_l = llt.matrixL();

  // Linearized (small-displacement) initialization.
  Eigen::MatrixXd alpha = llt.solve(p.q1 - p.q0);

  Eigen::VectorXd r = residual(p, chol_l, alpha);
  double cost = 0.5 * r.squaredNorm();

  MatchResult best;
  best.alpha0 = alpha;
  best.endpoint_error =
      (endpoint(p.kernel, p.q0, alpha, p.dt, p.integrator) - p.q1).norm();
  best.path_energy = energy(p.kernel, p.q0, alpha);

  const double fd_rel = 1e-6;
  double mu = 1e-8;  // Levenberg damping, adapted multiplicatively
  double grad_norm = std::numeric_limits<double>::infinity();

  int it = 0;
  for (; it < p.max_iterations; ++it) {
    if (r.norm() < std::sqrt(p.tol)) {
      best.converged = true;
      break;
    }
    // Forward-difference Jacobian, one shoot per momentum component.
    Eigen::MatrixXd jac(r.size(), n_var);
    for (Eigen::Index c = 0; c < n_var; ++c) {
      const double step =
          fd_rel * std::max(1.0, std::abs(alpha(c / dim, c % dim)));
      Eigen::MatrixXd ap = alpha;
      ap(c / dim, c % dim) += step;
      jac.col(c) = (residual(p, chol_l, ap) - r) / step;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    grad_norm = jtr.norm();
    if (jtr.norm() < p.tol) {
      best.converged = true;
      break;
    }

    bool accepted = false;
    for (int damp = 0; damp < 25; ++damp) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += mu;
      const Eigen::VectorXd delta = a.ldlt().solve(-jtr);
      const Eigen::MatrixXd trial = alpha + unflatten(delta, n_points, dim);
      Eigen::VectorXd rt;
      try {
        rt = residual(p, chol_l, trial);
      } catch (const DegenerateConfig&) {
        mu *= 10.0;
        continue;
      }
      const double ct = 0.5 * rt.squaredNorm();
      if (ct < cost) {
        alpha = trial;
        r = rt;
        cost = ct;
        mu = std::max(mu * 0.25, 1e-12);
        accepted = true;
        break;
      }
      mu *= 10.0;
    }
    if (!accepted) break;  // stalled
  }

  best.alpha0 = alpha;
  best.iterations = it;
  best.endpoint_error =
      (endpoint(p.kernel, p.q0, alpha, p.dt, p.integrator) - p.q1).norm();
  best.path_energy = energy(p.kernel, p.q0, alpha);
  if (!best.converged)
    best.converged = r.norm() < std::sqrt(p.tol) ||
                     grad_norm < 1e-6 * std::max(1.0, cost) ||
                     (p.mode == MatchMode::Exact && best.endpoint_error < 1e-8);
  return best;
}

}  // namespace geoflow
