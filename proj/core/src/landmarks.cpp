#include "geoflow/landmarks.hpp"

#include <cmath>

namespace geoflow {

Integrator integrator_from_string(const std::string& name) {
  if (name == "rk4") return Integrator::RK4;
  if (name == "implicit_midpoint") return Integrator::ImplicitMidpoint;
  throw std::invalid_argument("unknown integrator: " + name);
}

std::string to_string(Integrator integrator) {
  switch (integrator) {
    case Integrator::RK4: return "rk4";
    case Integrator::ImplicitMidpoint: return "implicit_midpoint";
  }
  return "?";
}

double cometric(const KernelSpec& k, const LandmarkConfig& q,
                const Eigen::MatrixXd& alpha, const Eigen::MatrixXd& beta) {
  const Eigen::MatrixXd m = kernel_matrix(k, q);
  return (alpha.transpose() * m * beta).trace();
}

double metric(const KernelSpec& k, const LandmarkConfig& q,
              const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q) {
  return (P.transpose() * kernel_solve(k, q, Q)).trace();
}

Eigen::MatrixXd sharp(const KernelSpec& k, const LandmarkConfig& q,
                      const Eigen::MatrixXd& alpha) {
  return kernel_matrix(k, q) * alpha;
}

Eigen::MatrixXd flat(const KernelSpec& k, const LandmarkConfig& q,
                     const Eigen::MatrixXd& P) {
  return kernel_solve(k, q, P);
}

Eigen::VectorXd horizontal_lift(const KernelSpec& k, const LandmarkConfig& q,
                                const Eigen::MatrixXd& P,
                                const Eigen::VectorXd& x) {
  const Eigen::MatrixXd alpha = kernel_solve(k, q, P);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(q.cols());
  for (Eigen::Index i = 0; i < q.rows(); ++i)
    out += kernel_radial(k, (x.transpose() - q.row(i)).norm()) *
           alpha.row(i).transpose();
  return out;
}

double energy(const KernelSpec& k, const LandmarkConfig& q,
              const Eigen::MatrixXd& alpha) {
  return 0.5 * cometric(k, q, alpha, alpha);
}

StateDeriv hamiltonian_rhs(const KernelSpec& k, const LandmarkState& state) {
  const auto& q = state.q;
  const auto& alpha = state.alpha;
  const auto n_points = q.rows();
  StateDeriv d;
  d.dq = kernel_matrix(k, q) * alpha;
  d.dalpha = Eigen::MatrixXd::Zero(n_points, q.cols());
  // dalpha_k = -dE/dq_k = -sum_i grad K(q_k - q_i) <alpha_k, alpha_i>
  for (Eigen::Index i = 0; i < n_points; ++i) {
    for (Eigen::Index j = i + 1; j < n_points; ++j) {
      const Eigen::VectorXd r = q.row(i) - q.row(j);
      const Eigen::VectorXd g = kernel_grad(k, r);
      const double pairing = alpha.row(i).dot(alpha.row(j));
      d.dalpha.row(i) -= pairing * g.transpose();
      d.dalpha.row(j) += pairing * g.transpose();
    }
  }
  return d;
}

Eigen::MatrixXd geodesic_accel(const KernelSpec& k, const LandmarkConfig& q,
                               const Eigen::MatrixXd& qdot) {
  const auto n_points = q.rows();
  const Eigen::MatrixXd km = kernel_matrix(k, q);
  Eigen::LLT<Eigen::MatrixXd> llt(km);
  if (llt.info() != Eigen::Success)
    throw DegenerateConfig("kernel matrix not positive definite");
  const Eigen::MatrixXd alpha = llt.solve(qdot);  // alpha_i = sum_k Kinv_ik qdot_k

  Eigen::MatrixXd accel = Eigen::MatrixXd::Zero(n_points, q.cols());
  for (Eigen::Index n = 0; n < n_points; ++n) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(q.cols());
    for (Eigen::Index i = 0; i < n_points; ++i) {
      // transport term: <grad K(q_i - q_n), qdot_i - qdot_n> alpha_i
      const Eigen::VectorXd r_in = q.row(i) - q.row(n);
      const double along =
          kernel_grad(k, r_in).dot((qdot.row(i) - qdot.row(n)).transpose());
      row += along * alpha.row(i).transpose();
      // momentum-change term: -1/2 sum_j grad K(q_i-q_j)(K_in - K_jn) <a_i,a_j>
      for (Eigen::Index j = 0; j < n_points; ++j) {
        if (i == j) continue;
        const Eigen::VectorXd r_ij = q.row(i) - q.row(j);
        row -= 0.5 * (km(i, n) - km(j, n)) * alpha.row(i).dot(alpha.row(j)) *
               kernel_grad(k, r_ij);
      }
    }
    accel.row(n) = row.transpose();
  }
  return accel;
}

namespace {

LandmarkState axpy(const LandmarkState& y, double a, const StateDeriv& d) {
  return {y.q + a * d.dq, y.alpha + a * d.dalpha};
}

StateDeriv rk4_step(const KernelSpec& k, const LandmarkState& y, double dt) {
  const StateDeriv k1 = hamiltonian_rhs(k, y);
  const StateDeriv k2 = hamiltonian_rhs(k, axpy(y, 0.5 * dt, k1));
  const StateDeriv k3 = hamiltonian_rhs(k, axpy(y, 0.5 * dt, k2));
  const StateDeriv k4 = hamiltonian_rhs(k, axpy(y, dt, k3));
  return {(k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq) / 6.0,
          (k1.dalpha + 2.0 * k2.dalpha + 2.0 * k3.dalpha + k4.dalpha) / 6.0};
}

// Fixed-point iteration on the midpoint stage; the Hamiltonian is
// non-separable, so the stage is implicit in both q and alpha.
StateDeriv midpoint_step(const KernelSpec& k, const LandmarkState& y,
                         double dt) {
  StateDeriv d = hamiltonian_rhs(k, y);
  for (int it = 0; it < 100; ++it) {
    const StateDeriv dn = hamiltonian_rhs(k, axpy(y, 0.5 * dt, d));
    const double delta = (dn.dq - d.dq).norm() + (dn.dalpha - d.dalpha).norm();
    d = dn;
    if (delta < 1e-14) break;
  }
  return d;
}

}  // namespace

GeodesicPath shoot(const KernelSpec& k, const LandmarkState& state0, double T,
                   double dt, Integrator integrator) {
  if (!(dt > 0.0) || !(T > 0.0))
    throw std::invalid_argument("shoot requires T > 0 and dt > 0");
  GeodesicPath path;
  path.integrator = integrator;
  path.dt = dt;

  LandmarkState y = state0;
  const int steps = static_cast<int>(std::llround(T / dt));
  path.times.reserve(steps + 1);
  path.states.reserve(steps + 1);
  path.energy_trace.reserve(steps + 1);

  path.times.push_back(0.0);
  path.states.push_back(y);
  path.energy_trace.push_back(energy(k, y.q, y.alpha));

  for (int i = 0; i < steps; ++i) {
    try {
      const StateDeriv d = integrator == Integrator::RK4
                               ? rk4_step(k, y, dt)
                               : midpoint_step(k, y, dt);
      y = axpy(y, dt, d);
      path.energy_trace.push_back(energy(k, y.q, y.alpha));
    } catch (const DegenerateConfig&) {
      path.truncated = true;
      break;
    }
    path.times.push_back((i + 1) * dt);
    path.states.push_back(y);
  }
  return path;
}

}  // namespace geoflow
