#include "geoflow/kernels.hpp"

#include <cmath>

namespace geoflow {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt5 = 2.23606797749979;
}  // namespace

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "gaussian") return KernelFamily::Gaussian;
  if (name == "matern_3_2") return KernelFamily::Matern32;
  if (name == "matern_5_2") return KernelFamily::Matern52;
  throw std::invalid_argument("unknown kernel family: " + name);
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::Matern32: return "matern_3_2";
    case KernelFamily::Matern52: return "matern_5_2";
  }
  return "?";
}

double kernel_radial(const KernelSpec& k, double rho) {
  const double s = k.sigma;
  switch (k.family) {
    case KernelFamily::Gaussian:
      return std::exp(-rho * rho / (2.0 * s * s));
    case KernelFamily::Matern32: {
      const double a = kSqrt3 / s;
      return (1.0 + a * rho) * std::exp(-a * rho);
    }
    case KernelFamily::Matern52: {
      const double a = kSqrt5 / s;
      return (1.0 + a * rho + a * a * rho * rho / 3.0) * std::exp(-a * rho);
    }
  }
  return 0.0;
}

// grad K(r) = g(|r|) r with g smooth through rho = 0.
double kernel_radial_g(const KernelSpec& k, double rho) {
  const double s = k.sigma;
  switch (k.family) {
    case KernelFamily::Gaussian:
      return -kernel_radial(k, rho) / (s * s);
    case KernelFamily::Matern32: {
      const double a = kSqrt3 / s;
      return -a * a * std::exp(-a * rho);
    }
    case KernelFamily::Matern52: {
      const double a = kSqrt5 / s;
      return -(a * a / 3.0) * (1.0 + a * rho) * std::exp(-a * rho);
    }
  }
  return 0.0;
}

// hess K(r) = g(|r|) I + c(|r|) r r^T; c = g'(rho)/rho. For matern_3_2 the
// 1/rho factor stays bounded against r r^T, handled at rho = 0 below.
double kernel_radial_c(const KernelSpec& k, double rho) {
  const double s = k.sigma;
  switch (k.family) {
    case KernelFamily::Gaussian:
      return kernel_radial(k, rho) / (s * s * s * s);
    case KernelFamily::Matern32: {
      if (rho == 0.0) return 0.0;
      const double a = kSqrt3 / s;
      return a * a * a * std::exp(-a * rho) / rho;
    }
    case KernelFamily::Matern52: {
      const double a = kSqrt5 / s;
      return (a * a * a * a / 3.0) * std::exp(-a * rho);
    }
  }
  return 0.0;
}

double kernel_eval(const KernelSpec& k, const Eigen::VectorXd& r) {
  return kernel_radial(k, r.norm());
}

Eigen::VectorXd kernel_grad(const KernelSpec& k, const Eigen::VectorXd& r) {
  return kernel_radial_g(k, r.norm()) * r;
}

Eigen::MatrixXd kernel_hess(const KernelSpec& k, const Eigen::VectorXd& r) {
  const double rho = r.norm();
  const auto n = r.size();
  Eigen::MatrixXd h = kernel_radial_g(k, rho) *
                      Eigen::MatrixXd::Identity(n, n);
  if (rho > 0.0) h += kernel_radial_c(k, rho) * (r * r.transpose());
  return h;
}

void validate_config(const KernelSpec& k, const LandmarkConfig& q) {
  const auto n_points = q.rows();
  if (n_points < 1 || q.cols() < 1)
    throw std::invalid_argument("landmark configuration must be N>=1, n>=1");
  const double eps = min_separation(k);
  for (Eigen::Index i = 0; i < n_points; ++i)
    for (Eigen::Index j = i + 1; j < n_points; ++j)
      if ((q.row(i) - q.row(j)).norm() <= eps)
        throw DegenerateConfig("landmarks " + std::to_string(i) + " and " +
                               std::to_string(j) + " closer than " +
                               std::to_string(eps));
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& k, const LandmarkConfig& q) {
  validate_config(k, q);
  const auto n_points = q.rows();
  Eigen::MatrixXd m(n_points, n_points);
  for (Eigen::Index i = 0; i < n_points; ++i) {
    m(i, i) = kernel_radial(k, 0.0);
    for (Eigen::Index j = i + 1; j < n_points; ++j) {
      m(i, j) = kernel_radial(k, (q.row(i) - q.row(j)).norm());
      m(j, i) = m(i, j);
    }
  }
  return m;
}

Eigen::MatrixXd kernel_solve(const KernelSpec& k, const LandmarkConfig& q,
                             const Eigen::MatrixXd& rhs, double ridge) {
  Eigen::MatrixXd m = kernel_matrix(k, q);
  if (ridge > 0.0)
    m.diagonal().array() += ridge;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw DegenerateConfig("kernel matrix not positive definite");
  return llt.solve(rhs);
}

}  // namespace geoflow
