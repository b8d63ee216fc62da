#include "geoflow/curvature.hpp"

#include <cmath>

namespace geoflow {

Eigen::MatrixXd stress(const KernelSpec& k, const LandmarkConfig& q,
                       const Eigen::MatrixXd& alpha,
                       const Eigen::MatrixXd& beta) {
  const auto n_points = q.rows();
  const Eigen::MatrixXd as = sharp(k, q, alpha);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_points, q.cols());
  for (Eigen::Index i = 0; i < n_points; ++i)
    for (Eigen::Index j = 0; j < n_points; ++j) {
      if (i == j) continue;
      const Eigen::VectorXd g = kernel_grad(k, (q.row(i) - q.row(j)).transpose());
      d.row(i) += g.dot((as.row(i) - as.row(j)).transpose()) * beta.row(j);
    }
  return d;
}

Eigen::MatrixXd force(const KernelSpec& k, const LandmarkConfig& q,
                      const Eigen::MatrixXd& alpha,
                      const Eigen::MatrixXd& beta) {
  const auto n_points = q.rows();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n_points, q.cols());
  for (Eigen::Index i = 0; i < n_points; ++i)
    for (Eigen::Index j = 0; j < n_points; ++j) {
      if (i == j) continue;
      const Eigen::VectorXd g = kernel_grad(k, (q.row(i) - q.row(j)).transpose());
      const double w = 0.5 * (alpha.row(i).dot(beta.row(j)) +
                              beta.row(i).dot(alpha.row(j)));
      f.row(i) += w * g.transpose();
    }
  return f;
}

Eigen::MatrixXd bracket_sharp(const KernelSpec& k, const LandmarkConfig& q,
                              const Eigen::MatrixXd& alpha,
                              const Eigen::MatrixXd& beta) {
  // [X, Y]_k = (dY . X - dX . Y)_k for the kernel fields X = alpha#, Y = beta#
  // with frozen covectors; each directional derivative is a grad-K sum.
  const auto n_points = q.rows();
  const Eigen::MatrixXd X = sharp(k, q, alpha);
  const Eigen::MatrixXd Y = sharp(k, q, beta);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n_points, q.cols());
  for (Eigen::Index kk = 0; kk < n_points; ++kk)
    for (Eigen::Index i = 0; i < n_points; ++i) {
      if (kk == i) continue;
      const Eigen::VectorXd g =
          kernel_grad(k, (q.row(kk) - q.row(i)).transpose());
      b.row(kk) += g.dot((X.row(kk) - X.row(i)).transpose()) * beta.row(i) -
                   g.dot((Y.row(kk) - Y.row(i)).transpose()) * alpha.row(i);
    }
  return b;
}

namespace {
double pair_rows(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).sum();
}
}  // namespace

CurvatureReport sectional_numerator(const KernelSpec& k,
                                    const LandmarkConfig& q,
                                    const Eigen::MatrixXd& alpha,
                                    const Eigen::MatrixXd& beta) {
  const auto n_points = q.rows();
  const Eigen::MatrixXd km = kernel_matrix(k, q);
  const Eigen::MatrixXd as = km * alpha;
  const Eigen::MatrixXd bs = km * beta;

  const Eigen::MatrixXd Dab = stress(k, q, alpha, beta);
  const Eigen::MatrixXd Dba = stress(k, q, beta, alpha);
  const Eigen::MatrixXd Daa = stress(k, q, alpha, alpha);
  const Eigen::MatrixXd Dbb = stress(k, q, beta, beta);
  const Eigen::MatrixXd Fab = force(k, q, alpha, beta);
  const Eigen::MatrixXd Faa = force(k, q, alpha, alpha);
  const Eigen::MatrixXd Fbb = force(k, q, beta, beta);

  CurvatureTerms terms;
  terms.stress_force = pair_rows(Daa, Fbb) + pair_rows(Dbb, Faa) -
                       pair_rows(Dab + Dba, Fab);

  double d2k_sum = 0.0;
  for (Eigen::Index i = 0; i < n_points; ++i)
    for (Eigen::Index j = 0; j < n_points; ++j) {
      if (i == j) continue;
      const Eigen::MatrixXd h =
          kernel_hess(k, (q.row(i) - q.row(j)).transpose());
      const Eigen::VectorXd da = (as.row(i) - as.row(j)).transpose();
      const Eigen::VectorXd db = (bs.row(i) - bs.row(j)).transpose();
      d2k_sum += db.dot(h * db) * alpha.row(i).dot(alpha.row(j)) -
                 2.0 * db.dot(h * da) * beta.row(i).dot(alpha.row(j)) +
                 da.dot(h * da) * beta.row(i).dot(beta.row(j));
    }
  terms.d2k = 0.5 * d2k_sum;

  terms.force_norm = (Fab.transpose() * km * Fab).trace() -
                     (Faa.transpose() * km * Fbb).trace();

  const Eigen::MatrixXd b = Dab - Dba;  // the bracket [alpha#, beta#]
  Eigen::LLT<Eigen::MatrixXd> llt(km);
  if (llt.info() != Eigen::Success)
    throw DegenerateConfig("kernel matrix not positive definite");
  terms.oneill = -0.75 * (b.transpose() * llt.solve(b)).trace();

  CurvatureReport report;
  report.terms = terms;
  report.numerator =
      terms.stress_force + terms.d2k + terms.force_norm + terms.oneill;

  const double gaa = (alpha.transpose() * km * alpha).trace();
  const double gbb = (beta.transpose() * km * beta).trace();
  const double gab = (alpha.transpose() * km * beta).trace();
  report.denominator = gaa * gbb - gab * gab;
  if (report.denominator > 1e-12) {
    report.sectional = report.numerator / report.denominator;
    report.sectional_defined = true;
  }
  return report;
}

namespace {

using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

// Christoffel symbols at x via central differences of the metric;
// gamma[l](j,k) = Gamma^l_{jk}.
std::vector<Eigen::MatrixXd> christoffel(const MetricFn& metric_fn,
                                         const Eigen::VectorXd& x, double h) {
  const auto d = x.size();
  std::vector<Eigen::MatrixXd> dG(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    dG[i] = (metric_fn(xp) - metric_fn(xm)) / (2.0 * h);
  }
  const Eigen::MatrixXd ginv = metric_fn(x).inverse();
  std::vector<Eigen::MatrixXd> gamma(d, Eigen::MatrixXd::Zero(d, d));
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index kk = 0; kk < d; ++kk) {
        double sum = 0.0;
        for (Eigen::Index m = 0; m < d; ++m)
          sum += ginv(l, m) * (dG[j](m, kk) + dG[kk](m, j) - dG[m](j, kk));
        gamma[l](j, kk) = 0.5 * sum;
      }
  return gamma;
}

double fd_numerator_once(const MetricFn& metric_fn, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                         double h) {
  const auto d = x.size();
  const auto gamma0 = christoffel(metric_fn, x, h);
  // dgamma[i][l](j,k) = d_i Gamma^l_{jk}
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const auto gp = christoffel(metric_fn, xp, h);
    const auto gm = christoffel(metric_fn, xm, h);
    dgamma[i].resize(d);
    for (Eigen::Index l = 0; l < d; ++l)
      dgamma[i][l] = (gp[l] - gm[l]) / (2.0 * h);
  }
  const Eigen::MatrixXd g = metric_fn(x);
  // numerator g(R(X,Y)Y,X) with
  // R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
  //           + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
  double num = 0.0;
  for (Eigen::Index l = 0; l < d; ++l) {
    double rl = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index kk = 0; kk < d; ++kk) {
          double r = dgamma[i][l](j, kk) - dgamma[j][l](i, kk);
          for (Eigen::Index m = 0; m < d; ++m)
            r += gamma0[l](i, m) * gamma0[m](j, kk) -
                 gamma0[l](j, m) * gamma0[m](i, kk);
          rl += r * X[i] * Y[j] * Y[kk];
        }
    for (Eigen::Index m = 0; m < d; ++m) num += g(l, m) * rl * X[m];
  }
  return num;
}

}  // namespace

double fd_sectional_numerator(const MetricFn& metric_fn,
                              const Eigen::VectorXd& x,
                              const Eigen::VectorXd& X,
                              const Eigen::VectorXd& Y, double h,
                              double rich_tol) {
  const double v1 = fd_numerator_once(metric_fn, x, X, Y, h);
  const double v2 = fd_numerator_once(metric_fn, x, X, Y, 0.5 * h);
  const double scale = std::max({std::abs(v1), std::abs(v2), 1e-10});
  if (std::abs(v1 - v2) > rich_tol * scale)
    throw IllConditioned("FD Riemann numerator fails Richardson check");
  return (4.0 * v2 - v1) / 3.0;  // central differences are O(h^2)
}

double riemann_fd_oracle(const KernelSpec& k, const LandmarkConfig& q,
                         const Eigen::MatrixXd& P1, const Eigen::MatrixXd& P2,
                         double h) {
  const auto n_points = q.rows();
  const auto dim = q.cols();
  const auto d = n_points * dim;

  if (h <= 0.0) {
    double diameter = 0.0;
    for (Eigen::Index i = 0; i < n_points; ++i)
      for (Eigen::Index j = i + 1; j < n_points; ++j)
        diameter = std::max(diameter, (q.row(i) - q.row(j)).norm());
    h = 1e-4 * std::max(diameter, k.sigma);
  }

  const MetricFn metric_fn = [&](const Eigen::VectorXd& x) {
    LandmarkConfig qx(n_points, dim);
    for (Eigen::Index i = 0; i < n_points; ++i)
      for (Eigen::Index a = 0; a < dim; ++a) qx(i, a) = x[i * dim + a];
    const Eigen::MatrixXd kinv = kernel_matrix(k, qx).inverse();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < n_points; ++i)
      for (Eigen::Index j = 0; j < n_points; ++j)
        for (Eigen::Index a = 0; a < dim; ++a)
          g(i * dim + a, j * dim + a) = kinv(i, j);
    return g;
  };

  Eigen::VectorXd x(d), X(d), Y(d);
  for (Eigen::Index i = 0; i < n_points; ++i)
    for (Eigen::Index a = 0; a < dim; ++a) {
      x[i * dim + a] = q(i, a);
      X[i * dim + a] = P1(i, a);
      Y[i * dim + a] = P2(i, a);
    }
  return fd_sectional_numerator(metric_fn, x, X, Y, h);
}

}  // namespace geoflow
