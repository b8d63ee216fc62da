#include <doctest.h>

#include <cmath>
#include <random>

#include "geoflow/kernels.hpp"

using namespace geoflow;

namespace {

const KernelSpec kSpecs[] = {
    {KernelFamily::Gaussian, 1.0},
    {KernelFamily::Gaussian, 0.7},
    {KernelFamily::Matern32, 1.3},
    {KernelFamily::Matern52, 0.9},
};

Eigen::VectorXd random_vec(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("gaussian closed-form values") {
  KernelSpec k{KernelFamily::Gaussian, 2.0};
  Eigen::VectorXd r(2);
  r << 1.0, 1.0;
  CHECK(kernel_eval(k, Eigen::VectorXd::Zero(2)) == doctest::Approx(1.0));
  CHECK(kernel_eval(k, r) == doctest::Approx(std::exp(-2.0 / 8.0)));
}

TEST_CASE("matern values at zero and symmetry") {
  for (const auto& k : kSpecs) {
    CHECK(kernel_radial(k, 0.0) == doctest::Approx(1.0));
    Eigen::VectorXd r(3);
    r << 0.4, -0.2, 0.9;
    CHECK(kernel_eval(k, r) == doctest::Approx(kernel_eval(k, (-r).eval())));
    CHECK((kernel_grad(k, r) + kernel_grad(k, (-r).eval())).norm() ==
          doctest::Approx(0.0));
  }
}

TEST_CASE("gradient matches central differences of kernel_eval") {
  std::mt19937_64 rng(11);
  const double h = 1e-5;
  for (const auto& k : kSpecs) {
    for (int n : {1, 2, 3}) {
      for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd r = random_vec(rng, n, k.sigma);
        if (r.norm() < 0.05 * k.sigma) continue;
        const Eigen::VectorXd g = kernel_grad(k, r);
        for (int a = 0; a < n; ++a) {
          Eigen::VectorXd rp = r, rm = r;
          rp[a] += h;
          rm[a] -= h;
          const double fd = (kernel_eval(k, rp) - kernel_eval(k, rm)) / (2 * h);
          CHECK(g[a] == doctest::Approx(fd).epsilon(1e-6));
        }
      }
    }
  }
}

TEST_CASE("hessian matches central differences of kernel_grad") {
  std::mt19937_64 rng(12);
  const double h = 1e-5;
  for (const auto& k : kSpecs) {
    for (int n : {1, 2}) {
      for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd r = random_vec(rng, n, k.sigma);
        if (r.norm() < 0.05 * k.sigma) continue;
        const Eigen::MatrixXd H = kernel_hess(k, r);
        CHECK((H - H.transpose()).norm() == doctest::Approx(0.0));
        for (int a = 0; a < n; ++a) {
          Eigen::VectorXd rp = r, rm = r;
          rp[a] += h;
          rm[a] -= h;
          const Eigen::VectorXd fd =
              (kernel_grad(k, rp) - kernel_grad(k, rm)) / (2 * h);
          CHECK((H.col(a) - fd).norm() < 1e-5);
        }
      }
    }
  }
}

TEST_CASE("matern gradient vanishes at the origin") {
  for (KernelFamily fam : {KernelFamily::Matern32, KernelFamily::Matern52}) {
    KernelSpec k{fam, 1.0};
    // |grad K| = |radial_g| * rho vanishes linearly as rho -> 0.
    CHECK(std::abs(kernel_radial_g(k, 1e-6) * 1e-6) < 1e-5);
    CHECK(std::abs(kernel_radial_g(k, 1e-8) * 1e-8) < 1e-7);
  }
}

TEST_CASE("kernel matrix is SPD and kernel_solve inverts it") {
  std::mt19937_64 rng(13);
  for (const auto& k : kSpecs) {
    Eigen::MatrixXd q(5, 2);
    for (int i = 0; i < 5; ++i) q.row(i) = random_vec(rng, 2, 2.0).transpose();
    const Eigen::MatrixXd K = kernel_matrix(k, q);
    CHECK((K - K.transpose()).norm() == doctest::Approx(0.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    const Eigen::MatrixXd B = Eigen::MatrixXd::Random(5, 3);
    const Eigen::MatrixXd X = kernel_solve(k, q, B);
    CHECK((K * X - B).norm() < 1e-10);
  }
}

TEST_CASE("kernel_solve with ridge solves the shifted system") {
  std::mt19937_64 rng(14);
  KernelSpec k{KernelFamily::Gaussian, 1.0};
  Eigen::MatrixXd q(4, 2);
  for (int i = 0; i < 4; ++i) q.row(i) = random_vec(rng, 2, 1.5).transpose();
  const double ridge = 1e-3;
  const Eigen::MatrixXd B = Eigen::MatrixXd::Random(4, 2);
  const Eigen::MatrixXd X = kernel_solve(k, q, B, ridge);
  const Eigen::MatrixXd K = kernel_matrix(k, q);
  CHECK(((K + ridge * Eigen::MatrixXd::Identity(4, 4)) * X - B).norm() < 1e-10);
}

TEST_CASE("coincident points are rejected") {
  KernelSpec k{KernelFamily::Gaussian, 1.0};
  Eigen::MatrixXd q(2, 2);
  q << 0.0, 0.0, 1e-10, 0.0;
  CHECK_THROWS_AS(validate_config(k, q), DegenerateConfig);
  CHECK_THROWS_AS(kernel_solve(k, q, Eigen::MatrixXd::Identity(2, 2)),
                  DomainError);
}

TEST_CASE("family names round trip") {
  for (const auto& k : kSpecs)
    CHECK(kernel_family_from_string(to_string(k.family)) == k.family);
  CHECK_THROWS(kernel_family_from_string("cauchy"));
}
