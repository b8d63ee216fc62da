#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "geoflow/curvature.hpp"
#include "geoflow/euler_arnold.hpp"
#include "geoflow/hunter_saxton.hpp"
#include "geoflow/landmarks.hpp"

using namespace geoflow;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols,
                              double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

void BM_shoot(benchmark::State& state) {
  const int n_points = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const KernelSpec k{KernelFamily::Gaussian, 1.0};
  const Eigen::MatrixXd q = 3.0 * random_matrix(rng, n_points, 2, 1.0);
  const Eigen::MatrixXd alpha = random_matrix(rng, n_points, 2, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shoot(k, {q, alpha}, 1.0, 1e-2));
  }
}
BENCHMARK(BM_shoot)->Arg(5)->Arg(20)->Arg(50);

void BM_sectional_numerator(benchmark::State& state) {
  const int n_points = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const KernelSpec k{KernelFamily::Gaussian, 1.0};
  const Eigen::MatrixXd q = 3.0 * random_matrix(rng, n_points, 2, 1.0);
  const Eigen::MatrixXd a = random_matrix(rng, n_points, 2, 1.0);
  const Eigen::MatrixXd b = random_matrix(rng, n_points, 2, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sectional_numerator(k, q, a, b));
  }
}
BENCHMARK(BM_sectional_numerator)->Arg(4)->Arg(16)->Arg(32);

void BM_ea_rhs(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Eigen::VectorXd u(m);
  for (int j = 0; j < m; ++j)
    u[j] = std::sin(2.0 * std::numbers::pi * j / m);
  const InertiaOp op{1.0, m};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ea_rhs(op, u));
  }
}
BENCHMARK(BM_ea_rhs)->Arg(128)->Arg(512)->Arg(2048);

void BM_hs_pde_rhs(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const LineGrid grid{-10.0, 10.0, m};
  Eigen::VectorXd u(m);
  for (int j = 0; j < m; ++j) {
    const double x = grid.node(j);
    u[j] = std::abs(x) < 2.0 ? std::exp(1.0 - 1.0 / (1.0 - x * x / 4.0)) : 0.0;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(hs_pde_rhs(grid, u));
  }
}
BENCHMARK(BM_hs_pde_rhs)->Arg(512)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
