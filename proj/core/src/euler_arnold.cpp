#include "geoflow/euler_arnold.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace geoflow {

namespace {

void check_grid(const InertiaOp& op, const Eigen::VectorXd& u) {
  if (!is_power_of_two(op.m))
    throw std::invalid_argument("grid size must be a power of two");
  if (u.size() != op.m)
    throw std::invalid_argument("field size does not match operator grid");
}

Eigen::VectorXd apply_multiplier(const Eigen::VectorXd& u, double s) {
  const int m = static_cast<int>(u.size());
  Spectrum c = spectral_forward(u);
  for (int k = 0; k <= m / 2; ++k)
    c[k] *= std::pow(1.0 + double(k) * double(k), s);
  return spectral_inverse(c, m);
}

}  // namespace

Eigen::VectorXd lie_bracket(const Eigen::VectorXd& X,
                            const Eigen::VectorXd& Y) {
  // negative of the usual vector-field bracket
  return dealiased_product(spectral_derivative(X), Y) -
         dealiased_product(X, spectral_derivative(Y));
}

Eigen::VectorXd inertia_apply(const InertiaOp& op, const Eigen::VectorXd& u) {
  check_grid(op, u);
  return apply_multiplier(u, op.s);
}

Eigen::VectorXd inertia_invert(const InertiaOp& op, const Eigen::VectorXd& m) {
  check_grid(op, m);
  return apply_multiplier(m, -op.s);
}

double metric_at_id(const InertiaOp& op, const Eigen::VectorXd& X,
                    const Eigen::VectorXd& Y) {
  check_grid(op, X);
  check_grid(op, Y);
  return (inertia_apply(op, X).array() * Y.array()).mean();
}

Eigen::VectorXd ad_star(const Eigen::VectorXd& u, const Eigen::VectorXd& m) {
  return dealiased_product(u, spectral_derivative(m)) +
         2.0 * dealiased_product(spectral_derivative(u), m);
}

Eigen::VectorXd ea_rhs(const InertiaOp& op, const Eigen::VectorXd& u) {
  check_grid(op, u);
  return -inertia_invert(op, ad_star(u, inertia_apply(op, u)));
}

EaTrajectory ea_evolve(const InertiaOp& op, const Eigen::VectorXd& u0,
                       double T, double dt, double tail_cap) {
  check_grid(op, u0);
  EaTrajectory traj;
  Eigen::VectorXd u = u0;
  const int steps = static_cast<int>(std::llround(T / dt));
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.fields.push_back(u);
    traj.energy.push_back(metric_at_id(op, u, u));
    traj.mean_momentum.push_back(inertia_apply(op, u).mean());
  };
  record(0.0);
  for (int i = 0; i < steps; ++i) {
    const Eigen::VectorXd k1 = ea_rhs(op, u);
    const Eigen::VectorXd k2 = ea_rhs(op, u + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = ea_rhs(op, u + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = ea_rhs(op, u + dt * k3);
    u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (spectral_tail_fraction(u) > tail_cap)
      throw BlowUp("spectral tail exceeded cap at t = " +
                   std::to_string((i + 1) * dt));
    record((i + 1) * dt);
  }
  return traj;
}

Eigen::VectorXd rho(const InertiaOp& op, const Eigen::VectorXd& xi,
                    const Eigen::VectorXd& eta) {
  check_grid(op, xi);
  check_grid(op, eta);
  return 0.5 * inertia_invert(op, ad_star(xi, inertia_apply(op, eta)) +
                                      ad_star(eta, inertia_apply(op, xi)));
}

double sectional_numerator_id(const InertiaOp& op, const Eigen::VectorXd& X,
                              const Eigen::VectorXd& Y) {
  const Eigen::VectorXd rxx = rho(op, X, X);
  const Eigen::VectorXd ryy = rho(op, Y, Y);
  const Eigen::VectorXd rxy = rho(op, X, Y);
  const Eigen::VectorXd bxy = lie_bracket(X, Y);
  return metric_at_id(op, rxx, ryy) - metric_at_id(op, rxy, rxy) +
         0.75 * metric_at_id(op, bxy, bxy) - metric_at_id(op, rxy, bxy) +
         metric_at_id(op, Y, lie_bracket(X, bxy));
}

namespace {
Eigen::VectorXd ad_transpose(const InertiaOp& op, const Eigen::VectorXd& X,
                             const Eigen::VectorXd& Y) {
  return inertia_invert(op, ad_star(X, inertia_apply(op, Y)));
}
}  // namespace

double arnold_numerator_id(const InertiaOp& op, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y) {
  if (op.s < 1.0)
    throw OrderTooLow("ad-transpose requires Sobolev order s >= 1");
  const Eigen::VectorXd txy = ad_transpose(op, X, Y);
  const Eigen::VectorXd tyx = ad_transpose(op, Y, X);
  const Eigen::VectorXd txx = ad_transpose(op, X, X);
  const Eigen::VectorXd tyy = ad_transpose(op, Y, Y);
  const Eigen::VectorXd bxy = lie_bracket(X, Y);
  const Eigen::VectorXd sum = txy + tyx;
  const Eigen::VectorXd diff = txy - tyx;
  return -0.25 * metric_at_id(op, sum, sum) + metric_at_id(op, txx, tyy) +
         0.5 * metric_at_id(op, diff, bxy) +
         0.75 * metric_at_id(op, bxy, bxy);
}

double path_energy(const InertiaOp& op,
                   const std::vector<Eigen::VectorXd>& path, double dt) {
  double e = 0.0;
  for (const auto& u : path) e += 0.5 * dt * metric_at_id(op, u, u);
  return e;
}

// ---------------------------------------------------------------------------
// Path-length minimization experiment on Diff(S^1).
//
// A path is a sequence of displacement fields f_0 = 0, ..., f_T = target with
// phi_i = Id + f_i. The segment velocity in the group is h = (f_{i+1}-f_i)/dt
// and u = h o phi^{-1}; substituting x = phi(y) turns the metric into grid
// quadratures without inverting phi:
//   s = 0:  int u^2 dx           = oint h^2 phi' dy
//   s = 1:  int u^2 + u_x^2 dx   = oint h^2 phi' + (h')^2 / phi' dy

namespace {

struct SegmentQuantities {
  Eigen::VectorXd h, dh, phip;
  double gamma;  // metric value gamma(u, u)
};

constexpr double kMinSlope = 1e-6;

bool segment(const InertiaOp& op, const Eigen::VectorXd& fa,
             const Eigen::VectorXd& fb, double dt, SegmentQuantities& out) {
  out.h = (fb - fa) / dt;
  out.phip = (1.0 + spectral_derivative(fa).array()).matrix();
  if (out.phip.minCoeff() < kMinSlope) return false;
  Eigen::ArrayXd integrand = out.h.array().square() * out.phip.array();
  if (op.s == 1.0) {
    out.dh = spectral_derivative(out.h);
    integrand += out.dh.array().square() / out.phip.array();
  }
  out.gamma = integrand.mean();
  return true;
}

}  // namespace

double vanish_path_energy(const InertiaOp& op,
                          const std::vector<Eigen::VectorXd>& f_path,
                          double dt) {
  if (op.s != 0.0 && op.s != 1.0)
    throw OrderTooLow("experiment supports s in {0, 1}");
  double e = 0.0;
  SegmentQuantities sq;
  for (size_t i = 0; i + 1 < f_path.size(); ++i) {
    if (!segment(op, f_path[i], f_path[i + 1], dt, sq))
      return std::numeric_limits<double>::infinity();
    e += 0.5 * dt * sq.gamma;
  }
  return e;
}

std::vector<Eigen::VectorXd> vanish_path_energy_grad(
    const InertiaOp& op, const std::vector<Eigen::VectorXd>& f_path,
    double dt) {
  const size_t frames = f_path.size();
  const int m = op.m;
  const double inv_m = 1.0 / m;
  std::vector<Eigen::VectorXd> grad(frames, Eigen::VectorXd::Zero(m));
  SegmentQuantities sq;
  for (size_t i = 0; i + 1 < frames; ++i) {
    if (!segment(op, f_path[i], f_path[i + 1], dt, sq))
      throw std::invalid_argument("infeasible path in gradient evaluation");
    // via H: d/df_{i+1} = +1/dt, d/df_i = -1/dt; spectral D is antisymmetric
    Eigen::VectorXd via_h =
        inv_m * (sq.h.array() * sq.phip.array()).matrix();
    if (op.s == 1.0)
      via_h -= inv_m * spectral_derivative(
                           (sq.dh.array() / sq.phip.array()).matrix());
    grad[i + 1] += via_h;
    grad[i] -= via_h;
    // via phi' = 1 + D f_i
    Eigen::VectorXd via_phip =
        -0.5 * dt * inv_m *
        spectral_derivative(sq.h.array().square().matrix());
    if (op.s == 1.0)
      via_phip += 0.5 * dt * inv_m *
                  spectral_derivative((sq.dh.array().square() /
                                       sq.phip.array().square())
                                          .matrix());
    grad[i] += via_phip;
  }
  grad.front().setZero();
  grad.back().setZero();
  return grad;
}

namespace {

struct DescentOutcome {
  double energy = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// Gradient descent with backtracking line search (growth on success).
DescentOutcome minimize_path(const InertiaOp& op,
                             std::vector<Eigen::VectorXd>& f, double dt,
                             const VanishOptions& options) {
  DescentOutcome out;
  out.energy = vanish_path_energy(op, f, dt);
  if (!std::isfinite(out.energy)) return out;
  double step_size = 0.1;
  for (; out.iterations < options.max_iterations; ++out.iterations) {
    const auto g = vanish_path_energy_grad(op, f, dt);
    double gnorm2 = 0.0;
    for (const auto& gi : g) gnorm2 += gi.squaredNorm();
    if (gnorm2 == 0.0) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      std::vector<Eigen::VectorXd> trial = f;
      for (size_t i = 0; i < f.size(); ++i) trial[i] -= step_size * g[i];
      const double et = vanish_path_energy(op, trial, dt);
      if (et < out.energy) {
        const double decrease = (out.energy - et) / std::max(out.energy, 1e-300);
        f = std::move(trial);
        out.energy = et;
        step_size *= 1.5;
        accepted = true;
        if (decrease < options.tol) out.converged = true;
        break;
      }
      step_size *= 0.5;
    }
    if (!accepted || out.converged) break;
  }
  return out;
}

// Evaluate the trigonometric interpolant of the half-spectrum c at a point y.
double trig_interp(const Spectrum& c, int m, double y) {
  double v = c[0].real();
  for (int k = 1; k < m / 2; ++k) {
    const std::complex<double> e(std::cos(k * y), std::sin(k * y));
    v += 2.0 * (c[k] * e).real();
  }
  v += c[m / 2].real() * std::cos(0.5 * m * y);
  return v;
}

}  // namespace

std::vector<VanishLevelResult> vanish_distance_experiment(
    const InertiaOp& op, const Eigen::VectorXd& target, int levels,
    const VanishOptions& options) {
  check_grid(op, target);
  if (op.s != 0.0 && op.s != 1.0)
    throw OrderTooLow("experiment supports s in {0, 1}");
  std::vector<VanishLevelResult> table;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  const double two_pi = 2.0 * std::numbers::pi;
  const Spectrum base = spectral_forward(target);

  for (int level = 1; level <= levels; ++level) {
    const int steps = level * options.base_steps;
    const double dt = 1.0 / steps;

    // Level-l endpoint: the base displacement profile concentrated about
    // x = pi by the factor l, with height scaled by l^(-1/2). This keeps the
    // order-1 Sobolev size of the displacement fixed while its L2 size
    // decays like 1/l, so the minimized s=0 length can shrink with the level
    // while the s=1 length is pinned by the slope term.
    Eigen::VectorXd goal = Eigen::VectorXd::Zero(op.m);
    const double height = 1.0 / std::sqrt(double(level));
    for (int j = 0; j < op.m; ++j) {
      const double w =
          std::remainder(two_pi * j / op.m - std::numbers::pi, two_pi);
      if (std::abs(w) * level <= std::numbers::pi)
        goal[j] =
            height * trig_interp(base, op.m, std::numbers::pi + level * w);
    }

    // Linear interpolation plus a smooth seeded jitter that vanishes at the
    // endpoints, to break the symmetry of the straight path.
    std::vector<Eigen::VectorXd> f(steps + 1, Eigen::VectorXd::Zero(op.m));
    const double amp =
        options.init_jitter * std::max(goal.cwiseAbs().maxCoeff(), 1e-3);
    for (int i = 0; i <= steps; ++i) {
      f[i] = (double(i) / steps) * goal;
      const double envelope = std::sin(std::numbers::pi * double(i) / steps);
      for (int mode = 1; mode <= 3; ++mode) {
        const double a = amp * envelope * gauss(rng);
        const double b = amp * envelope * gauss(rng);
        for (int j = 0; j < op.m; ++j) {
          const double x = two_pi * j / op.m;
          f[i][j] += a * std::sin(mode * x) + b * std::cos(mode * x);
        }
      }
    }

    const DescentOutcome out = minimize_path(op, f, dt, options);

    // Report the path length sum_i dt * sqrt(gamma_i) at the optimum.
    double length = 0.0;
    SegmentQuantities sq;
    for (int i = 0; i < steps; ++i) {
      segment(op, f[i], f[i + 1], dt, sq);
      length += dt * std::sqrt(std::max(sq.gamma, 0.0));
    }
    table.push_back({level, steps, length, out.iterations, out.converged});
  }
  return table;
}

}  // namespace geoflow
