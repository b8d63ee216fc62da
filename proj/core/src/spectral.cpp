#include "geoflow/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace geoflow {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

namespace {

// Cached FFTW plans per grid size. FFTW planning is not thread-safe, so the
// cache is guarded; execution on private buffers is safe.
struct Plans {
  int m;
  std::vector<double> real;
  std::vector<fftw_complex> cplx;
  fftw_plan fwd;
  fftw_plan bwd;

  explicit Plans(int m_) : m(m_), real(m_), cplx(m_ / 2 + 1) {
    fwd = fftw_plan_dft_r2c_1d(m, real.data(), cplx.data(), FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(m, cplx.data(), real.data(), FFTW_ESTIMATE);
  }
  ~Plans() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
};

std::mutex plans_mutex;

Plans& plans_for(int m) {
  static std::map<int, Plans*> cache;
  std::lock_guard lock(plans_mutex);
  auto it = cache.find(m);
  if (it == cache.end())
    it = cache.emplace(m, new Plans(m)).first;
  return *it->second;
}

}  // namespace

Spectrum spectral_forward(const Eigen::VectorXd& u) {
  const int m = static_cast<int>(u.size());
  Plans& p = plans_for(m);
  std::lock_guard lock(plans_mutex);
  for (int j = 0; j < m; ++j) p.real[j] = u[j];
  fftw_execute(p.fwd);
  Spectrum c(m / 2 + 1);
  for (int k = 0; k <= m / 2; ++k)
    c[k] = std::complex<double>(p.cplx[k][0], p.cplx[k][1]) / double(m);
  return c;
}

Eigen::VectorXd spectral_inverse(const Spectrum& c, int m) {
  if (c.size() != m / 2 + 1)
    throw std::invalid_argument("spectrum size does not match grid size");
  Plans& p = plans_for(m);
  std::lock_guard lock(plans_mutex);
  for (int k = 0; k <= m / 2; ++k) {
    p.cplx[k][0] = c[k].real();
    p.cplx[k][1] = c[k].imag();
  }
  fftw_execute(p.bwd);
  Eigen::VectorXd u(m);
  for (int j = 0; j < m; ++j) u[j] = p.real[j];
  return u;
}

Eigen::VectorXd spectral_derivative(const Eigen::VectorXd& u, int order) {
  const int m = static_cast<int>(u.size());
  Spectrum c = spectral_forward(u);
  const std::complex<double> I(0.0, 1.0);
  for (int k = 0; k <= m / 2; ++k)
    c[k] *= std::pow(I * double(k), order);
  if (order % 2 == 1) c[m / 2] = 0.0;  // unmatched Nyquist mode
  return spectral_inverse(c, m);
}

Eigen::VectorXd dealiased_product(const Eigen::VectorXd& a,
                                  const Eigen::VectorXd& b) {
  const int m = static_cast<int>(a.size());
  if (b.size() != m)
    throw std::invalid_argument("dealiased_product size mismatch");
  const int mf = 3 * m / 2;
  const Spectrum ca = spectral_forward(a);
  const Spectrum cb = spectral_forward(b);
  Spectrum pa = Spectrum::Zero(mf / 2 + 1);
  Spectrum pb = Spectrum::Zero(mf / 2 + 1);
  pa.head(m / 2 + 1) = ca;
  pb.head(m / 2 + 1) = cb;
  const Eigen::VectorXd fa = spectral_inverse(pa, mf);
  const Eigen::VectorXd fb = spectral_inverse(pb, mf);
  const Spectrum cp =
      spectral_forward((fa.array() * fb.array()).matrix());
  return spectral_inverse(cp.head(m / 2 + 1).eval(), m);
}

double spectral_tail_fraction(const Eigen::VectorXd& u) {
  const Spectrum c = spectral_forward(u);
  const int half = static_cast<int>(c.size()) - 1;
  double total = 0.0, tail = 0.0;
  for (int k = 1; k <= half; ++k) {
    const double e = std::norm(c[k]);
    total += e;
    if (k > (2 * half) / 3) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

double integrate_periodic(const Eigen::VectorXd& u) {
  return 2.0 * std::numbers::pi * u.mean();
}

}  // namespace geoflow
