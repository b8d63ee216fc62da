#pragma once

#include <Eigen/Dense>
#include <complex>

namespace geoflow {

// Real periodic fields on S^1 sampled at x_j = 2*pi*j/M, M a power of two,
// with a half-spectrum view (Hermitian symmetry keeps samples real).
// FFTs are backed by FFTW with cached plans per grid size.

bool is_power_of_two(int m);

using Spectrum = Eigen::VectorXcd;  // size M/2 + 1, modes k = 0..M/2

Spectrum spectral_forward(const Eigen::VectorXd& u);   // normalized by 1/M
Eigen::VectorXd spectral_inverse(const Spectrum& c, int m);

// Spectral derivative d/dx (multiplier ik; Nyquist mode of odd derivatives
// zeroed).
Eigen::VectorXd spectral_derivative(const Eigen::VectorXd& u, int order = 1);

// Pointwise product with 3/2-rule zero padding.
Eigen::VectorXd dealiased_product(const Eigen::VectorXd& a,
                                  const Eigen::VectorXd& b);

// Fraction of spectral energy carried by the top third of the modes;
// resolution diagnostic.
double spectral_tail_fraction(const Eigen::VectorXd& u);

// Quadrature of a periodic field over [0, 2*pi): (2*pi/M) * sum.
double integrate_periodic(const Eigen::VectorXd& u);

}  // namespace geoflow
