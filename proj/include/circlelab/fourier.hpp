#pragma once

#include <vector>

#include "circlelab/signal.hpp"

namespace circlelab {

// Discrete Fourier transform on Z/QZ with the positive-exponent convention
//   F f(j/Q) = sum_x f(x) e(j x / Q),
// so that the transform of the averaging kernel of P at j/Q is exactly the
// exponential sum E_{n in [N]} e((j/Q) P(n)). Backed by FFTW for every Q.

std::vector<Complex> fourier_forward(const Signal& f);
Signal fourier_inverse(const std::vector<Complex>& coefficients);

/// Cyclic convolution (a * b)(x) = sum_y a(y) b(x - y).
Signal cyclic_convolve(const Signal& a, const Signal& b);

/// Signed representative of a torus offset in (-1/2, 1/2].
double wrap_signed(double x);

/// Grid frequency j/Q as a torus point in [0, 1).
inline double grid_frequency(std::int64_t j, std::int64_t modulus) {
  return static_cast<double>(j) / static_cast<double>(modulus);
}

}  // namespace circlelab
