// Periodic spectral kernels on uniform grids: DFTs, trigonometric
// interpolation, exact-for-trig-polynomial quadrature against exponential
// weights, and spectral antiderivatives.
//
// Frequencies follow the symmetric convention: bin j of an N-point transform
// carries frequency j for j < N/2 and j - N for j > N/2. The Nyquist bin
// N/2 is treated as the cosine (e^{+} + e^{-})/2 wherever a continuous
// interpolant is needed.

#pragma once

#include <span>

#include "thetaper/core.hpp"

namespace thetaper::spectral {

bool is_power_of_two(int n);

/// Symmetric frequency of DFT bin j in an N-point transform.
inline int frequency(int j, int n) { return j <= n / 2 ? j : j - n; }

/// Bin holding symmetric frequency nu (|nu| < N/2).
inline int bin(int nu, int n) { return nu >= 0 ? nu : nu + n; }

/// Unnormalized forward DFT: out_k = sum_m v_m e^{-2 pi i k m / N}.
ComplexVector dft(const ComplexVector& v);
/// Unnormalized backward DFT: out_m = sum_k c_k e^{+2 pi i k m / N}.
ComplexVector idft(const ComplexVector& c);

/// Row-major N x N versions (flat index m1 * N + m2).
ComplexVector dft2(const ComplexVector& v, int n);
ComplexVector idft2(const ComplexVector& c, int n);

/// Transform along a single axis of row-major N x N data.
ComplexVector dft_axis(const ComplexVector& v, int n, int axis);
ComplexVector idft_axis(const ComplexVector& c, int n, int axis);

/// Fourier coefficients c_nu = DFT / N of a 2*pi-periodic sample vector.
ComplexVector periodic_coefficients(const ComplexVector& samples);

/// Evaluates the trigonometric interpolant of coefficients `c` (bins) at the
/// angle y.
Complex interpolate(const ComplexVector& c, double y);

/// Quadrature weights w_k with sum_k w_k P(s_k) = int_0^T e^{-beta s} P(s) ds,
/// s_k = k T / N, exact whenever P is a T-periodic trigonometric polynomial
/// of degree < N/2.
ComplexVector exp_weighted_weights(Complex beta, int n, double period);

/// Mean of a periodic trace and the spectral antiderivative of its
/// fluctuation, G(x_m) = int_0^{x_m} (g - mean).
struct Antiderivative {
  Complex mean;
  ComplexVector drift_free;
};
Antiderivative cumulative_integral(const ComplexVector& samples, double period);

/// Spectral derivative of a T-periodic trace.
ComplexVector derivative(const ComplexVector& samples, double period);

/// Trigonometric resampling of a periodic trace to m nodes.
ComplexVector resample(const ComplexVector& samples, int m);

/// Relative energy in the top quarter of the spectrum; near zero for smooth
/// periodic data, O(1/N) or larger when the periodic continuation jumps.
double high_frequency_fraction(const ComplexVector& samples);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> terms);

/// Circular convolution out_m = sum_k w_k p_{(m - k) mod N}.
ComplexVector circular_convolve(const ComplexVector& w, const ComplexVector& p);

}  // namespace thetaper::spectral
