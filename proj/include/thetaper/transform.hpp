// The conjugation Omega sending (theta, T)-periodic data to 2*pi-periodic
// data, its inverse, and the weighted L^p norms.
//
//   (Omega f)(y) = e^{-y . log(theta) / 2pi} f(T y / 2pi)
//
// On grids both sides share node indices (y_m = 2 pi m / N <-> x_m = T m / N),
// so Omega acts as a pointwise weight.

#pragma once

#include "thetaper/core.hpp"

namespace thetaper {

struct KConstants {
  double k_min = 1.0;
  double k_max = 1.0;
};

/// Output is tagged 2*pi-periodic (theta = 1, T = 2 pi).
SampledField omega_forward(const SampledField& f);
SampledField omega_inverse(const SampledField& g, const ThetaSpec& spec);

KConstants k_constants(const ThetaSpec& spec);

/// Weighted norm ||f||_{L^p_{theta,T}} with normalized measure; p = infinity
/// is accepted. Equals the normalized L^p norm of Omega f on the grid.
double lp_norm(const SampledField& f, double p);

/// Plain L^p([0,T]^n) norm with the measure dx / T^n, the normalization under
/// which the K_min/K_max sandwich holds. Integrates |Omega f|^p against the
/// exponential weight exactly for band-limited data.
double plain_lp_norm(const SampledField& f, double p);

}  // namespace thetaper
