// Fourier analysis and synthesis in the basis
//   e_xi(x) = exp(i (2 pi / T) x . (xi - i log(theta) / 2 pi)),
// the coefficient symmetries, and the L^1 / Plancherel checks.

#pragma once

#include <variant>

#include "thetaper/core.hpp"

namespace thetaper {

/// Coefficients f^(xi) for |xi_j| <= cutoff, from the FFT of Omega f.
/// Throws std::invalid_argument when cutoff > N/2 - 1.
CoeffTable analyze(const SampledField& f, int cutoff);

/// Share of coefficient energy on the outermost shell max_j |xi_j| = cutoff.
/// Values above kAliasingThreshold suggest the field is not resolved.
inline constexpr double kAliasingThreshold = 1e-10;
double tail_energy_fraction(const CoeffTable& c);

/// Evaluates the series on the grid. Modes beyond the Nyquist range are
/// folded, which is exact at the nodes.
SampledField synthesize(const CoeffTable& c, const GridSpec& grid);

/// Multiplies by (2 pi / T) i (xi_j - i log(theta_j) / 2 pi); axis is 0-based.
CoeffTable derivative_coeffs(const CoeffTable& c, int axis);

/// Spectral partial derivative of a band-limited field.
SampledField spectral_derivative(const SampledField& f, int axis);

struct Modulate {
  Mode xi0{0, 0};
};
struct Translate {
  std::array<double, 2> a{0.0, 0.0};
};
struct Dilate {
  int k = 1;
};
using Symmetry = std::variant<Modulate, Translate, Dilate>;

struct SymmetryResult {
  CoeffTable table;
  bool truncated = false;  // modulation pushed nonzero entries off the box
};

/// Dilation by k yields a table tagged (theta^{sign k}, T / |k|); k = 0 throws.
SymmetryResult apply_symmetry(const CoeffTable& c, const Symmetry& s);

struct L1Report {
  double lhs_max = 0.0;         // max |f^(xi)|
  double l1_norm = 0.0;         // weighted L^1 norm
  double plain_l1 = 0.0;        // L^1([0,T]^n), measure dx / T^n
  double weighted_bound = 0.0;  // plain_l1 / K_min
  bool first_holds = false;
  bool second_holds = false;
  bool holds = false;
};
L1Report l1_bound_check(const SampledField& f);

struct PlancherelReport {
  double coeff_l2 = 0.0;
  double weighted_l2 = 0.0;
  double plain_l2 = 0.0;
  double k_min = 1.0;
  double k_max = 1.0;
  double identity_error = 0.0;  // |coeff_l2 - weighted_l2| / max(1, weighted_l2)
  double tail_fraction = 0.0;
  bool identity_holds = false;
  bool sandwich_holds = false;
  bool aliasing_warning = false;
};
PlancherelReport plancherel_check(const SampledField& f);

}  // namespace thetaper
