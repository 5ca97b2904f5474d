// Poincare inequality for (theta, T)-periodic functions:
//   ||grad f||_{L^2_{theta,T}} >= C ||f||_{L^2_{theta,T}}
// for admissible f, with C = (2 pi / T) dist(v, Z^n) and v = i log(theta) / 2 pi,
// or C = 2 pi / T when v is a lattice point (that mode must then vanish).

#pragma once

#include <optional>

#include "thetaper/core.hpp"

namespace thetaper {

inline constexpr double kCriticalTol = 1e-12;

struct PoincareCase {
  std::optional<Mode> critical_mode;
  double constant = 0.0;
  double distance = 0.0;
  /// Distance below kCriticalTol but not exactly zero.
  bool near_critical = false;
  std::array<Complex, 2> v{};
};

PoincareCase poincare_case(const ThetaSpec& spec);

/// Zeros the critical entry if there is one.
CoeffTable project_admissible(const CoeffTable& c, const PoincareCase& pc);

/// Lattice point whose single-mode field attains the constant: the nearest
/// integer to Re v, shifted by e_1 in the critical case.
Mode sharp_mode(const PoincareCase& pc, int dim);

struct PoincareReport {
  double grad_norm = 0.0;
  double f_norm = 0.0;
  double constant = 0.0;
  double ratio = 1.0;  // grad_norm / (constant f_norm); 1 for f = 0
  bool holds = false;
  bool near_critical = false;
};

/// Spectral verification on a coefficient table (projected first).
PoincareReport poincare_verify(const CoeffTable& c);
/// Field version: analyzes at cutoff N/2 - 1, then as above.
PoincareReport poincare_verify(const SampledField& f);

}  // namespace thetaper
