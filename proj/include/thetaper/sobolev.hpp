// Sobolev norms H^s_{theta,T}, coefficient decay, and the embedding bound.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "thetaper/core.hpp"

namespace thetaper {

/// Japanese bracket <xi> = (1 + |xi|^2)^{1/2}.
double bracket(const Mode& xi);

double hs_norm(const CoeffTable& c, double s);

struct DecayReport {
  double fitted_order = 0.0;
  bool is_rapid = false;
  /// Finite data cannot certify an asymptotic statement; always true.
  bool asymptotic_only = true;
  std::vector<std::pair<int, double>> per_shell_max;  // (sup-norm radius, max |coeff|)
};

inline constexpr double kRapidOrder = 10.0;
inline constexpr double kRapidFloor = 1e-13;

/// Fits log(shell max) against log<r> by least squares. Requires cutoff >= 8.
DecayReport decay_classify(const CoeffTable& c);

struct EmbeddingReport {
  double max_ratio = 0.0;       // max_x |f(x)| / (||f||_{H^s} prod |theta_j|^{x_j/T})
  double bound_constant = 0.0;  // (sum_{box} <xi>^{-2s})^{1/2}
  double hs = 0.0;
  bool holds = false;
};

/// Requires s > n/2.
EmbeddingReport embedding_check(const SampledField& f, double s);

}  // namespace thetaper
