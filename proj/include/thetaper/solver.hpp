// Spectral solution of L u = f, L = d/dx_1 + c(x_1) d/dx_2 + q, for
// (theta, T)-periodic fields in two variables.

#pragma once

#include <string>
#include <vector>

#include "thetaper/core.hpp"
#include "thetaper/regularity.hpp"

namespace thetaper {

struct SolveOptions {
  int cutoff = 0;             // 0 selects N/2 - 1
  double zero_tol = 1e-10;    // |sigma| < zero_tol (1 + |xi|) is a dead mode
  double dead_mass_tol = 1e-12;
  int threads = 1;
};

struct SolveReport {
  SampledField u;
  double residual = 0.0;            // max |L u - f|, recomputed from u
  double residual_solvable = 0.0;   // same against f with dead-mode mass removed
  std::vector<Mode> skipped_modes{};   // dead modes carrying no data
  std::vector<Mode> unsolvable_modes{};  // dead modes carrying data
  /// Variable-coefficient solves index modes by the x_2 frequency only; such
  /// entries are stored as (0, xi_2).
  bool x2_modes_only = false;
  double condition = 0.0;  // max of 1/|sigma| or 1/gap over solved modes
  bool solvable = true;
  std::vector<std::string> notes{};
};

/// L u on a (theta, T)-periodic field, by spectral differentiation.
/// Coefficient traces must use the field's grid size.
SampledField apply_operator(const OperatorSpec& op, const SampledField& u);

SolveReport solve_constant_L(const OperatorSpec& op, const SampledField& f, const SolveOptions& opt = {});

/// q may depend on x_1 only; q(x_1, x_2) is rejected with std::invalid_argument.
SolveReport solve_variable_L(const OperatorSpec& op, const SampledField& f, const SolveOptions& opt = {});

}  // namespace thetaper
