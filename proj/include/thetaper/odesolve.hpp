// (theta, T)-periodic solutions of u' + lambda u = f in one variable, for
// constant lambda or a T-periodic trace lambda(x) with mean lambda0.
//
// With Lambda(x) = lambda0 x + Phi(x) (Phi periodic, Phi(0) = 0) the
// nonresonant solution is
//   u(x) = (1 - theta^{-1} e^{-T lambda0})^{-1} int_0^T e^{Lambda(x-s) - Lambda(x)} f(x-s) ds
//        = (theta e^{T lambda0} - 1)^{-1}    int_0^T e^{Lambda(x+s) - Lambda(x)} f(x+s) ds.
// Both integrals are evaluated by quadrature that is exact for band-limited
// data: the integrand is an exponential times a periodic function.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "thetaper/core.hpp"
#include "thetaper/regularity.hpp"

namespace thetaper {

inline constexpr double kResonanceTol = 1e-10;
inline constexpr double kIllConditionedGap = 1e-6;
inline constexpr double kCompatibilityTol = 1e-9;

struct ResonanceInfo {
  double gap = 0.0;  // |1 - theta^{-1} e^{-T lambda0}|
  bool resonant = false;
  bool ill_conditioned = false;  // gap in [1e-10, 1e-6]
};

ResonanceInfo resonance_test(Complex lambda0, Complex theta, double period);

enum class OdeKind { Unique, Family, None };
enum class OdeForm { Auto, Minus, Plus };
std::string to_string(OdeKind k);
std::string to_string(OdeForm f);

struct OdeSolution {
  OdeKind kind = OdeKind::None;
  /// Unique solution, or the c = 0 member of the family; zero when kind = None.
  SampledField u;
  /// e^{-Lambda}; the family is u + c h.
  std::optional<SampledField> homogeneous;
  double residual = 0.0;  // max |u' + lambda u - f|, spectral derivative
  std::optional<Complex> compatibility;
  ResonanceInfo resonance;
  OdeForm form = OdeForm::Auto;
  std::vector<std::string> notes;
};

/// f must be one-dimensional; theta and T are taken from f.
OdeSolution solve_const(const SampledField& f, Complex lambda, OdeForm form = OdeForm::Auto);
/// lambda sampled on the same grid as f.
OdeSolution solve_var(const SampledField& f, const Trace& lambda, OdeForm form = OdeForm::Auto);

double ode_residual(const SampledField& u, const std::variant<Complex, Trace>& lambda,
                    const SampledField& f);

/// One Fourier mode in x_2 of L u = f in two variables: with
/// mu_2 = (2 pi i xi + log theta_2) / T the coefficient u^(., xi) solves
///   d/dx_1 u^ + (c(x_1) mu_2 + q(x_1)) u^ = f^(., xi),
/// (theta_1, T)-periodic in x_1. f_mode carries (theta_1, T).
OdeSolution solve_mode_ode(int xi, const std::variant<Complex, Trace>& c,
                           const std::variant<Complex, Trace>& q, const ThetaSpec& spec,
                           const SampledField& f_mode, OdeForm form = OdeForm::Auto);

}  // namespace thetaper
