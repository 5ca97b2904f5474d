#include "thetaper/odesolve.hpp"

#include <cmath>
#include <stdexcept>

#include "thetaper/fourier.hpp"
#include "thetaper/spectral.hpp"

namespace thetaper {

namespace {

struct Exponent {
  Complex lambda0;
  ComplexVector phi;     // periodic part of the antiderivative, phi(0) = 0
  ComplexVector lambda;  // samples
};

Exponent split(const std::variant<Complex, Trace>& lambda, int n, double period) {
  Exponent e;
  if (const auto* l = std::get_if<Complex>(&lambda)) {
    e.lambda0 = *l;
    e.phi = ComplexVector::Zero(n);
    e.lambda = ComplexVector::Constant(n, *l);
  } else {
    const Trace& t = std::get<Trace>(lambda);
    if (t.size() != n) throw std::invalid_argument("ode: lambda trace and f sampled on different grids");
    const auto a = spectral::cumulative_integral(t, period);
    e.lambda0 = a.mean;
    e.phi = a.drift_free;
    e.lambda = t;
  }
  return e;
}

OdeSolution solve(const SampledField& f, const std::variant<Complex, Trace>& lambda, OdeForm form) {
  if (f.dim() != 1) throw std::invalid_argument("ode: f must be one-dimensional");
  const ThetaSpec& spec = f.spec();
  const int n = f.size();
  const double period = spec.period();
  const Exponent ex = split(lambda, n, period);
  const Complex mu0 = spec.log(0) / period;
  const Complex beta = ex.lambda0 + mu0;

  // P_G = e^{-mu0 x} e^{Phi} f is T-periodic
  ComplexVector pg(n), outer(n);
  for (int m = 0; m < n; ++m) {
    const double x = m * period / n;
    pg[m] = std::exp(ex.phi[m] - mu0 * x) * f(m);
    outer[m] = std::exp(mu0 * x - ex.phi[m]);
  }

  OdeSolution sol{OdeKind::None, SampledField(f.grid(), spec), std::nullopt, 0.0, std::nullopt, {}, form, {}};
  sol.resonance = resonance_test(ex.lambda0, spec.theta(0), period);

  if (!sol.resonance.resonant) {
    if (sol.resonance.ill_conditioned)
      sol.notes.push_back("near resonance: gap " + std::to_string(sol.resonance.gap) +
                          " amplifies errors by its inverse");
    OdeForm use = form;
    if (use == OdeForm::Auto) use = beta.real() >= 0.0 ? OdeForm::Minus : OdeForm::Plus;
    sol.form = use;
    const Complex etb = std::exp(-period * beta);  // theta^{-1} e^{-T lambda0}
    ComplexVector conv;
    Complex pref;
    if (use == OdeForm::Minus) {
      conv = spectral::circular_convolve(spectral::exp_weighted_weights(beta, n, period), pg);
      pref = 1.0 / (1.0 - etb);
    } else {
      // sum_k w_k P(x_{m+k}) is a convolution with the reversed weights
      const ComplexVector w = spectral::exp_weighted_weights(-beta, n, period);
      ComplexVector wr(n);
      for (int k = 0; k < n; ++k) wr[k] = w[(n - k) % n];
      conv = spectral::circular_convolve(wr, pg);
      pref = 1.0 / (1.0 / etb - 1.0);
    }
    sol.u.values() = pref * (outer.array() * conv.array()).matrix();
    sol.kind = OdeKind::Unique;
    sol.residual = ode_residual(sol.u, lambda, f);
    return sol;
  }

  // resonant: e^{beta s} is (nearly) a pure Fourier mode on [0, T]
  const ComplexVector wc = spectral::exp_weighted_weights(-beta, n, period);
  const Complex compat = (wc.array() * pg.array()).sum();
  sol.compatibility = compat;
  double scale = 0.0;
  ComplexVector h(n);
  for (int m = 0; m < n; ++m) {
    const double x = m * period / n;
    h[m] = std::exp(beta * x) * pg[m];
    scale = std::max(scale, std::abs(h[m]));
  }
  SampledField gen(f.grid(), spec);
  for (int m = 0; m < n; ++m) {
    const double x = m * period / n;
    gen(m) = std::exp(-ex.lambda0 * x - ex.phi[m]);
  }
  sol.homogeneous = gen;
  if (std::abs(compat) > kCompatibilityTol * period * std::max(scale, 1e-300)) {
    sol.kind = OdeKind::None;
    sol.notes.push_back("resonant and the compatibility integral does not vanish");
    return sol;
  }
  const ComplexVector acc = spectral::cumulative_integral(h, period).drift_free;
  sol.u.values() = (gen.values().array() * acc.array()).matrix();
  sol.kind = OdeKind::Family;
  sol.residual = ode_residual(sol.u, lambda, f);
  return sol;
}

}  // namespace

ResonanceInfo resonance_test(Complex lambda0, Complex theta, double period) {
  ResonanceInfo r;
  r.gap = std::abs(1.0 - std::exp(-std::log(theta) - period * lambda0));
  r.resonant = r.gap < kResonanceTol;
  r.ill_conditioned = !r.resonant && r.gap <= kIllConditionedGap;
  return r;
}

std::string to_string(OdeKind k) {
  switch (k) {
    case OdeKind::Unique:
      return "unique";
    case OdeKind::Family:
      return "family";
    case OdeKind::None:
      return "none";
  }
  return "none";
}

std::string to_string(OdeForm f) {
  switch (f) {
    case OdeForm::Auto:
      return "auto";
    case OdeForm::Minus:
      return "minus";
    case OdeForm::Plus:
      return "plus";
  }
  return "auto";
}

OdeSolution solve_const(const SampledField& f, Complex lambda, OdeForm form) {
  return solve(f, lambda, form);
}

OdeSolution solve_var(const SampledField& f, const Trace& lambda, OdeForm form) {
  return solve(f, lambda, form);
}

double ode_residual(const SampledField& u, const std::variant<Complex, Trace>& lambda,
                    const SampledField& f) {
  const SampledField du = spectral_derivative(u, 0);
  double r = 0.0;
  for (int m = 0; m < u.size(); ++m) {
    const Complex l = std::holds_alternative<Complex>(lambda) ? std::get<Complex>(lambda)
                                                              : std::get<Trace>(lambda)[m];
    r = std::max(r, std::abs(du(m) + l * u(m) - f(m)));
  }
  return r;
}

OdeSolution solve_mode_ode(int xi, const std::variant<Complex, Trace>& c,
                           const std::variant<Complex, Trace>& q, const ThetaSpec& spec,
                           const SampledField& f_mode, OdeForm form) {
  if (spec.dim() != 2) throw std::invalid_argument("solve_mode_ode: theta must have two components");
  const Complex mu2 = (Complex(0.0, kTwoPi * xi) + spec.log(1)) / spec.period();
  const int n = f_mode.size();
  if (std::holds_alternative<Complex>(c) && std::holds_alternative<Complex>(q))
    return solve(f_mode, std::get<Complex>(c) * mu2 + std::get<Complex>(q), form);
  Trace lam(n);
  for (int m = 0; m < n; ++m) {
    const Complex cm = std::holds_alternative<Complex>(c) ? std::get<Complex>(c) : std::get<Trace>(c)[m];
    const Complex qm = std::holds_alternative<Complex>(q) ? std::get<Complex>(q) : std::get<Trace>(q)[m];
    lam[m] = cm * mu2 + qm;
  }
  return solve(f_mode, lam, form);
}

}  // namespace thetaper
