#include "thetaper/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "thetaper/fourier.hpp"
#include "thetaper/odesolve.hpp"
#include "thetaper/spectral.hpp"

namespace thetaper {

namespace {

Complex coeff_at(const std::variant<Complex, Trace>& v, int m) {
  if (const auto* c = std::get_if<Complex>(&v)) return *c;
  return std::get<Trace>(v)[m];
}

void check_field(const OperatorSpec& op, const SampledField& f) {
  if (f.dim() != 2) throw std::invalid_argument("solver: field must be two-dimensional");
  if (!(f.spec() == op.theta)) throw std::invalid_argument("solver: field and operator use different theta specs");
  const int n = op.trace_size();
  if (n != 0 && n != f.size())
    throw std::invalid_argument("solver: coefficient traces and field sampled on different grids");
}

int resolve_cutoff(const SolveOptions& opt, int n) {
  const int cut = opt.cutoff == 0 ? n / 2 - 1 : opt.cutoff;
  if (cut < 1 || cut > n / 2 - 1) throw std::invalid_argument("solver: cutoff must lie in [1, N/2 - 1]");
  return cut;
}

double max_abs_diff(const SampledField& a, const SampledField& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

// e^{-x_2 log theta_2 / T} weights along the second axis
ComplexVector x2_weights(const ThetaSpec& spec, int n, double sign) {
  ComplexVector w(n);
  for (int m = 0; m < n; ++m) w[m] = std::exp(sign * spec.log(1) * (double(m) / n));
  return w;
}

}  // namespace

SampledField apply_operator(const OperatorSpec& op, const SampledField& u) {
  check_field(op, u);
  const int n = u.size();
  const SampledField d1 = spectral_derivative(u, 0);
  const SampledField d2 = spectral_derivative(u, 1);
  SampledField out(u.grid(), u.spec());
  for (int m1 = 0; m1 < n; ++m1) {
    const Complex c = coeff_at(op.c, m1);
    for (int m2 = 0; m2 < n; ++m2) {
      Complex q;
      if (const auto* f = std::get_if<SampledField>(&op.q))
        q = (*f)(m1, m2);
      else if (const auto* t = std::get_if<Trace>(&op.q))
        q = (*t)[m1];
      else
        q = std::get<Complex>(op.q);
      out(m1, m2) = d1(m1, m2) + c * d2(m1, m2) + q * u(m1, m2);
    }
  }
  return out;
}

SolveReport solve_constant_L(const OperatorSpec& op, const SampledField& f, const SolveOptions& opt) {
  if (!op.constant_coefficients())
    throw std::invalid_argument("solve_constant_L: operator has sampled coefficients");
  check_field(op, f);
  const int cut = resolve_cutoff(opt, f.size());
  const CoeffTable fh = analyze(f, cut);
  CoeffTable uh(f.spec(), cut), dead(f.spec(), cut);
  SolveReport r{SampledField(f.grid(), f.spec())};
  const double scale = kTwoPi / f.spec().period();
  for (Index i = 0; i < fh.size(); ++i) {
    const Mode xi = fh.mode_at(i);
    const Complex sig = constant_symbol(op, xi);
    if (std::abs(sig) < opt.zero_tol * (1.0 + std::sqrt(squared_norm(xi)))) {
      if (std::abs(fh.entries()[i]) < opt.dead_mass_tol) {
        r.skipped_modes.push_back(xi);
      } else {
        r.unsolvable_modes.push_back(xi);
        dead.entries()[i] = fh.entries()[i];
      }
      continue;
    }
    uh.entries()[i] = fh.entries()[i] / (Complex(0.0, scale) * sig);
    r.condition = std::max(r.condition, 1.0 / std::abs(sig));
  }
  if (tail_energy_fraction(fh) > kAliasingThreshold)
    r.notes.push_back("f carries energy on the outermost retained shell; it may not be band-limited");
  r.u = synthesize(uh, f.grid());
  const SampledField lu = apply_operator(op, r.u);
  r.residual = max_abs_diff(lu, f);
  SampledField f_ok = f;
  f_ok.values() -= synthesize(dead, f.grid()).values();
  r.residual_solvable = max_abs_diff(lu, f_ok);
  r.solvable = r.unsolvable_modes.empty();
  if (!r.solvable) {
    const bool all_dead = (fh.entries() - dead.entries()).cwiseAbs().maxCoeff() < opt.dead_mass_tol;
    r.notes.push_back(all_dead ? "no solution: all data sits on modes where the symbol vanishes"
                               : "data on modes where the symbol vanishes was left unsolved");
  }
  return r;
}

SolveReport solve_variable_L(const OperatorSpec& op, const SampledField& f, const SolveOptions& opt) {
  op.validate();
  if (op.q_depends_on_x2())
    throw std::invalid_argument("solve_variable_L: q depending on x_2 is not supported");
  check_field(op, f);
  const int n = f.size();
  const int cut = resolve_cutoff(opt, n);
  const ThetaSpec& spec = f.spec();
  const ThetaSpec spec1({spec.theta(0)}, spec.period(), {spec.log_branch()[0]});

  // partial transform in x_2
  ComplexVector g = f.values();
  const ComplexVector w = x2_weights(spec, n, -1.0);
  for (int m1 = 0; m1 < n; ++m1)
    for (int m2 = 0; m2 < n; ++m2) g[Index(m1) * n + m2] *= w[m2];
  const ComplexVector fh = spectral::dft_axis(g, n, 1) / double(n);

  std::variant<Complex, Trace> c = op.c;
  std::variant<Complex, Trace> q;
  if (const auto* qc = std::get_if<Complex>(&op.q))
    q = *qc;
  else
    q = std::get<Trace>(op.q);

  const int modes = 2 * cut + 1;
  std::vector<std::optional<OdeSolution>> out(modes);
  std::vector<char> zero(modes, 0);
  const double fscale = std::max(1.0, f.values().cwiseAbs().maxCoeff());
  auto work = [&](int lo, int hi) {
    for (int k = lo; k < hi; ++k) {
      const int xi = k - cut;
      const int b = spectral::bin(xi, n);
      SampledField fm(GridSpec(1, n), spec1);
      for (int m1 = 0; m1 < n; ++m1) fm(m1) = fh[Index(m1) * n + b];
      if (fm.values().cwiseAbs().maxCoeff() < opt.dead_mass_tol * fscale) {
        zero[k] = 1;
        continue;
      }
      out[k] = solve_mode_ode(xi, c, q, spec, fm);
    }
  };
  const int threads = std::max(1, std::min(opt.threads, modes));
  if (threads == 1) {
    work(0, modes);
  } else {
    std::vector<std::jthread> pool;
    const int chunk = (modes + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(work, t * chunk, std::min(modes, (t + 1) * chunk));
  }

  SolveReport r{SampledField(f.grid(), spec)};
  r.x2_modes_only = true;
  ComplexVector uh = ComplexVector::Zero(Index(n) * n);
  ComplexVector dead = ComplexVector::Zero(Index(n) * n);
  for (int k = 0; k < modes; ++k) {
    const int xi = k - cut;
    const int b = spectral::bin(xi, n);
    if (zero[k]) continue;
    const OdeSolution& s = *out[k];
    if (s.kind == OdeKind::None) {
      r.unsolvable_modes.push_back({0, xi});
      for (int m1 = 0; m1 < n; ++m1) dead[Index(m1) * n + b] = fh[Index(m1) * n + b];
      continue;
    }
    if (s.kind == OdeKind::Family)
      r.notes.push_back("x_2 mode " + std::to_string(xi) + " is resonant; kept the family member with c = 0");
    else
      r.condition = std::max(r.condition, 1.0 / s.resonance.gap);
    for (int m1 = 0; m1 < n; ++m1) uh[Index(m1) * n + b] = s.u(m1);
  }
  const ComplexVector winv = x2_weights(spec, n, 1.0);
  auto back = [&](const ComplexVector& h) {
    ComplexVector v = spectral::idft_axis(h, n, 1);
    for (int m1 = 0; m1 < n; ++m1)
      for (int m2 = 0; m2 < n; ++m2) v[Index(m1) * n + m2] *= winv[m2];
    return v;
  };
  r.u.values() = back(uh);
  const SampledField lu = apply_operator(op, r.u);
  r.residual = max_abs_diff(lu, f);
  SampledField f_ok = f;
  f_ok.values() -= back(dead);
  r.residual_solvable = max_abs_diff(lu, f_ok);
  r.solvable = r.unsolvable_modes.empty();
  if (!r.solvable) r.notes.push_back("resonant x_2 modes with nonzero compatibility integral were left unsolved");
  return r;
}

}  // namespace thetaper
