#include "invariants.hpp"

#include <cmath>
#include <random>

#include <thetaper/core.hpp>
#include <thetaper/fourier.hpp>
#include <thetaper/odesolve.hpp>
#include <thetaper/poincare.hpp>
#include <thetaper/regularity.hpp>
#include <thetaper/solver.hpp>
#include <thetaper/transform.hpp>

namespace thetaper::cli {

namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); }
  Complex normal() {
    std::normal_distribution<double> d;
    return {d(gen), d(gen)};
  }
};

ThetaSpec random_spec(Rng& r, int dim) {
  const double mods[] = {1.0 / 3.0, 1.0, std::exp(1.0), 2.0};
  const double periods[] = {1.0, kTwoPi, 0.5};
  std::vector<Complex> th;
  for (int j = 0; j < dim; ++j) th.push_back(std::polar(mods[r.pick(4)], r.uniform(-kPi, kPi)));
  return ThetaSpec(th, periods[r.pick(3)]);
}

CoeffTable random_table(Rng& r, const ThetaSpec& spec, int cutoff) {
  CoeffTable t(spec, cutoff);
  for (Index i = 0; i < t.size(); ++i) t.entries()[i] = r.normal() / (1.0 + squared_norm(t.mode_at(i)));
  return t;
}

double rel(const ComplexVector& a, const ComplexVector& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

CheckResult check(std::string name, double metric, double threshold, std::string detail = {}) {
  return {std::move(name), metric <= threshold, metric, threshold, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> run_invariants(std::uint64_t seed, int trials) {
  Rng r(seed);
  std::vector<CheckResult> out;

  double roundtrip = 0, isometry = 0, plancherel = 0, synth = 0, translate = 0, extend = 0;
  int sandwich_fail = 0;
  for (int t = 0; t < trials; ++t) {
    const int dim = 1 + t % 2;
    const ThetaSpec spec = random_spec(r, dim);
    const int n = dim == 1 ? 64 : 32;
    const CoeffTable c = random_table(r, spec, n / 4 - 1);
    const SampledField f = synthesize(c, GridSpec(dim, n));
    roundtrip = std::max(roundtrip, rel(omega_inverse(omega_forward(f), spec).values(), f.values()));
    isometry = std::max(isometry, std::abs(lp_norm(f, 2) - lp_norm(omega_forward(f), 2)) / lp_norm(f, 2));
    const PlancherelReport pr = plancherel_check(f);
    plancherel = std::max(plancherel, pr.identity_error);
    if (!pr.sandwich_holds) ++sandwich_fail;
    synth = std::max(synth, rel(synthesize(analyze(f, n / 2 - 1), f.grid()).values(), f.values()));

    std::array<double, 2> a{spec.period(), 0.0};
    const CoeffTable shifted = apply_symmetry(c, Translate{a}).table;
    translate = std::max(translate, rel(shifted.entries(), (c.entries() * spec.theta(0)).eval()));

    std::array<double, 2> x{r.uniform(-2, 2) * spec.period(), r.uniform(0, 1) * spec.period()};
    std::array<double, 2> xs = x;
    xs[0] += spec.period();
    const Complex lhs = extend_field(f, std::span<const double>(xs.data(), dim));
    const Complex rhs = spec.theta(0) * extend_field(f, std::span<const double>(x.data(), dim));
    extend = std::max(extend, std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs)));
  }
  out.push_back(check("omega_roundtrip", roundtrip, 1e-12));
  out.push_back(check("lp_isometry", isometry, 1e-13));
  out.push_back(check("plancherel_identity", plancherel, 1e-9));
  out.push_back(check("plancherel_sandwich_failures", sandwich_fail, 0));
  out.push_back(check("analyze_synthesize_roundtrip", synth, 1e-10));
  out.push_back(check("translate_by_period_scales_by_theta", translate, 1e-10));
  out.push_back(check("extend_field_quasi_periodicity", extend, 1e-9));

  double worst_gap = 0.0, worst_violation = 0.0;
  for (const Complex th : {Complex(1), Complex(-1), Complex(0, 1), Complex(2), std::polar(2.0, kPi / 3)}) {
    for (const double period : {1.0, kTwoPi}) {
      const ThetaSpec spec({th}, period);
      const PoincareCase pc = poincare_case(spec);
      CoeffTable single(spec, 8);
      single[sharp_mode(pc, 1)] = 1.0;
      worst_gap = std::max(worst_gap, std::abs(poincare_verify(single).ratio - 1.0));
      for (int t = 0; t < trials; ++t) {
        const PoincareReport rep = poincare_verify(random_table(r, spec, 8));
        worst_violation = std::max(worst_violation, 1.0 - rep.ratio);
      }
    }
  }
  out.push_back(check("poincare_sharpness", worst_gap, 1e-9));
  out.push_back(check("poincare_violation", std::max(0.0, worst_violation), 1e-12));

  double forms = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ThetaSpec spec = random_spec(r, 1);
    const SampledField f = synthesize(random_table(r, spec, 8), GridSpec(1, 64));
    const Complex lambda = r.normal();
    if (resonance_test(lambda, spec.theta(0), spec.period()).gap < 1e-3) continue;
    const OdeSolution a = solve_const(f, lambda, OdeForm::Minus);
    const OdeSolution b = solve_const(f, lambda, OdeForm::Plus);
    forms = std::max(forms, rel(a.u.values(), b.u.values()));
  }
  out.push_back(check("ode_minus_plus_agree", forms, 1e-9));

  {
    const ThetaSpec spec({2.0}, 1.0);
    const SampledField f = sample(GridSpec(1, 64), spec, [](auto p) { return Complex(std::exp2(p[0])); });
    const OdeSolution s = solve_const(f, 0.0);
    const SampledField want = sample(GridSpec(1, 64), spec, [](auto p) { return Complex(std::exp2(p[0]) / std::log(2.0)); });
    out.push_back(check("ode_closed_form_2_pow_x", rel(s.u.values(), want.values()), 1e-8));
  }

  {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const ThetaSpec spec({1.0, 1.0}, kTwoPi);
    const RegularityVerdict v = diagnose_constant(OperatorSpec::constant(spec, golden, 0.0));
    const bool ok = v.gh == Answer::Yes && v.order_k && *v.order_k == 1.0;
    out.push_back(check("diagnose_golden_k1", ok ? 0.0 : 1.0, 0.0, v.route));
    int mismatches = 0;
    for (int k : {-2, -1, 1, 3}) {
      const std::array<int, 2> shift{k, k};
      DiagnoseOptions o;
      o.cutoff = 64 + std::abs(k);
      const RegularityVerdict w =
          diagnose_constant(OperatorSpec::constant(shift_log_branch(spec, shift), golden, 0.0), o);
      if (w.gh != v.gh || w.gs != v.gs) ++mismatches;
    }
    out.push_back(check("diagnose_branch_invariance", mismatches, 0));
  }

  double manufactured = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ThetaSpec spec = random_spec(r, 2);
    const OperatorSpec op = OperatorSpec::constant(spec, Complex(r.uniform(-1, 1), r.uniform(0.5, 2)), r.normal());
    const SampledField u = synthesize(random_table(r, spec, 6), GridSpec(2, 32));
    const SolveReport s = solve_constant_L(op, apply_operator(op, u));
    manufactured = std::max(manufactured, rel(s.u.values(), u.values()));
  }
  out.push_back(check("manufactured_solution_constant", manufactured, 1e-6));
  return out;
}

}  // namespace thetaper::cli
