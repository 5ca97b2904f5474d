// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include <thetaper/diophantine.hpp>
#include <thetaper/fourier.hpp>
#include <thetaper/io.hpp>
#include <thetaper/odesolve.hpp>
#include <thetaper/poincare.hpp>
#include <thetaper/regularity.hpp>
#include <thetaper/sobolev.hpp>
#include <thetaper/solver.hpp>
#include <thetaper/transform.hpp>

#include "support.hpp"

using namespace thetaper;
using support::uniform;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    failures += (passed ? "" : "; ") + what;
    passed = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Complex random_theta() {
  static const double moduli[] = {1.0 / 3.0, 1.0, std::exp(1.0), 2.0};
  return std::polar(moduli[support::uniform_int(0, 3)], uniform(-kPi, kPi));
}

std::vector<SampledField> criterion_fields() {
  std::vector<SampledField> out;
  for (int k = 0; k < 100; ++k) {
    const int dim = k < 50 ? 1 : 2;
    std::vector<Complex> theta;
    for (int j = 0; j < dim; ++j) theta.push_back(random_theta());
    const ThetaSpec s(theta, uniform(0.5, 8.0));
    out.push_back(support::random_field(s, 256, dim == 1 ? 60 : 12));
  }
  return out;
}

// ||f||_{L^2_{theta,T}} straight from its definition: node mean of
// |f(x)|^2 prod |theta_j|^{-2 x_j / T}.
double weighted_l2_direct(const SampledField& f) {
  double acc = 0.0;
  for (Index i = 0; i < f.values().size(); ++i) {
    const auto x = f.point(i);
    double w = 1.0;
    for (int j = 0; j < f.dim(); ++j) w *= std::pow(std::abs(f.spec().theta(j)), -2.0 * x[j] / f.spec().period());
    acc += std::norm(f.values()[i]) * w;
  }
  return std::sqrt(acc / double(f.values().size()));
}

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  const auto fields = criterion_fields();
  double worst_round = 0.0, worst_iso = 0.0;
  for (const auto& f : fields) {
    const auto g = omega_forward(f);
    const auto back = omega_inverse(g, f.spec());
    worst_round = std::max(worst_round, support::max_abs_diff(back.values(), f.values()) / f.values().cwiseAbs().maxCoeff());
    const double a = weighted_l2_direct(f), b = lp_norm(g, 2);
    worst_iso = std::max(worst_iso, std::abs(a - b) / b);
  }
  const double elapsed = seconds_since(t0);
  o.detail << "roundtrip " << worst_round << ", isometry " << worst_iso << ", " << elapsed << " s";
  o.require(worst_round <= 1e-12, "round trip above 1e-12");
  o.require(worst_iso <= 1e-12, "isometry above 1e-12");
  o.require(elapsed < 10.0, "runtime above 10 s");
}

// Trig polynomial of degree m peaked at y0 on the 2 pi grid.
SampledField bump(const ThetaSpec& s, int n, int m, double y0) {
  SampledField g(GridSpec(1, n), ThetaSpec::periodic(1));
  for (int k = 0; k < n; ++k) g(k) = std::pow(0.5 * (1 + std::cos(kTwoPi * k / n - y0)), m);
  return omega_inverse(g, s);
}

void criterion2(Outcome& o) {
  const auto fields = criterion_fields();
  double worst_identity = 0.0;
  int sandwich_failures = 0;
  for (const auto& f : fields) {
    const auto r = plancherel_check(f);
    worst_identity = std::max(worst_identity, r.identity_error);
    sandwich_failures += r.sandwich_holds ? 0 : 1;
  }
  o.require(worst_identity <= 1e-9, "identity error above 1e-9");
  o.require(sandwich_failures == 0, std::to_string(sandwich_failures) + " sandwich failures");

  // Tightness. Unimodular theta: K_min = K_max = 1 and every single mode attains both bounds.
  double worst_gap = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ThetaSpec s({std::polar(1.0, uniform(-kPi, kPi)), std::polar(1.0, uniform(-kPi, kPi))}, uniform(0.5, 5));
    CoeffTable c(s, 8);
    c[{support::uniform_int(-8, 8), support::uniform_int(-8, 8)}] = support::gaussian_complex();
    const auto r = plancherel_check(synthesize(c, GridSpec(2, 32)));
    worst_gap = std::max(worst_gap, std::abs(r.plain_l2 / r.coeff_l2 - 1.0));
  }
  // Non-unimodular theta: fields concentrated next to the corner where the
  // weight reaches K_max (resp. K_min).
  for (double modulus : {1.0 / 3.0, 2.0, std::exp(1.0), 3.0}) {
    const ThetaSpec s({std::polar(modulus, 0.4)}, 1.7);
    const auto kc = k_constants(s);
    const double delta = 0.15;
    const auto near_end = bump(s, 2048, 800, kTwoPi - delta);
    const auto near_start = bump(s, 2048, 800, delta);
    const auto a = plancherel_check(near_end), b = plancherel_check(near_start);
    const double at_end = modulus > 1 ? a.plain_l2 / (kc.k_max * a.coeff_l2) : (kc.k_min * a.coeff_l2) / a.plain_l2;
    const double at_start = modulus > 1 ? (kc.k_min * b.coeff_l2) / b.plain_l2 : b.plain_l2 / (kc.k_max * b.coeff_l2);
    worst_gap = std::max({worst_gap, 1.0 - at_end, 1.0 - at_start});
    o.require(a.sandwich_holds && b.sandwich_holds, "sandwich fails on concentrated field");
  }
  o.detail << "identity " << worst_identity << ", sandwich failures " << sandwich_failures
           << ", worst tightness gap " << worst_gap;
  o.require(worst_gap <= 0.05, "sandwich not tight within 5%");
}

void criterion3(Outcome& o) {
  // linearity
  double lin = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ThetaSpec s({random_theta(), random_theta()}, uniform(0.5, 5));
    const auto f = support::random_field(s, 32, 6), g = support::random_field(s, 32, 6);
    const Complex a = support::gaussian_complex(), b = support::gaussian_complex();
    const SampledField h(f.grid(), a * f.values() + b * g.values(), s);
    const ComplexVector rhs = a * analyze(f, 15).entries() + b * analyze(g, 15).entries();
    lin = std::max(lin, support::max_abs_diff(analyze(h, 15).entries(), rhs) / rhs.cwiseAbs().maxCoeff());
  }
  o.require(lin <= 1e-12, "linearity above 1e-12");

  // derivative vs centred differences
  double rmin = INFINITY, rmax = 0.0;
  const ThetaSpec sd({std::polar(2.0, 0.5)}, 1.3);
  const auto table = support::random_table(sd, 3, 3);
  std::vector<double> errors;
  for (int n : {64, 128, 256}) {
    const auto f = synthesize(table, GridSpec(1, n));
    const auto d = synthesize(derivative_coeffs(table, 0), GridSpec(1, n));
    const double h = sd.period() / n;
    double err = 0.0;
    for (int m = 0; m < n; ++m) {
      const int up = m + 1, down = m - 1;
      const Complex fd = (f.at_node(std::span<const int>(&up, 1)) - f.at_node(std::span<const int>(&down, 1))) / (2 * h);
      err = std::max(err, std::abs(fd - d(m)));
    }
    errors.push_back(err);
  }
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    rmin = std::min(rmin, errors[k] / errors[k + 1]);
    rmax = std::max(rmax, errors[k] / errors[k + 1]);
  }
  o.require(rmin >= 3.6 && rmax <= 4.4, "finite-difference ratio outside [3.6, 4.4]");

  // translation by a period
  double trans = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ThetaSpec s({random_theta(), random_theta()}, uniform(0.5, 5));
    const auto c = support::random_table(s, 6, 6);
    for (int j = 0; j < 2; ++j) {
      Translate t;
      t.a[j] = s.period();
      const auto r = apply_symmetry(c, t).table;
      trans = std::max(trans, support::max_abs_diff(r.entries(), s.theta(j) * c.entries()) / c.entries().cwiseAbs().maxCoeff());
    }
  }
  o.require(trans <= 1e-10, "translation scaling above 1e-10");

  // dilation by -1
  bool reflect = true;
  for (int k = 0; k < 10; ++k) {
    const ThetaSpec s({random_theta(), random_theta()}, uniform(0.5, 5));
    const auto c = support::random_table(s, 5, 5);
    const auto r = apply_symmetry(c, Dilate{-1}).table;
    for (Index i = 0; i < c.size(); ++i) {
      const Mode xi = c.mode_at(i);
      reflect = reflect && r[Mode{-xi[0], -xi[1]}] == c.entries()[i];
    }
  }
  o.require(reflect, "dilation k = -1 does not reflect exactly");
  o.detail << "linearity " << lin << ", FD ratios [" << rmin << ", " << rmax << "], translation " << trans
           << ", reflection " << (reflect ? "exact" : "inexact");
}

void criterion4(Outcome& o) {
  double worst_low = INFINITY, worst_high = 0.0;
  for (Complex theta : {Complex(1.0), Complex(-1.0), Complex(0, 1), Complex(2.0), std::polar(2.0, kPi / 3)}) {
    for (double t : {1.0, kTwoPi}) {
      const ThetaSpec s({theta}, t);
      const auto pc = poincare_case(s);
      CoeffTable c(s, 4);
      c[sharp_mode(pc, 1)] = 1.0;
      const double ratio = poincare_verify(c).ratio;
      worst_low = std::min(worst_low, ratio);
      worst_high = std::max(worst_high, ratio);
    }
  }
  o.require(worst_low >= 1.0 && worst_high <= 1.0 + 1e-9, "sharp-mode ratio outside [1, 1 + 1e-9]");

  int violations = 0, branch_mismatch = 0;
  for (int k = 0; k < 1000; ++k) {
    const int dim = 1 + k % 2;
    std::vector<Complex> theta;
    for (int j = 0; j < dim; ++j) theta.push_back(k % 7 == 0 ? Complex(1.0) : random_theta());
    const ThetaSpec s(theta, uniform(0.5, 7));
    const auto f = synthesize(project_admissible(support::random_table(s, 4, 4), poincare_case(s)), GridSpec(dim, 16));
    const auto r = poincare_verify(f);
    violations += r.holds && r.ratio >= 1.0 ? 0 : 1;
    if (k % 10 == 0) {
      std::vector<int> shift;
      for (int j = 0; j < dim; ++j) shift.push_back(support::uniform_int(-3, 3));
      const SampledField g(f.grid(), f.values(), shift_log_branch(s, shift));
      const auto r2 = poincare_verify(g);
      if (r2.holds != r.holds || std::abs(r2.ratio - r.ratio) > 1e-10) ++branch_mismatch;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.require(branch_mismatch == 0, std::to_string(branch_mismatch) + " branch-dependent verdicts");
  o.detail << "sharp ratios [" << worst_low << ", " << worst_high << "], violations " << violations
           << "/1000, branch mismatches " << branch_mismatch;
}

using State = std::vector<double>;

template <class Lambda, class Rhs>
std::vector<Complex> shoot(Lambda lambda, Rhs f, Complex theta, double period, int n) {
  namespace ode = boost::numeric::odeint;
  auto integrate = [&](Complex u0, bool forced, std::vector<Complex>* nodes) {
    auto sys = [&](const State& s, State& ds, double x) {
      const Complex du = (forced ? f(x) : Complex(0.0)) - lambda(x) * Complex(s[0], s[1]);
      ds[0] = du.real();
      ds[1] = du.imag();
    };
    State s{u0.real(), u0.imag()};
    std::vector<double> times;
    for (int m = 0; m <= n; ++m) times.push_back(m * period / n);
    std::vector<Complex> out;
    auto stepper = ode::make_controlled(1e-12, 1e-12, ode::runge_kutta_dopri5<State>());
    ode::integrate_times(stepper, sys, s, times.begin(), times.end(), period / (16.0 * n),
                         [&](const State& st, double) { out.emplace_back(st[0], st[1]); });
    if (nodes) *nodes = out;
    return out.back();
  };
  const Complex u0 = integrate(0.0, true, nullptr) / (theta - integrate(1.0, false, nullptr));
  std::vector<Complex> nodes;
  integrate(u0, true, &nodes);
  nodes.pop_back();
  return nodes;
}

void criterion5(Outcome& o) {
  const auto t0 = Clock::now();
  const ThetaSpec two({2.0}, 1.0);
  const auto f = sample(GridSpec(1, 64), two, [](auto x) { return Complex(std::pow(2.0, x[0])); });
  const auto sol = solve_const(f, 0.0);
  double closed = 0.0;
  for (int m = 0; m < 64; ++m) closed = std::max(closed, std::abs(sol.u(m) - std::pow(2.0, m / 64.0) / std::log(2.0)));
  o.require(closed <= 1e-8, "2^x / ln 2 off by more than 1e-8");

  double forms = 0.0;
  for (int k = 0; k < 20;) {
    const ThetaSpec s({random_theta()}, uniform(0.5, 5));
    const Complex lambda(uniform(-2, 2), uniform(-2, 2));
    if (resonance_test(lambda, s.theta(0), s.period()).gap < 1e-3) continue;
    const auto g = support::random_field(s, 64, 10);
    const auto a = solve_const(g, lambda, OdeForm::Minus), b = solve_const(g, lambda, OdeForm::Plus);
    forms = std::max(forms, support::max_abs_diff(a.u.values(), b.u.values()) / a.u.values().cwiseAbs().maxCoeff());
    ++k;
  }
  o.require(forms <= 1e-9, "minus and plus forms differ by more than 1e-9");

  const ThetaSpec per({1.0}, kTwoPi);
  const auto cosine = sample(GridSpec(1, 64), per, [](auto x) { return Complex(std::cos(x[0])); });
  const bool accepts = solve_const(cosine, 0.0).kind == OdeKind::Family;
  const bool rejects = solve_const(SampledField(GridSpec(1, 64), ComplexVector::Ones(64), per), 0.0).kind == OdeKind::None;
  o.require(accepts && rejects, "resonant compatibility misjudged");

  double shooting = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double t = uniform(0.5, 3.0);
    const Complex theta = random_theta();
    const ThetaSpec s({theta}, t);
    const Complex l0(uniform(0.2, 1.5), uniform(-1, 1)), l1 = 0.5 * support::gaussian_complex();
    const Complex g1 = support::gaussian_complex();
    auto lambda = [&](double x) { return l0 + l1 * std::cos(kTwoPi * x / t); };
    auto rhs = [&](double x) {
      return std::exp(x * s.log(0) / t) * (1.0 + 0.5 * g1 * std::sin(kTwoPi * x / t));
    };
    const int n = 64;
    const auto fx = sample(GridSpec(1, n), s, [&](auto x) { return rhs(x[0]); });
    Trace lam(n);
    for (int m = 0; m < n; ++m) lam[m] = lambda(m * t / n);
    const auto u = solve_var(fx, lam);
    const auto oracle = shoot(lambda, rhs, theta, t, n);
    for (int m = 0; m < n; ++m) shooting = std::max(shooting, std::abs(u.u(m) - oracle[m]) / (1 + std::abs(oracle[m])));
  }
  o.require(shooting <= 1e-6, "variable-lambda solution differs from shooting by more than 1e-6");
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 30.0, "runtime above 30 s");
  o.detail << "closed form " << closed << ", forms " << forms << ", resonant accept/reject "
           << accepts << "/" << rejects << ", shooting " << shooting << ", " << elapsed << " s";
}

void criterion6(Outcome& o) {
  const ThetaSpec per = ThetaSpec::periodic(2);
  const auto ci = diagnose_constant(OperatorSpec::constant(per, Complex(0, 1), 0.0));
  o.require(ci.gh == Answer::Yes && ci.gs == Answer::Yes && ci.route.find("corollary") != std::string::npos,
            "c = i not GH+GS via the corollary");

  const auto c0 = diagnose_constant(OperatorSpec::constant(per, 0.0, 0.0));
  o.require(c0.gh == Answer::No && c0.zero_line && c0.zero_line->direction == Mode{0, 1} && c0.zero_line->point[0] == 0,
            "c = 0 lacks the witness line xi_1 = 0");

  const double golden = (1 + std::sqrt(5.0)) / 2;
  const auto cg = diagnose_constant(OperatorSpec::constant(per, golden, 0.0));
  o.require(cg.gh == Answer::Yes && cg.gh_basis == Basis::Evidence && cg.order_k == 1.0 && cg.options.cutoff == 64,
            "golden ratio not GH-evidence with k = 1 at cutoff 64");

  std::string digits(720, '0');
  for (int f : {1, 2, 6, 24, 120, 720}) digits[f - 1] = '1';
  ClassifyOptions copt;
  const auto lv = classify_decimal("0." + digits, copt);
  o.require(copt.depth == 40 && lv.kind == DiophantineKind::LiouvilleSuspect, "truncated Liouville number not flagged");

  const int n = 64;
  Trace one_signed(n), sign_changing(n);
  for (int m = 0; m < n; ++m) {
    one_signed[m] = Complex(0.3, 2 + std::sin(kTwoPi * m / n));
    sign_changing[m] = Complex(0.3, std::sin(kTwoPi * m / n));
  }
  const ThetaSpec st({std::polar(1.5, 0.2), Complex(-1.0)}, 2.0);
  const auto vb = diagnose_variable(OperatorSpec{st, one_signed, Complex(0.0)});
  o.require(vb.gh == Answer::Yes && vb.gh_basis == Basis::Analytic, "one-signed b not GH via the analytic clause");
  const auto vs = diagnose_variable(OperatorSpec{st, sign_changing, Complex(0.0)});
  o.require(vs.gh == Answer::Undecided, "sign-changing b not undecided");

  int mismatches = 0;
  for (Complex c : {Complex(0, 1), Complex(0.0), Complex(golden), Complex(0.5), Complex(std::sqrt(2.0))}) {
    for (Complex q : {Complex(0.0), Complex(0.3), Complex(0, 1)}) {
      const auto ref = diagnose_constant(OperatorSpec::constant(per, c, q));
      for (int k : {-2, 1, 3}) {
        const std::array<int, 2> shift{k, 2 * k};
        DiagnoseOptions wide;
        wide.cutoff = 64 + 2 * std::abs(k);
        const auto v = diagnose_constant(OperatorSpec::constant(shift_log_branch(per, shift), c, q), wide);
        if (v.gh != ref.gh || v.gs != ref.gs) ++mismatches;
      }
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " branch-dependent verdicts");
  o.detail << "c=i " << to_string(ci.gh) << "/" << to_string(ci.gs) << ", c=0 gh " << to_string(c0.gh)
           << ", golden k " << (cg.order_k ? *cg.order_k : -1) << ", Liouville " << to_string(lv.kind)
           << ", b one-signed " << to_string(vb.gh) << ", b sign-changing " << to_string(vs.gh)
           << ", branch mismatches " << mismatches;
}

void criterion7(Outcome& o) {
  double recover = 0.0;
  for (int k = 0; k < 20; ++k) {
    const ThetaSpec s({random_theta(), random_theta()}, uniform(0.8, 6));
    const int n = 32;
    const auto u = support::random_field(s, n, 4);
    OperatorSpec op = OperatorSpec::constant(s, Complex(uniform(-1, 1), uniform(0.3, 1.5)), Complex(uniform(-1, 1), 0.0));
    if (k % 2) {
      Trace c(n), q(n);
      const double a = uniform(-1, 1), phase = uniform(0, kTwoPi);
      const Complex q0(uniform(-1, 1), uniform(-1, 1));
      for (int m = 0; m < n; ++m) {
        c[m] = Complex(a + 0.2 * std::cos(kTwoPi * m / n), 1.0 + 0.3 * std::sin(kTwoPi * m / n + phase));
        q[m] = q0 + 0.3 * std::cos(kTwoPi * m / n);
      }
      op.c = c;
      op.q = q;
    }
    const auto r = op.constant_coefficients() ? solve_constant_L(op, apply_operator(op, u))
                                              : solve_variable_L(op, apply_operator(op, u));
    recover = std::max(recover, support::max_abs_diff(r.u.values(), u.values()) / (1 + u.values().cwiseAbs().maxCoeff()));
  }
  o.require(recover <= 1e-6, "manufactured solutions not recovered to 1e-6");

  double commute = 0.0;
  for (int k = 0; k < 10; ++k) {
    const ThetaSpec s({random_theta(), random_theta()}, uniform(0.8, 6));
    const int n = 32;
    Trace c(n), q(n);
    const Complex c0 = support::gaussian_complex(), q0 = support::gaussian_complex();
    for (int m = 0; m < n; ++m) {
      c[m] = c0 + 0.3 * std::sin(kTwoPi * m / n);
      q[m] = q0 + 0.3 * std::cos(2 * kTwoPi * m / n);
    }
    const OperatorSpec op{s, c, q};
    const auto u = support::random_field(s, n, 5);
    const auto lhs = omega_forward(apply_operator(op, u));
    const auto rhs = apply_tilde_operator(tilde_params(op), omega_forward(u), s.period());
    commute = std::max(commute, support::max_abs_diff(lhs.values(), rhs.values()) / (1 + lhs.values().cwiseAbs().maxCoeff()));
  }
  o.require(commute <= 1e-8, "conjugation commutation above 1e-8");

  const ThetaSpec s({Complex(0, 1), 2.0}, kTwoPi);
  const int n = 64;
  const auto f = sample(GridSpec(2, n), s, [&](auto x) {
    return std::exp(std::cos(x[0]) + 0.5 * std::sin(x[1])) * support::basis(s, {0, 0}, x);
  });
  const auto op = OperatorSpec::constant(s, Complex(0.3, 1.0), 0.0);
  const bool gh = diagnose_constant(op).gh == Answer::Yes;
  const bool rapid = decay_classify(analyze(solve_constant_L(op, f).u, n / 2 - 1)).is_rapid;
  o.require(gh && rapid, "GH operator output not rapidly decaying");
  o.detail << "manufactured " << recover << ", commutation " << commute << ", rapid decay " << rapid;
}

int run_cli(const fs::path& config, const fs::path& out, const std::string& extra = "") {
  const std::string cmd = std::string("\"") + THETAPER_CLI_PATH + "\" --config \"" + config.string() +
                          "\" --out-dir \"" + out.string() + "\" " + extra + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion8(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / "thetaper_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  io::write_file_atomic(dir / "verify.json", R"({"command": "verify", "verify": {"trials": 3}})");
  io::write_file_atomic(dir / "bad.json", R"({"command": "poincare", "theta": {"theta": [2], "T": 1}, "N": 16, "typo": true})");
  io::write_file_atomic(dir / "unsolvable.json", R"({"command": "solve", "theta": {"theta": [1, 1], "T": 6.283185307179586},
      "N": 16, "operator": {"c": 0, "q": 0}, "input": {"terms": [{"type": "cos", "freq": [0, 1]}]}})");
  io::write_file_atomic(dir / "diagnose.json", R"({"command": "diagnose", "theta": {"theta": [1, 1], "T": 6.283185307179586},
      "operator": {"c": [0, 1], "q": 0}})");

  const int a = run_cli(dir / "verify.json", dir / "run1", "--seed 42");
  const int b = run_cli(dir / "verify.json", dir / "run2", "--seed 42");
  const bool identical = a == 0 && b == 0 &&
                         io::read_file(dir / "run1" / "verify_report.json") == io::read_file(dir / "run2" / "verify_report.json");
  const int d1 = run_cli(dir / "diagnose.json", dir / "d1");
  const int d2 = run_cli(dir / "diagnose.json", dir / "d2");
  const bool identical_diag = d1 == 0 && d2 == 0 &&
                              io::read_file(dir / "d1" / "diagnose_report.json") == io::read_file(dir / "d2" / "diagnose_report.json");
  const int bad = run_cli(dir / "bad.json", dir / "bad");
  const int unsolvable = run_cli(dir / "unsolvable.json", dir / "unsolvable");
  o.require(identical && identical_diag, "reports differ between identical runs");
  o.require(bad == 2, "validation error exit code " + std::to_string(bad));
  o.require(unsolvable == 3, "unsolvable exit code " + std::to_string(unsolvable));
  o.require(d1 == 0, "success exit code " + std::to_string(d1));
  o.detail << "identical reports " << (identical && identical_diag) << ", exit codes validation/unsolvable/success "
           << bad << "/" << unsolvable << "/" << d1;
  fs::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"omega round trip and isometry", criterion1},
      {"Plancherel sandwich", criterion2},
      {"symmetry properties", criterion3},
      {"Poincare sharpness", criterion4},
      {"ODE closed forms", criterion5},
      {"regularity diagnosis", criterion6},
      {"solver correctness", criterion7},
      {"CLI determinism and exit codes", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += o.passed ? 0 : 1;
    std::string line = o.detail.str();
    if (!o.passed) line += " | " + o.failures;
    std::printf("[%s] criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                line.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
