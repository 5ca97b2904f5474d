#include "thetaper/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "thetaper/fourier.hpp"
#include "thetaper/spectral.hpp"

namespace thetaper {

namespace {

constexpr std::size_t kMaxWitnesses = 64;

void check_trace(const Trace& t, const char* name) {
  const int n = static_cast<int>(t.size());
  if (n < 4 || !spectral::is_power_of_two(n))
    throw std::invalid_argument(std::string(name) + ": trace length must be a power of two >= 4");
  if (!t.allFinite()) throw std::invalid_argument(std::string(name) + ": non-finite sample");
  if (spectral::high_frequency_fraction(t) > kTracePeriodicityTol)
    throw std::invalid_argument(std::string(name) +
                                ": trace does not continue smoothly across x_1 = T");
}

Complex mean(const ComplexVector& v) { return v.sum() / double(v.size()); }

struct Scan {
  std::vector<Mode> zeros;
  std::size_t zero_count = 0;
  bool outer_zero = false;
  std::optional<std::size_t> accepted;  // index into k_grid
  std::vector<double> c_full, c_half;
};

Scan lattice_scan(const ThetaSpec& spec, Complex c, Complex q, const DiagnoseOptions& opt) {
  Scan s;
  const int big = opt.cutoff, half = opt.cutoff / 2;
  const std::size_t nk = opt.k_grid.size();
  s.c_full.assign(nk, std::numeric_limits<double>::infinity());
  s.c_half.assign(nk, std::numeric_limits<double>::infinity());
  for (int m = -big; m <= big; ++m) {
    for (int n = -big; n <= big; ++n) {
      const Mode xi{m, n};
      const Complex sig = constant_symbol(spec, c, q, xi);
      const double r2 = squared_norm(xi);
      const double mag = std::abs(sig);
      const bool inner = std::max(std::abs(m), std::abs(n)) <= half;
      if (mag < opt.zero_tol * (1.0 + std::sqrt(r2))) {
        ++s.zero_count;
        if (s.zeros.size() < kMaxWitnesses) s.zeros.push_back(xi);
        if (!inner) s.outer_zero = true;
        continue;
      }
      for (std::size_t i = 0; i < nk; ++i) {
        const double v = mag * std::pow(1.0 + r2, opt.k_grid[i]);
        s.c_full[i] = std::min(s.c_full[i], v);
        if (inner) s.c_half[i] = std::min(s.c_half[i], v);
      }
    }
  }
  for (std::size_t i = 0; i < nk; ++i) {
    if (!std::isfinite(s.c_full[i])) continue;
    if (s.c_full[i] >= opt.c_floor && s.c_full[i] >= (1.0 - opt.stability_tol) * s.c_half[i]) {
      s.accepted = i;
      break;
    }
  }
  return s;
}

std::optional<ZeroLine> fit_line(const std::vector<Mode>& zeros) {
  if (zeros.size() < 2) return std::nullopt;
  const Mode p = zeros.front();
  Mode far = zeros[1];
  double best = 0.0;
  for (const Mode& z : zeros) {
    const double d = squared_norm({z[0] - p[0], z[1] - p[1]});
    if (d > best) {
      best = d;
      far = z;
    }
  }
  Mode d{far[0] - p[0], far[1] - p[1]};
  const int g = std::gcd(std::abs(d[0]), std::abs(d[1]));
  d = {d[0] / g, d[1] / g};
  if (d[0] < 0 || (d[0] == 0 && d[1] < 0)) d = {-d[0], -d[1]};
  for (const Mode& z : zeros) {
    const long cross = long(z[0] - p[0]) * d[1] - long(z[1] - p[1]) * d[0];
    if (cross != 0) return std::nullopt;
  }
  // move the anchor to the point nearest the origin along the line
  ZeroLine line{p, d};
  if (d[0] == 0) line.point = {p[0], 0};
  if (d[1] == 0) line.point = {0, p[1]};
  return line;
}

std::string describe(const ZeroLine& l) {
  if (l.direction == Mode{0, 1}) return "symbol vanishes along xi_1 = " + std::to_string(l.point[0]);
  if (l.direction == Mode{1, 0}) return "symbol vanishes along xi_2 = " + std::to_string(l.point[1]);
  return "symbol vanishes along (" + std::to_string(l.point[0]) + ", " + std::to_string(l.point[1]) +
         ") + t (" + std::to_string(l.direction[0]) + ", " + std::to_string(l.direction[1]) + ")";
}

void attach_scan(RegularityVerdict& v, const Scan& s, const DiagnoseOptions& opt) {
  v.witnesses = s.zeros;
  v.zero_count = s.zero_count;
  if (s.outer_zero) v.zero_line = fit_line(s.zeros);
  if (v.zero_line) v.notes.push_back(describe(*v.zero_line));
  if (s.accepted) {
    v.constant_c = s.c_full[*s.accepted];
    v.order_k = opt.k_grid[*s.accepted];
  }
}

DiophantineClass classify_c(double c, const DiagnoseOptions& opt) {
  return opt.c_decimal ? classify_decimal(*opt.c_decimal, opt.classify)
                       : classify_real(c, opt.classify);
}

}  // namespace

OperatorSpec OperatorSpec::constant(ThetaSpec theta, Complex c, Complex q) {
  return OperatorSpec{std::move(theta), c, q};
}

bool OperatorSpec::constant_coefficients() const {
  return std::holds_alternative<Complex>(c) && std::holds_alternative<Complex>(q);
}

bool OperatorSpec::q_depends_on_x2() const { return std::holds_alternative<SampledField>(q); }

int OperatorSpec::trace_size() const {
  if (const auto* t = std::get_if<Trace>(&c)) return static_cast<int>(t->size());
  if (const auto* t = std::get_if<Trace>(&q)) return static_cast<int>(t->size());
  if (const auto* f = std::get_if<SampledField>(&q)) return f->size();
  return 0;
}

void OperatorSpec::validate() const {
  if (theta.dim() != 2) throw std::invalid_argument("operator: theta must have two components");
  const int n = trace_size();
  if (const auto* t = std::get_if<Trace>(&c)) {
    check_trace(*t, "c");
    if (t->size() != n) throw std::invalid_argument("operator: c and q sampled on different grids");
  } else if (!std::isfinite(std::get<Complex>(c).real()) || !std::isfinite(std::get<Complex>(c).imag())) {
    throw std::invalid_argument("operator: c must be finite");
  }
  if (const auto* t = std::get_if<Trace>(&q)) {
    check_trace(*t, "q");
    if (t->size() != n) throw std::invalid_argument("operator: c and q sampled on different grids");
  } else if (const auto* f = std::get_if<SampledField>(&q)) {
    if (f->dim() != 2) throw std::invalid_argument("operator: q field must be two-dimensional");
    if (f->size() != n) throw std::invalid_argument("operator: c and q sampled on different grids");
    if (!f->values().allFinite()) throw std::invalid_argument("operator: q field has non-finite samples");
    for (int axis = 0; axis < 2; ++axis) {
      const ComplexVector hat = spectral::dft2(f->values(), n);
      double total = 0.0, high = 0.0;
      for (Index i = 0; i < hat.size(); ++i) {
        const int nu = spectral::frequency(static_cast<int>(axis == 0 ? i / n : i % n), n);
        total += std::norm(hat[i]);
        if (4 * std::abs(nu) >= n) high += std::norm(hat[i]);
      }
      if (total > 0.0 && high / total > kTracePeriodicityTol)
        throw std::invalid_argument("operator: q field is not smooth and T-periodic");
    }
  } else if (!std::isfinite(std::get<Complex>(q).real()) || !std::isfinite(std::get<Complex>(q).imag())) {
    throw std::invalid_argument("operator: q must be finite");
  }
}

Complex constant_symbol(const ThetaSpec& spec, Complex c, Complex q, const Mode& xi) {
  const Complex zero_order = (spec.log(0) + c * spec.log(1)) / kTwoPi + q * spec.period() / kTwoPi;
  return double(xi[0]) + c * double(xi[1]) - Complex(0.0, 1.0) * zero_order;
}

Complex constant_symbol(const OperatorSpec& op, const Mode& xi) {
  if (!op.constant_coefficients())
    throw std::invalid_argument("constant_symbol: operator has sampled coefficients");
  return constant_symbol(op.theta, std::get<Complex>(op.c), std::get<Complex>(op.q), xi);
}

TildeParams tilde_params(const OperatorSpec& op) {
  TildeParams p;
  const ThetaSpec& s = op.theta;
  const double scale = s.period() / kTwoPi;
  p.c_eff = op.c;
  if (const auto* c = std::get_if<Complex>(&op.c)) {
    p.c0 = *c;
    p.a0 = c->real();
  } else {
    const Trace& t = std::get<Trace>(op.c);
    p.c0 = mean(t);
    p.a0 = mean(t.real().cast<Complex>());
  }
  if (const auto* q = std::get_if<Complex>(&op.q)) p.q0 = *q;
  if (const auto* q = std::get_if<Trace>(&op.q)) p.q0 = mean(*q);
  if (const auto* q = std::get_if<SampledField>(&op.q)) p.q0 = mean(q->values());

  const auto base = [&](Complex c) { return (s.log(0) + c * s.log(1)) / kTwoPi; };
  if (op.constant_coefficients()) {
    p.zero_order = base(std::get<Complex>(op.c)) + scale * std::get<Complex>(op.q);
    return p;
  }
  const int n = op.trace_size();
  const auto c_at = [&](int m) {
    if (const auto* c = std::get_if<Complex>(&op.c)) return *c;
    return std::get<Trace>(op.c)[m];
  };
  if (const auto* f = std::get_if<SampledField>(&op.q)) {
    ComplexVector z(Index(n) * n);
    for (int m1 = 0; m1 < n; ++m1)
      for (int m2 = 0; m2 < n; ++m2)
        z[Index(m1) * n + m2] = base(c_at(m1)) + scale * (*f)(m1, m2);
    p.zero_order = z;
    return p;
  }
  ComplexVector z(n);
  for (int m = 0; m < n; ++m) {
    const Complex qm = std::holds_alternative<Complex>(op.q) ? std::get<Complex>(op.q)
                                                             : std::get<Trace>(op.q)[m];
    z[m] = base(c_at(m)) + scale * qm;
  }
  p.zero_order = z;
  return p;
}

SampledField apply_tilde_operator(const TildeParams& p, const SampledField& g, double period) {
  if (g.dim() != 2) throw std::invalid_argument("apply_tilde_operator: field must be two-dimensional");
  const int n = g.size();
  const SampledField d1 = spectral_derivative(g, 0);
  const SampledField d2 = spectral_derivative(g, 1);
  SampledField out(g.grid(), g.spec());
  for (int m1 = 0; m1 < n; ++m1) {
    Complex c;
    if (const auto* cc = std::get_if<Complex>(&p.c_eff)) {
      c = *cc;
    } else {
      const Trace& t = std::get<Trace>(p.c_eff);
      if (t.size() != n) throw std::invalid_argument("apply_tilde_operator: trace/grid size mismatch");
      c = t[m1];
    }
    for (int m2 = 0; m2 < n; ++m2) {
      Complex z;
      if (const auto* zc = std::get_if<Complex>(&p.zero_order)) {
        z = *zc;
      } else {
        const ComplexVector& zv = std::get<ComplexVector>(p.zero_order);
        if (zv.size() == n)
          z = zv[m1];
        else if (zv.size() == Index(n) * n)
          z = zv[Index(m1) * n + m2];
        else
          throw std::invalid_argument("apply_tilde_operator: zero-order size mismatch");
      }
      out(m1, m2) = (kTwoPi / period) * (d1(m1, m2) + c * d2(m1, m2) + z * g(m1, m2));
    }
  }
  return out;
}

PsiPhase psi_phase(const Trace& a, const Trace& q) {
  const auto ia = spectral::cumulative_integral(a, kTwoPi);
  const auto iq = spectral::cumulative_integral(q, kTwoPi);
  return {ia.drift_free, iq.drift_free, ia.mean, iq.mean, 0.0};
}

PsiPhase psi_phase(const Trace& a, const Trace& q, Complex a0, Complex q0) {
  PsiPhase p = psi_phase(a, q);
  const double mismatch = kTwoPi * std::max(std::abs(p.a0 - a0), std::abs(p.q0 - q0));
  if (mismatch > 1e-10)
    throw std::invalid_argument("psi_phase: supplied averages leave a drift of " +
                                std::to_string(mismatch) + " over one period");
  const int n = static_cast<int>(a.size());
  for (int m = 0; m < n; ++m) {
    const double t = kTwoPi * m / n;
    p.A[m] += (p.a0 - a0) * t;
    p.Q[m] += (p.q0 - q0) * t;
  }
  p.a0 = a0;
  p.q0 = q0;
  p.endpoint_mismatch = mismatch;
  return p;
}

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes:
      return "yes";
    case Answer::No:
      return "no";
    case Answer::Undecided:
      return "undecided";
  }
  return "undecided";
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::Analytic:
      return "analytic";
    case Basis::Evidence:
      return "evidence";
    case Basis::None:
      return "none";
  }
  return "none";
}

RegularityVerdict diagnose_constant(const OperatorSpec& op, const DiagnoseOptions& opt) {
  if (!op.constant_coefficients())
    throw std::invalid_argument("diagnose_constant: operator has sampled coefficients");
  if (op.theta.dim() != 2) throw std::invalid_argument("diagnose_constant: theta must have two components");
  if (opt.cutoff < 2) throw std::invalid_argument("diagnose_constant: cutoff must be >= 2");
  const Complex c = std::get<Complex>(op.c);
  const Complex q = std::get<Complex>(op.q);
  RegularityVerdict v;
  v.options = opt;

  if (std::abs(c.imag()) > opt.imag_tol) {
    const Scan s = lattice_scan(op.theta, c, q, opt);
    attach_scan(v, s, opt);
    v.gh = v.gs = Answer::Yes;
    v.gh_basis = v.gs_basis = Basis::Analytic;
    v.route = "corollary: Im(c) != 0";
    return v;
  }

  const Complex creal(c.real(), 0.0);
  const Scan s = lattice_scan(op.theta, creal, q, opt);
  attach_scan(v, s, opt);
  for (int m = -opt.cutoff; m <= opt.cutoff && !v.exceptional_mode; ++m)
    for (int n = -opt.cutoff; n <= opt.cutoff; ++n)
      if (std::abs(constant_symbol(op.theta, creal, q, {m, n})) < opt.exceptional_tol) {
        v.exceptional_mode = Mode{m, n};
        break;
      }

  if (v.exceptional_mode) {
    v.diophantine = classify_c(c.real(), opt);
    const DiophantineKind kind = v.diophantine->kind;
    v.gh_basis = v.gs_basis = Basis::Evidence;
    v.route = "corollary: c real, q in the exceptional coset, c " + to_string(kind);
    if (kind == DiophantineKind::Rational) {
      v.gh = Answer::No;
      v.gs = Answer::Yes;
    } else if (v.diophantine->non_liouville()) {
      v.gh = Answer::Yes;
      v.gs = Answer::Yes;
    } else {
      v.gh = Answer::No;
      v.gs = Answer::No;
    }
    return v;
  }

  v.notes.push_back("exceptional coset membership not detected within search box |m|, |n| <= " +
                    std::to_string(opt.cutoff));
  v.gh_basis = v.gs_basis = Basis::Evidence;
  if (s.outer_zero) {
    v.route = "symbol scan: zeros beyond half box";
    v.gh = Answer::No;
    v.gs = s.accepted ? Answer::Yes : Answer::No;
  } else if (s.accepted) {
    v.route = "symbol scan: polynomial lower bound; GS via GH=>GS";
    v.gh = v.gs = Answer::Yes;
  } else {
    v.route = "symbol scan: no stable polynomial lower bound";
    v.gh = v.gs = Answer::No;
  }
  return v;
}

RegularityVerdict diagnose_variable(const OperatorSpec& op, const DiagnoseOptions& opt) {
  op.validate();
  if (op.constant_coefficients()) return diagnose_constant(op, opt);

  ComplexVector cvals;
  if (const auto* t = std::get_if<Trace>(&op.c))
    cvals = *t;
  else
    cvals = ComplexVector::Constant(op.trace_size(), std::get<Complex>(op.c));
  const Eigen::VectorXd b = cvals.imag();
  const double bmax = b.maxCoeff(), bmin = b.minCoeff();

  RegularityVerdict v;
  v.options = opt;
  if (b.cwiseAbs().maxCoeff() > opt.b_zero_tol) {
    const bool one_signed = bmin >= -opt.sign_tol || bmax <= opt.sign_tol;
    if (one_signed) {
      v.gh = v.gs = Answer::Yes;
      v.gh_basis = v.gs_basis = Basis::Analytic;
      v.route = "complex-coefficient: b not identically 0 and one-signed; GS via GH=>GS";
    } else {
      v.route = "complex-coefficient: b changes sign";
      v.notes.push_back("no criterion applies when Im c changes sign");
    }
    return v;
  }

  const TildeParams tp = tilde_params(op);
  std::string why = "q depends only on x_1";
  if (op.q_depends_on_x2()) {
    const DiophantineClass dc = classify_real(tp.a0.real(), opt.classify);
    if (!dc.non_liouville()) {
      v.diophantine = dc;
      v.route = "real-coefficient: q depends on x_2 and a0 is " + to_string(dc.kind);
      v.notes.push_back("reduction to the averaged operator requires q = q(x_1) or a0 non-Liouville");
      return v;
    }
    why = "a0 is " + to_string(dc.kind);
  }
  DiagnoseOptions inner = opt;
  inner.c_decimal.reset();
  RegularityVerdict r =
      diagnose_constant(OperatorSpec::constant(op.theta, tp.a0.real(), tp.q0), inner);
  r.route = "real-coefficient: reduced to averaged operator (" + why + "); " + r.route;
  r.options = opt;
  return r;
}

}  // namespace thetaper
