#include "thetaper/fourier.hpp"

#include <cmath>
#include <stdexcept>

#include "thetaper/spectral.hpp"
#include "thetaper/transform.hpp"

namespace thetaper {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kSandwichSlack = 1e-12;

// DFT / N^n of Omega f, in bin layout.
ComplexVector bin_coefficients(const SampledField& f) {
  const SampledField g = omega_forward(f);
  if (f.dim() == 1) return spectral::dft(g.values()) / double(f.size());
  return spectral::dft2(g.values(), f.size()) / double(g.values().size());
}

int fold(int xi, int n) {
  const int r = xi % n;
  return r < 0 ? r + n : r;
}

Complex exp_phase(const ThetaSpec& spec, const Mode& xi, std::span<const double> a) {
  // exp(i (2 pi / T) a . xi + a . log(theta) / T)
  const double t = spec.period();
  Complex e = 0.0;
  for (int j = 0; j < spec.dim(); ++j)
    e += a[j] * (Complex(0.0, kTwoPi * xi[j]) + spec.log(j)) / t;
  return std::exp(e);
}

}  // namespace

CoeffTable analyze(const SampledField& f, int cutoff) {
  const int n = f.size();
  if (cutoff < 0 || cutoff > n / 2 - 1)
    throw std::invalid_argument("analyze: cutoff " + std::to_string(cutoff) +
                                " exceeds N/2 - 1 = " + std::to_string(n / 2 - 1));
  const ComplexVector c = bin_coefficients(f);
  CoeffTable out(f.spec(), cutoff);
  for (Index i = 0; i < out.size(); ++i) {
    const Mode xi = out.mode_at(i);
    const Index b = f.dim() == 1 ? spectral::bin(xi[0], n)
                                 : Index(spectral::bin(xi[0], n)) * n + spectral::bin(xi[1], n);
    out.entries()[i] = c[b];
  }
  return out;
}

double tail_energy_fraction(const CoeffTable& c) {
  double total = 0.0, shell = 0.0;
  for (Index i = 0; i < c.size(); ++i) {
    const Mode xi = c.mode_at(i);
    const double e = std::norm(c.entries()[i]);
    total += e;
    const int r = std::max(std::abs(xi[0]), std::abs(xi[1]));
    if (r == c.cutoff()) shell += e;
  }
  return total > 0.0 ? shell / total : 0.0;
}

SampledField synthesize(const CoeffTable& c, const GridSpec& grid) {
  if (grid.dim != c.dim()) throw std::invalid_argument("synthesize: grid dimension mismatch");
  const int n = grid.size;
  ComplexVector bins = ComplexVector::Zero(grid.total());
  for (Index i = 0; i < c.size(); ++i) {
    const Mode xi = c.mode_at(i);
    const Index b = c.dim() == 1 ? fold(xi[0], n) : Index(fold(xi[0], n)) * n + fold(xi[1], n);
    bins[b] += c.entries()[i];
  }
  const ComplexVector g = c.dim() == 1 ? spectral::idft(bins) : spectral::idft2(bins, n);
  return omega_inverse(SampledField(grid, g, ThetaSpec::periodic(grid.dim)), c.spec());
}

CoeffTable derivative_coeffs(const CoeffTable& c, int axis) {
  if (axis < 0 || axis >= c.dim()) throw std::invalid_argument("derivative_coeffs: bad axis");
  CoeffTable out = c;
  const double t = c.spec().period();
  const Complex l = c.spec().log(axis);
  for (Index i = 0; i < c.size(); ++i) {
    const Mode xi = c.mode_at(i);
    out.entries()[i] *= (Complex(0.0, kTwoPi * xi[axis]) + l) / t;
  }
  return out;
}

SampledField spectral_derivative(const SampledField& f, int axis) {
  return synthesize(derivative_coeffs(analyze(f, f.size() / 2 - 1), axis), f.grid());
}

SymmetryResult apply_symmetry(const CoeffTable& c, const Symmetry& s) {
  if (const auto* m = std::get_if<Modulate>(&s)) {
    CoeffTable out(c.spec(), c.cutoff());
    bool truncated = false;
    for (Index i = 0; i < c.size(); ++i) {
      const Mode xi = c.mode_at(i);
      const Mode to{xi[0] + m->xi0[0], c.dim() == 2 ? xi[1] + m->xi0[1] : 0};
      if (out.contains(to))
        out[to] = c.entries()[i];
      else if (c.entries()[i] != Complex(0.0))
        truncated = true;
    }
    return {out, truncated};
  }
  if (const auto* tr = std::get_if<Translate>(&s)) {
    CoeffTable out = c;
    for (Index i = 0; i < c.size(); ++i)
      out.entries()[i] *= exp_phase(c.spec(), c.mode_at(i), std::span<const double>(tr->a.data(), c.dim()));
    return {out, false};
  }
  const int k = std::get<Dilate>(s).k;
  if (k == 0) throw std::invalid_argument("apply_symmetry: dilation by k = 0");
  const double period = c.spec().period() / std::abs(k);
  std::vector<Complex> logs;
  for (int j = 0; j < c.dim(); ++j) logs.push_back(k > 0 ? c.spec().log(j) : -c.spec().log(j));
  CoeffTable out(ThetaSpec::from_logs(logs, period), c.cutoff());
  for (Index i = 0; i < c.size(); ++i) {
    const Mode xi = c.mode_at(i);
    const Mode src{k > 0 ? xi[0] : -xi[0], k > 0 ? xi[1] : -xi[1]};
    out.entries()[i] = c[src];
  }
  return {out, false};
}

L1Report l1_bound_check(const SampledField& f) {
  L1Report r;
  const ComplexVector c = bin_coefficients(f);
  r.lhs_max = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
  r.l1_norm = lp_norm(f, 1.0);
  r.plain_l1 = plain_lp_norm(f, 1.0);
  r.weighted_bound = r.plain_l1 / k_constants(f.spec()).k_min;
  const double slack = kSandwichSlack * std::max(1.0, r.l1_norm);
  r.first_holds = r.lhs_max <= r.l1_norm + slack;
  // plain_l1 integrates |Omega f| exactly only for band-limited |Omega f|;
  // allow the quadrature error on top of rounding
  r.second_holds = r.l1_norm <= r.weighted_bound * (1.0 + 1e-6) + slack;
  r.holds = r.first_holds && r.second_holds;
  return r;
}

PlancherelReport plancherel_check(const SampledField& f) {
  PlancherelReport r;
  const ComplexVector c = bin_coefficients(f);
  const int n = f.size();
  double total = 0.0, tail = 0.0;
  std::vector<double> terms(c.size());
  for (Index i = 0; i < c.size(); ++i) {
    const double e = std::norm(c[i]);
    terms[i] = e;
    total += e;
    const int nu0 = spectral::frequency(static_cast<int>(f.dim() == 1 ? i : i / n), n);
    const int nu1 = f.dim() == 1 ? 0 : spectral::frequency(static_cast<int>(i % n), n);
    if (4 * std::max(std::abs(nu0), std::abs(nu1)) >= n) tail += e;
  }
  r.coeff_l2 = std::sqrt(spectral::compensated_sum(terms));
  r.weighted_l2 = lp_norm(f, 2.0);
  r.plain_l2 = plain_lp_norm(f, 2.0);
  const KConstants k = k_constants(f.spec());
  r.k_min = k.k_min;
  r.k_max = k.k_max;
  r.tail_fraction = total > 0.0 ? tail / total : 0.0;
  r.aliasing_warning = r.tail_fraction > kAliasingThreshold;
  r.identity_error = std::abs(r.coeff_l2 - r.weighted_l2) / std::max(1.0, r.weighted_l2);
  r.identity_holds = r.identity_error <= kIdentityTol;
  const double slack = 1e-9 * std::max(1.0, r.plain_l2);
  r.sandwich_holds = k.k_min * r.coeff_l2 <= r.plain_l2 + slack &&
                     r.plain_l2 <= k.k_max * r.coeff_l2 + slack;
  return r;
}

}  // namespace thetaper
