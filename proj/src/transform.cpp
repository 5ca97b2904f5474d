#include "thetaper/transform.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "thetaper/spectral.hpp"

namespace thetaper {

namespace {

ComplexVector node_weights(const SampledField& f) {
  ComplexVector w(f.values().size());
  for (Index i = 0; i < w.size(); ++i) {
    const auto p = f.point(i);
    w[i] = conjugation_weight(f.spec(), std::span<const double>(p.data(), f.dim()));
  }
  return w;
}

void check_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp norm: p must be >= 1");
}

}  // namespace

SampledField omega_forward(const SampledField& f) {
  const ComplexVector w = node_weights(f);
  return SampledField(f.grid(), (f.values().array() * w.array()).matrix(),
                      ThetaSpec::periodic(f.dim()));
}

SampledField omega_inverse(const SampledField& g, const ThetaSpec& spec) {
  SampledField out(g.grid(), g.values(), spec);
  const ComplexVector w = node_weights(out);
  out.values() = (g.values().array() / w.array()).matrix();
  return out;
}

KConstants k_constants(const ThetaSpec& spec) {
  double lo = 0.0, hi = 0.0;
  for (int j = 0; j < spec.dim(); ++j) {
    const double l = spec.log_abs(j);
    if (l < 0.0) lo += l;
    if (l > 0.0) hi += l;
  }
  return {std::exp(lo), std::exp(hi)};
}

double lp_norm(const SampledField& f, double p) {
  check_p(p);
  const ComplexVector w = node_weights(f);
  if (std::isinf(p)) {
    double m = 0.0;
    for (Index i = 0; i < w.size(); ++i) m = std::max(m, std::abs(w[i] * f.values()[i]));
    return m;
  }
  std::vector<double> terms(w.size());
  for (Index i = 0; i < w.size(); ++i) terms[i] = std::pow(std::abs(w[i] * f.values()[i]), p);
  return std::pow(spectral::compensated_sum(terms) / double(w.size()), 1.0 / p);
}

double plain_lp_norm(const SampledField& f, double p) {
  check_p(p);
  if (std::isinf(p)) {
    double m = 0.0;
    for (Index i = 0; i < f.values().size(); ++i) m = std::max(m, std::abs(f.values()[i]));
    return m;
  }
  const ThetaSpec& spec = f.spec();
  const double t = spec.period();
  const int n = f.size();
  const ComplexVector w = node_weights(f);
  // |f|^p = |Omega f|^p * prod |theta_j|^{p x_j / T}
  std::vector<ComplexVector> axis(f.dim());
  for (int j = 0; j < f.dim(); ++j)
    axis[j] = spectral::exp_weighted_weights(-p * spec.log_abs(j) / t, n, t);
  std::vector<double> terms(f.values().size());
  for (Index i = 0; i < w.size(); ++i) {
    const double h = std::pow(std::abs(w[i] * f.values()[i]), p);
    const Complex q = f.dim() == 1 ? axis[0][i] : axis[0][i / n] * axis[1][i % n];
    terms[i] = h * q.real();
  }
  const double integral = spectral::compensated_sum(terms) / std::pow(t, f.dim());
  return std::pow(std::max(integral, 0.0), 1.0 / p);
}

}  // namespace thetaper
