#include "thetaper/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thetaper/fourier.hpp"
#include "thetaper/spectral.hpp"

namespace thetaper {

double bracket(const Mode& xi) { return std::sqrt(1.0 + squared_norm(xi)); }

double hs_norm(const CoeffTable& c, double s) {
  std::vector<double> terms(c.size());
  for (Index i = 0; i < c.size(); ++i)
    terms[i] = std::pow(1.0 + squared_norm(c.mode_at(i)), s) * std::norm(c.entries()[i]);
  return std::sqrt(spectral::compensated_sum(terms));
}

DecayReport decay_classify(const CoeffTable& c) {
  if (c.cutoff() < 8) throw std::invalid_argument("decay_classify: cutoff must be >= 8");
  DecayReport r;
  std::vector<double> shell(c.cutoff() + 1, 0.0);
  for (Index i = 0; i < c.size(); ++i) {
    const Mode xi = c.mode_at(i);
    const int rad = std::max(std::abs(xi[0]), std::abs(xi[1]));
    shell[rad] = std::max(shell[rad], std::abs(c.entries()[i]));
  }
  for (int rad = 0; rad <= c.cutoff(); ++rad) r.per_shell_max.emplace_back(rad, shell[rad]);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int rad = 1; rad <= c.cutoff(); ++rad) {
    if (!(shell[rad] > 0.0)) continue;
    const double x = 0.5 * std::log1p(double(rad) * rad);
    const double y = std::log(shell[rad]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2) {
    const double den = count * sxx - sx * sx;
    r.fitted_order = den != 0.0 ? -(count * sxy - sx * sy) / den : 0.0;
  } else {
    // at most one nonzero shell: faster than any power on the tested range
    r.fitted_order = std::numeric_limits<double>::infinity();
  }

  bool outer_below_floor = true;
  const double scale = std::max(shell[0], *std::max_element(shell.begin(), shell.end()));
  for (int rad = c.cutoff() / 2 + 1; rad <= c.cutoff(); ++rad)
    outer_below_floor = outer_below_floor && shell[rad] < kRapidFloor * std::max(1.0, scale);
  r.is_rapid = r.fitted_order > kRapidOrder || outer_below_floor;
  return r;
}

EmbeddingReport embedding_check(const SampledField& f, double s) {
  if (!(s > f.dim() / 2.0))
    throw std::invalid_argument("embedding_check: s must exceed n/2");
  EmbeddingReport r;
  const CoeffTable c = analyze(f, f.size() / 2 - 1);
  r.hs = hs_norm(c, s);
  std::vector<double> terms(c.size());
  for (Index i = 0; i < c.size(); ++i)
    terms[i] = std::pow(1.0 + squared_norm(c.mode_at(i)), -s);
  r.bound_constant = std::sqrt(spectral::compensated_sum(terms));
  if (r.hs == 0.0) {
    r.holds = f.values().cwiseAbs().maxCoeff() == 0.0;
    return r;
  }
  for (Index i = 0; i < f.values().size(); ++i) {
    const auto p = f.point(i);
    const double w = std::abs(conjugation_weight(f.spec(), std::span<const double>(p.data(), f.dim())));
    r.max_ratio = std::max(r.max_ratio, std::abs(f.values()[i]) * w / r.hs);
  }
  r.holds = r.max_ratio <= r.bound_constant * (1.0 + 1e-12);
  return r;
}

}  // namespace thetaper
