// Shared fixtures: seeded random band-limited fields and direct-sum oracles.

#pragma once

#include <cmath>
#include <random>

#include <thetaper/core.hpp>
#include <thetaper/fourier.hpp>

namespace support {

using namespace thetaper;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }
inline int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng()); }
inline Complex gaussian_complex() {
  std::normal_distribution<double> d;
  return {d(rng()), d(rng())};
}

/// Random table on |xi_j| <= band, zero elsewhere in a box of `cutoff`.
inline CoeffTable random_table(const ThetaSpec& spec, int cutoff, int band) {
  CoeffTable c(spec, cutoff);
  for (Index i = 0; i < c.size(); ++i) {
    const Mode xi = c.mode_at(i);
    if (std::abs(xi[0]) <= band && std::abs(xi[1]) <= band) c.entries()[i] = gaussian_complex();
  }
  return c;
}

inline SampledField random_field(const ThetaSpec& spec, int n, int band) {
  return synthesize(random_table(spec, band, band), GridSpec(spec.dim(), n));
}

/// Basis function e_xi(x) = exp(i (2 pi / T) x . (xi - i log theta / 2 pi)).
inline Complex basis(const ThetaSpec& spec, const Mode& xi, std::array<double, 2> x) {
  Complex e = 0.0;
  for (int j = 0; j < spec.dim(); ++j)
    e += x[j] * (Complex(0, kTwoPi * xi[j]) + spec.log(j)) / spec.period();
  return std::exp(e);
}

/// Coefficient as the node mean of f / e_xi, without FFTs.
inline Complex direct_coefficient(const SampledField& f, const Mode& xi) {
  Complex acc = 0.0;
  for (Index i = 0; i < f.values().size(); ++i) acc += f.values()[i] / basis(f.spec(), xi, f.point(i));
  return acc / double(f.values().size());
}

inline double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace support
