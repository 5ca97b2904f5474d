#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <thetaper/fourier.hpp>
#include <thetaper/transform.hpp>

#include "support.hpp"

using namespace thetaper;
using support::uniform;

namespace {

double max_off(const CoeffTable& c, const Mode& keep) {
  double m = 0.0;
  for (Index i = 0; i < c.size(); ++i)
    if (c.mode_at(i) != keep) m = std::max(m, std::abs(c.entries()[i]));
  return m;
}

ThetaSpec random_spec(int dim) {
  std::vector<Complex> theta;
  for (int j = 0; j < dim; ++j) theta.push_back(std::polar(uniform(0.3, 3.0), uniform(-kPi, kPi)));
  return ThetaSpec(theta, uniform(0.5, 7.0));
}

}  // namespace

TEST_CASE("analyze: single-mode examples") {
  const GridSpec g(1, 32);
  {
    const ThetaSpec s({1.0}, kTwoPi);
    const auto c = analyze(sample(g, s, [](auto x) { return std::polar(1.0, x[0]); }), 8);
    CHECK(std::abs(c[{1, 0}] - 1.0) < 1e-12);
    CHECK(max_off(c, {1, 0}) < 1e-12);
  }
  {
    const ThetaSpec s({2.0}, 1.0);
    const auto c = analyze(sample(g, s, [](auto x) { return Complex(std::pow(2.0, x[0])); }), 8);
    CHECK(std::abs(c[{0, 0}] - 1.0) < 1e-12);
    CHECK(max_off(c, {0, 0}) < 1e-12);
  }
  {
    const ThetaSpec s({-1.0}, kTwoPi);
    const auto c = analyze(sample(g, s, [](auto x) { return std::polar(1.0, x[0] / 2); }), 8);
    CHECK(std::abs(c[{0, 0}] - 1.0) < 1e-12);
    CHECK(max_off(c, {0, 0}) < 1e-12);
  }
  CHECK_THROWS_AS(analyze(SampledField(g, ThetaSpec({1.0}, 1.0)), 16), std::invalid_argument);
}

TEST_CASE("analyze agrees with the direct node sum") {
  for (int trial = 0; trial < 6; ++trial) {
    const ThetaSpec s = random_spec(1 + trial % 2);
    const auto f = support::random_field(s, 16, 4);
    const auto c = analyze(f, 7);
    for (Index i = 0; i < c.size(); ++i) {
      const Complex oracle = support::direct_coefficient(f, c.mode_at(i));
      CHECK(std::abs(c.entries()[i] - oracle) < 1e-12 * (1.0 + std::abs(oracle)) * 10);
    }
  }
}

TEST_CASE("synthesize: examples and round trip") {
  const GridSpec g(1, 16);
  CoeffTable one(ThetaSpec({2.0}, 1.0), 3);
  one[{0, 0}] = 1.0;
  const auto f = synthesize(one, g);
  for (int m = 0; m < 16; ++m) CHECK(std::abs(f(m) - std::pow(2.0, m / 16.0)) < 1e-12);
  CoeffTable per(ThetaSpec({1.0}, 1.0), 3);
  per[{0, 0}] = 1.0;
  CHECK(support::max_abs_diff(synthesize(per, g).values(), ComplexVector::Ones(16)) < 1e-15);

  for (int trial = 0; trial < 10; ++trial) {
    const ThetaSpec s = random_spec(1 + trial % 2);
    const int n = 32;
    const auto table = support::random_table(s, n / 4, n / 4);
    const auto field = synthesize(table, GridSpec(s.dim(), n));
    const auto again = synthesize(analyze(field, n / 2 - 1), GridSpec(s.dim(), n));
    CHECK(support::max_abs_diff(again.values(), field.values()) < 1e-10 * field.values().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("derivative multiplier examples") {
  CoeffTable a(ThetaSpec({1.0}, kTwoPi), 2);
  a[{1, 0}] = 1.0;
  CHECK(std::abs(derivative_coeffs(a, 0)[{1, 0}] - Complex(0, 1)) < 1e-15);
  CoeffTable b(ThetaSpec({std::exp(1.0)}, kTwoPi), 2);
  b[{0, 0}] = 1.0;
  CHECK(std::abs(derivative_coeffs(b, 0)[{0, 0}] - 1.0 / kTwoPi) < 1e-15);
  CoeffTable c(ThetaSpec({2.0}, 1.0), 2);
  c[{0, 0}] = 1.0;
  CHECK(std::abs(derivative_coeffs(c, 0)[{0, 0}] - std::log(2.0)) < 1e-15);
}

TEST_CASE("spectral derivative converges to centred differences at second order") {
  const ThetaSpec s({Complex(1.2, 0.9), Complex(0.4, -0.3)}, 2.0);
  const auto table = support::random_table(s, 3, 3);
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<double> errors;
    for (int n : {64, 128, 256}) {
      const auto f = synthesize(table, GridSpec(2, n));
      const auto d = synthesize(derivative_coeffs(table, axis), GridSpec(2, n));
      const double h = s.period() / n;
      double err = 0.0;
      for (int m1 = 0; m1 < n; m1 += n / 16) {
        for (int m2 = 0; m2 < n; m2 += n / 16) {
          std::array<int, 2> up{m1, m2}, down{m1, m2};
          up[axis] += 1;
          down[axis] -= 1;
          const Complex fd = (f.at_node(up) - f.at_node(down)) / (2 * h);
          err = std::max(err, std::abs(fd - d(m1, m2)));
        }
      }
      errors.push_back(err);
    }
    for (int k = 0; k + 1 < 3; ++k) {
      const double ratio = errors[k] / errors[k + 1];
      CHECK(ratio >= 3.6);
      CHECK(ratio <= 4.4);
    }
  }
}

TEST_CASE("analysis is linear") {
  const ThetaSpec s = random_spec(2);
  const auto f = support::random_field(s, 16, 3), g = support::random_field(s, 16, 3);
  const Complex a(0.3, -1.2), b(-2.0, 0.5);
  const SampledField h(f.grid(), a * f.values() + b * g.values(), s);
  const ComplexVector lhs = analyze(h, 7).entries();
  const ComplexVector rhs = a * analyze(f, 7).entries() + b * analyze(g, 7).entries();
  CHECK(support::max_abs_diff(lhs, rhs) < 1e-12 * (1 + rhs.cwiseAbs().maxCoeff()));
}

TEST_CASE("modulation shifts the table") {
  CoeffTable c(ThetaSpec({2.0}, 1.0), 3);
  c[{0, 0}] = 1.0;
  const auto r = apply_symmetry(c, Modulate{{1, 0}});
  CHECK(r.table[{1, 0}] == Complex(1.0));
  CHECK(r.table[{0, 0}] == Complex(0.0));
  CHECK_FALSE(r.truncated);
  CHECK(apply_symmetry(c, Modulate{{4, 0}}).truncated);
}

TEST_CASE("translation by a whole period multiplies by theta") {
  const ThetaSpec s({std::polar(2.0, 0.7), std::polar(0.5, -2.0)}, 1.7);
  const auto c = support::random_table(s, 4, 4);
  for (int j = 0; j < 2; ++j) {
    Translate t;
    t.a[j] = s.period();
    const auto r = apply_symmetry(c, t);
    CHECK(support::max_abs_diff(r.table.entries(), s.theta(j) * c.entries()) <= 1e-10 * c.entries().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("translation agrees with the extension at shifted nodes") {
  const ThetaSpec s({std::polar(1.5, 0.4)}, 2.0);
  const auto c = support::random_table(s, 4, 4);
  const GridSpec g(1, 16);
  const auto f = synthesize(c, g);
  const Translate t{{0.37, 0.0}};
  const auto shifted = synthesize(apply_symmetry(c, t).table, g);
  for (int m = 0; m < 16; ++m) {
    const double x = g.node(m, s.period()) + 0.37;
    CHECK(std::abs(shifted(m) - extend_field(f, std::span<const double>(&x, 1))) < 1e-9);
  }
}

TEST_CASE("dilation") {
  CoeffTable c(ThetaSpec({std::polar(2.0, 1.0)}, 1.0), 2);
  c[{1, 0}] = Complex(1, 2);
  c[{-1, 0}] = Complex(-3, 0.5);
  const auto r = apply_symmetry(c, Dilate{-1}).table;
  CHECK(r[{1, 0}] == Complex(-3, 0.5));
  CHECK(r[{-1, 0}] == Complex(1, 2));
  CHECK(std::abs(r.spec().theta(0) - 1.0 / c.spec().theta(0)) < 1e-14);
  CHECK_THROWS_AS(apply_symmetry(c, Dilate{0}), std::invalid_argument);

  // synthesized dilations evaluate f(k x)
  const ThetaSpec s({std::polar(1.3, 0.5)}, 2.0);
  const auto t = support::random_table(s, 3, 3);
  const auto f = synthesize(t, GridSpec(1, 16));
  for (int k : {2, -1, -3}) {
    const auto d = apply_symmetry(t, Dilate{k}).table;
    CHECK(d.spec().period() == doctest::Approx(2.0 / std::abs(k)));
    const auto fd = synthesize(d, GridSpec(1, 16));
    for (int m = 0; m < 16; ++m) {
      const double x = k * m * d.spec().period() / 16;
      CHECK(std::abs(fd(m) - extend_field(f, std::span<const double>(&x, 1))) < 1e-9);
    }
  }
}

TEST_CASE("L1 bounds") {
  const GridSpec g(1, 64);
  const ThetaSpec per({1.0}, 1.0);
  auto r = l1_bound_check(SampledField(g, ComplexVector::Ones(64), per));
  CHECK(r.lhs_max == doctest::Approx(1.0));
  CHECK(r.l1_norm == doctest::Approx(1.0));
  CHECK(r.holds);

  const ThetaSpec two({2.0}, 1.0);
  r = l1_bound_check(sample(g, two, [](auto x) { return Complex(std::pow(2.0, x[0])); }));
  CHECK(r.lhs_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.l1_norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.weighted_bound == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));
  CHECK(r.holds);

  const ThetaSpec half({0.5}, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = support::random_field(half, 64, 5);
    r = l1_bound_check(f);
    CHECK(r.holds);
    CHECK(r.lhs_max < r.l1_norm);
  }
}

TEST_CASE("Plancherel identity and sandwich") {
  CoeffTable c(ThetaSpec({2.0}, 1.0), 3);
  c[{0, 0}] = 1.0;
  auto r = plancherel_check(synthesize(c, GridSpec(1, 32)));
  CHECK(r.coeff_l2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.weighted_l2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.plain_l2 == doctest::Approx(std::sqrt(3.0 / std::log(4.0))).epsilon(1e-12));
  CHECK(r.sandwich_holds);
  CHECK(r.identity_holds);

  const ThetaSpec per({1.0}, kTwoPi);
  r = plancherel_check(sample(GridSpec(1, 32), per, [](auto x) { return Complex(std::sin(x[0])); }));
  CHECK(r.coeff_l2 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.plain_l2 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));

  const ThetaSpec mixed({3.0, 0.25}, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    CoeffTable t(mixed, 4);
    for (int k = 0; k < 5; ++k) t[{support::uniform_int(-4, 4), support::uniform_int(-4, 4)}] = support::gaussian_complex();
    r = plancherel_check(synthesize(t, GridSpec(2, 32)));
    CHECK(r.k_min == doctest::Approx(0.25));
    CHECK(r.k_max == doctest::Approx(3.0));
    CHECK(r.identity_holds);
    CHECK(r.sandwich_holds);
    CHECK_FALSE(r.aliasing_warning);
  }
}
