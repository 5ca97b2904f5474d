#include "thetaper/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "thetaper/spectral.hpp"

namespace thetaper {

namespace {

constexpr double kMinModulus = 1e-300;
constexpr double kLogConsistency = 1e-12;

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

ThetaSpec::ThetaSpec(std::vector<Complex> theta, double period,
                     std::vector<int> log_branch)
    : theta_(std::move(theta)), period_(period), branch_(std::move(log_branch)) {
  if (theta_.empty() || theta_.size() > 2)
    throw std::invalid_argument("ThetaSpec: dimension must be 1 or 2");
  if (!(period_ > 0.0) || !std::isfinite(period_))
    throw std::invalid_argument("ThetaSpec: period must be positive and finite");
  if (branch_.empty()) branch_.assign(theta_.size(), 0);
  if (branch_.size() != theta_.size())
    throw std::invalid_argument("ThetaSpec: log_branch length differs from theta");
  for (int j = 0; j < dim(); ++j) {
    const Complex t = theta_[j];
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
      throw std::invalid_argument("ThetaSpec: theta must be finite");
    if (std::abs(t) <= kMinModulus)
      throw std::invalid_argument("ThetaSpec: theta_" + std::to_string(j + 1) +
                                  " is zero");
    const Complex back = std::exp(log(j));
    if (std::abs(back - t) > kLogConsistency * std::abs(t))
      throw std::invalid_argument(
          "ThetaSpec: exp(log theta) drifts from theta; branch offset too large");
  }
}

ThetaSpec ThetaSpec::periodic(int dim, double period) {
  return ThetaSpec(std::vector<Complex>(dim, 1.0), period);
}

ThetaSpec ThetaSpec::from_logs(std::span<const Complex> logs, double period) {
  std::vector<Complex> theta;
  std::vector<int> branch;
  for (const Complex& l : logs) {
    const Complex t = std::exp(l);
    theta.push_back(t);
    const double arg = std::arg(t);
    branch.push_back(static_cast<int>(std::lround((l.imag() - arg) / kTwoPi)));
  }
  return ThetaSpec(std::move(theta), period, std::move(branch));
}

Complex ThetaSpec::log(int j) const {
  const Complex t = theta_[j];
  return Complex(log_abs(j), std::arg(t) + kTwoPi * branch_[j]);
}

double ThetaSpec::log_abs(int j) const {
  const Complex t = theta_[j];
  // hypot-free: log|t| = log(max) + 0.5 log(1 + (min/max)^2)
  const double a = std::abs(t.real()), b = std::abs(t.imag());
  const double hi = std::max(a, b), lo = std::min(a, b);
  const double r = lo / hi;
  return std::log(hi) + 0.5 * std::log1p(r * r);
}

Complex ThetaSpec::shift_factor(std::span<const int> periods) const {
  Complex e = 0.0;
  for (int j = 0; j < dim(); ++j) {
    if (periods[j] != 0) e += double(periods[j]) * log(j);
  }
  return std::exp(e);
}

bool ThetaSpec::is_periodic() const {
  for (int j = 0; j < dim(); ++j)
    if (theta_[j] != Complex(1.0) || branch_[j] != 0) return false;
  return true;
}

ThetaSpec shift_log_branch(const ThetaSpec& spec, std::span<const int> k) {
  if (static_cast<int>(k.size()) != spec.dim())
    throw std::invalid_argument("shift_log_branch: length differs from dim");
  std::vector<int> branch = spec.log_branch();
  for (int j = 0; j < spec.dim(); ++j) branch[j] += k[j];
  return ThetaSpec(spec.theta(), spec.period(), std::move(branch));
}

GridSpec::GridSpec(int dim_, int size_) : dim(dim_), size(size_) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("GridSpec: dimension must be 1 or 2");
  if (size < 4 || !spectral::is_power_of_two(size))
    throw std::invalid_argument("GridSpec: N must be a power of two >= 4");
}

SampledField::SampledField(GridSpec grid, ComplexVector values, ThetaSpec spec)
    : grid_(grid), values_(std::move(values)), spec_(std::move(spec)) {
  if (values_.size() != grid_.total())
    throw std::invalid_argument("SampledField: expected N^n samples");
  if (spec_.dim() != grid_.dim)
    throw std::invalid_argument("SampledField: grid and theta dimensions differ");
}

SampledField::SampledField(GridSpec grid, ThetaSpec spec)
    : SampledField(grid, ComplexVector::Zero(grid.total()), std::move(spec)) {}

Complex SampledField::at_node(std::span<const int> m) const {
  const int n = grid_.size;
  std::array<int, 2> wraps{0, 0};
  std::array<int, 2> local{0, 0};
  for (int j = 0; j < dim(); ++j) {
    wraps[j] = floor_div(m[j], n);
    local[j] = m[j] - wraps[j] * n;
  }
  const Complex base = dim() == 1 ? (*this)(local[0]) : (*this)(local[0], local[1]);
  if (wraps[0] == 0 && wraps[1] == 0) return base;
  return base * spec_.shift_factor(std::span<const int>(wraps.data(), dim()));
}

std::array<double, 2> SampledField::point(Index i) const {
  const double t = spec_.period();
  if (dim() == 1) return {grid_.node(static_cast<int>(i), t), 0.0};
  const int m1 = static_cast<int>(i / grid_.size);
  const int m2 = static_cast<int>(i % grid_.size);
  return {grid_.node(m1, t), grid_.node(m2, t)};
}

CoeffTable::CoeffTable(ThetaSpec spec, int cutoff)
    : spec_(std::move(spec)), cutoff_(cutoff) {
  if (cutoff_ < 0) throw std::invalid_argument("CoeffTable: negative cutoff");
  const Index w = width();
  entries_ = ComplexVector::Zero(spec_.dim() == 1 ? w : w * w);
}

CoeffTable::CoeffTable(ThetaSpec spec, int cutoff, ComplexVector entries)
    : CoeffTable(std::move(spec), cutoff) {
  if (entries.size() != entries_.size())
    throw std::invalid_argument("CoeffTable: entry count does not match box");
  for (Index i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i].real()) || !std::isfinite(entries[i].imag()))
      throw std::invalid_argument("CoeffTable: non-finite coefficient");
  }
  entries_ = std::move(entries);
}

bool CoeffTable::contains(const Mode& xi) const {
  if (std::abs(xi[0]) > cutoff_) return false;
  if (dim() == 2 && std::abs(xi[1]) > cutoff_) return false;
  if (dim() == 1 && xi[1] != 0) return false;
  return true;
}

Index CoeffTable::index_of(const Mode& xi) const {
  if (dim() == 1) return xi[0] + cutoff_;
  return Index(xi[0] + cutoff_) * width() + (xi[1] + cutoff_);
}

Mode CoeffTable::mode_at(Index i) const {
  if (dim() == 1) return {static_cast<int>(i) - cutoff_, 0};
  return {static_cast<int>(i / width()) - cutoff_,
          static_cast<int>(i % width()) - cutoff_};
}

Complex CoeffTable::at(const Mode& xi) const {
  return contains(xi) ? entries_[index_of(xi)] : Complex(0.0);
}

Complex& CoeffTable::operator[](const Mode& xi) {
  if (!contains(xi)) throw std::out_of_range("CoeffTable: mode outside box");
  return entries_[index_of(xi)];
}

Complex CoeffTable::operator[](const Mode& xi) const {
  if (!contains(xi)) throw std::out_of_range("CoeffTable: mode outside box");
  return entries_[index_of(xi)];
}

Complex conjugation_weight(const ThetaSpec& spec, std::span<const double> x) {
  double re = 0.0, im = 0.0;
  for (int j = 0; j < spec.dim(); ++j) {
    const Complex l = spec.log(j);
    re -= x[j] * l.real() / spec.period();
    im -= x[j] * l.imag() / spec.period();
  }
  return std::polar(std::exp(re), im);
}

Complex extend_field(const SampledField& f, std::span<const double> x) {
  const ThetaSpec& spec = f.spec();
  const double t = spec.period();
  const int n = f.size();
  std::array<int, 2> wraps{0, 0};
  std::array<double, 2> local{0.0, 0.0};
  for (int j = 0; j < f.dim(); ++j) {
    wraps[j] = static_cast<int>(std::floor(x[j] / t));
    local[j] = x[j] - wraps[j] * t;
  }

  // conjugated periodic part on the grid
  ComplexVector g(f.values().size());
  for (Index i = 0; i < g.size(); ++i) {
    const auto p = f.point(i);
    g[i] = f.values()[i] * conjugation_weight(spec, std::span<const double>(p.data(), f.dim()));
  }

  Complex periodic_value;
  if (f.dim() == 1) {
    const ComplexVector c = spectral::periodic_coefficients(g);
    periodic_value = spectral::interpolate(c, kTwoPi * local[0] / t);
  } else {
    const ComplexVector c = spectral::dft2(g, n) / double(g.size());
    const double y1 = kTwoPi * local[0] / t, y2 = kTwoPi * local[1] / t;
    std::vector<Complex> b1(n), b2(n);
    for (int j = 0; j < n; ++j) {
      const int nu = spectral::frequency(j, n);
      const bool nyq = j == n / 2;
      b1[j] = nyq ? Complex(std::cos(nu * y1)) : std::polar(1.0, nu * y1);
      b2[j] = nyq ? Complex(std::cos(nu * y2)) : std::polar(1.0, nu * y2);
    }
    periodic_value = 0.0;
    for (int j1 = 0; j1 < n; ++j1) {
      Complex row = 0.0;
      for (int j2 = 0; j2 < n; ++j2) row += c[Index(j1) * n + j2] * b2[j2];
      periodic_value += row * b1[j1];
    }
  }
  const Complex undo = 1.0 / conjugation_weight(spec, std::span<const double>(local.data(), f.dim()));
  const Complex shift =
      (wraps[0] == 0 && wraps[1] == 0)
          ? Complex(1.0)
          : spec.shift_factor(std::span<const int>(wraps.data(), f.dim()));
  return periodic_value * undo * shift;
}

double squared_norm(const Mode& xi) {
  return double(xi[0]) * xi[0] + double(xi[1]) * xi[1];
}

}  // namespace thetaper
