// Shared types for (theta, T)-periodic function calculus: the quasi-periodic
// structure, uniform grids, sampled fields and Fourier coefficient tables.
//
// A function f on R^n is (theta, T)-periodic when f(x + T e_j) = theta_j f(x).
// Such an f is determined by its restriction to the fundamental cell
// [0, T)^n, which is what SampledField stores.

#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace thetaper {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Lattice point of Z^n. For one-dimensional data only the first component
/// is meaningful and the second is kept at zero.
using Mode = std::array<int, 2>;

/// The pair (theta, T) together with a fixed branch of the complex logarithm:
/// log(theta_j) = Log(theta_j) + 2*pi*i*k_j with Log the principal value,
/// Arg in (-pi, pi].
class ThetaSpec {
 public:
  ThetaSpec(std::vector<Complex> theta, double period,
            std::vector<int> log_branch = {});

  /// theta = (1, ..., 1): the classical periodic case.
  static ThetaSpec periodic(int dim, double period = kTwoPi);

  /// Spec whose logarithm is exactly `logs` (theta_j = exp(logs_j)); the
  /// branch offsets are chosen so log(theta_j) reproduces logs_j.
  static ThetaSpec from_logs(std::span<const Complex> logs, double period);

  int dim() const { return static_cast<int>(theta_.size()); }
  double period() const { return period_; }
  const std::vector<Complex>& theta() const { return theta_; }
  Complex theta(int j) const { return theta_[j]; }
  const std::vector<int>& log_branch() const { return branch_; }

  Complex log(int j) const;
  /// ln|theta_j|, computed without forming |theta_j| products.
  double log_abs(int j) const;

  /// Scalar factor prod_j theta_j^{m_j} for an integer shift, evaluated as
  /// exp(sum m_j log theta_j).
  Complex shift_factor(std::span<const int> periods) const;

  /// True when every theta_j == 1 under the principal branch with zero offsets.
  bool is_periodic() const;

  friend bool operator==(const ThetaSpec&, const ThetaSpec&) = default;

 private:
  std::vector<Complex> theta_;
  double period_;
  std::vector<int> branch_;
};

/// Returns `spec` with every branch offset incremented by k_j. theta is
/// untouched; only the chosen logarithm moves by 2*pi*i*k_j.
ThetaSpec shift_log_branch(const ThetaSpec& spec, std::span<const int> k);

/// Uniform grid with N nodes per axis on [0, T)^n; node m sits at m*T/N and
/// the right endpoint is implied by quasi-periodicity.
struct GridSpec {
  int dim = 1;
  int size = 0;

  GridSpec(int dim, int size);

  Index total() const { return dim == 1 ? size : Index(size) * size; }
  double node(int m, double period) const { return m * period / size; }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Samples of a (theta, T)-periodic function on the fundamental cell.
///
/// Layout is row-major over axes: for n = 2 the sample at node (m1, m2) sits
/// at flat index m1 * N + m2, so axis 0 (x_1) varies slowest.
class SampledField {
 public:
  SampledField(GridSpec grid, ComplexVector values, ThetaSpec spec);

  /// Zero field on the grid.
  SampledField(GridSpec grid, ThetaSpec spec);

  const GridSpec& grid() const { return grid_; }
  const ThetaSpec& spec() const { return spec_; }
  const ComplexVector& values() const { return values_; }
  ComplexVector& values() { return values_; }

  int dim() const { return grid_.dim; }
  int size() const { return grid_.size; }

  Complex operator()(int m) const { return values_[m]; }
  Complex operator()(int m1, int m2) const {
    return values_[Index(m1) * grid_.size + m2];
  }
  Complex& operator()(int m) { return values_[m]; }
  Complex& operator()(int m1, int m2) {
    return values_[Index(m1) * grid_.size + m2];
  }

  /// Value at an arbitrary integer node index (may lie outside [0, N)),
  /// obtained by wrapping and applying theta factors.
  Complex at_node(std::span<const int> m) const;

  /// Point coordinates of flat index `i`.
  std::array<double, 2> point(Index i) const;

 private:
  GridSpec grid_;
  ComplexVector values_;
  ThetaSpec spec_;
};

/// Samples a callable f(x) (x given as std::array<double, 2>) on the grid.
template <class F>
SampledField sample(const GridSpec& grid, const ThetaSpec& spec, F&& f) {
  SampledField out(grid, spec);
  for (Index i = 0; i < grid.total(); ++i) out.values()[i] = f(out.point(i));
  return out;
}

/// Finite table of Fourier coefficients over the box |xi_j| <= cutoff.
/// Every lattice point of the box is present (zeros allowed).
class CoeffTable {
 public:
  CoeffTable(ThetaSpec spec, int cutoff);
  CoeffTable(ThetaSpec spec, int cutoff, ComplexVector entries);

  const ThetaSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim(); }
  int cutoff() const { return cutoff_; }
  int width() const { return 2 * cutoff_ + 1; }
  Index size() const { return entries_.size(); }

  const ComplexVector& entries() const { return entries_; }
  ComplexVector& entries() { return entries_; }

  bool contains(const Mode& xi) const;
  Complex at(const Mode& xi) const;  // zero outside the box
  Complex& operator[](const Mode& xi);
  Complex operator[](const Mode& xi) const;

  Index index_of(const Mode& xi) const;
  Mode mode_at(Index i) const;

 private:
  ThetaSpec spec_;
  int cutoff_;
  ComplexVector entries_;
};

/// Evaluates f at an arbitrary point of R^n: reduce x to the fundamental cell,
/// trigonometrically interpolate the conjugated periodic part there, undo the
/// weight, and apply prod theta_j^{floor(x_j / T)}.
Complex extend_field(const SampledField& f, std::span<const double> x);

/// Conjugation weight e^{-x . log(theta) / T} stripping the quasi-periodic
/// growth; its real part is accumulated as a log-sum before exponentiation.
Complex conjugation_weight(const ThetaSpec& spec, std::span<const double> x);

double squared_norm(const Mode& xi);

}  // namespace thetaper
