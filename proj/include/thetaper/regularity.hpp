// Global hypoellipticity (GH) and global solvability (GS) diagnosis for
//   L = d/dx_1 + c(x_1) d/dx_2 + q
// acting on (theta, T)-periodic functions of two variables, through the
// conjugated operator on the torus
//   (2 pi / T) Lt = Omega L Omega^{-1},
//   Lt = d/dy_1 + c(T y_1 / 2 pi) d/dy_2 + (log theta_1 + c log theta_2) / 2 pi
//        + (T / 2 pi) q.
// For constant coefficients the symbol of Lt at xi is i sigma(xi) with
//   sigma(xi) = xi_1 + c xi_2 - i [(log theta_1 + c log theta_2) / 2 pi + q T / 2 pi].

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "thetaper/core.hpp"
#include "thetaper/diophantine.hpp"

namespace thetaper {

/// Samples of a T-periodic function of x_1 on the uniform [0, T) grid.
using Trace = ComplexVector;

/// Coefficient block of L. A q field is a T-periodic function of (x_1, x_2)
/// sampled row-major on an N x N grid (x_1 slowest).
struct OperatorSpec {
  ThetaSpec theta;
  std::variant<Complex, Trace> c;
  std::variant<Complex, Trace, SampledField> q;

  static OperatorSpec constant(ThetaSpec theta, Complex c, Complex q);

  bool constant_coefficients() const;
  bool q_depends_on_x2() const;
  /// Grid size of sampled coefficients, 0 if all constant.
  int trace_size() const;
  /// Checks n = 2, consistent sizes (power of two >= 4), finite samples and
  /// smooth periodic continuation. Throws std::invalid_argument.
  void validate() const;
};

/// High-frequency energy share above which a trace is taken as not periodic.
inline constexpr double kTracePeriodicityTol = 1e-12;

Complex constant_symbol(const ThetaSpec& spec, Complex c, Complex q, const Mode& xi);
Complex constant_symbol(const OperatorSpec& op, const Mode& xi);

/// Coefficients of Lt. Traces live on the 2 pi-periodic grid (same node
/// indices as the T grid). zero_order is a length-N trace, or an N x N
/// row-major array when q depends on x_2.
struct TildeParams {
  std::variant<Complex, Trace> c_eff;
  std::variant<Complex, ComplexVector> zero_order;
  Complex a0 = 0.0;  // mean of Re c
  Complex c0 = 0.0;  // mean of c
  Complex q0 = 0.0;  // mean of q over both variables
};

TildeParams tilde_params(const OperatorSpec& op);

/// (2 pi / T) Lt g for a 2 pi-periodic field g on an N x N grid; coefficient
/// traces must have the same N.
SampledField apply_tilde_operator(const TildeParams& p, const SampledField& g, double period);

/// A(t) = int_0^t a - a0 t and Q(t) = int_0^t q - q0 t on the 2 pi grid.
struct PsiPhase {
  ComplexVector A;
  ComplexVector Q;
  Complex a0 = 0.0;
  Complex q0 = 0.0;
  double endpoint_mismatch = 0.0;  // max(|A(2 pi) - A(0)|, |Q(2 pi) - Q(0)|)
};

PsiPhase psi_phase(const Trace& a, const Trace& q);
/// Uses the supplied averages; throws std::invalid_argument when they leave
/// a drift larger than 1e-10 over one period.
PsiPhase psi_phase(const Trace& a, const Trace& q, Complex a0, Complex q0);

enum class Answer { Yes, No, Undecided };
enum class Basis { Analytic, Evidence, None };
std::string to_string(Answer a);
std::string to_string(Basis b);

struct DiagnoseOptions {
  int cutoff = 64;
  std::vector<double> k_grid = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double c_floor = 1e-6;
  ClassifyOptions classify;
  /// Decimal form of Re c for the continued-fraction step (keeps digits a
  /// double would lose); the double value is used when absent.
  std::optional<std::string> c_decimal;

  double imag_tol = 1e-12;         // |Im c| above this is "complex"
  double zero_tol = 1e-10;         // |sigma| < zero_tol (1 + |xi|) is a zero
  double exceptional_tol = 1e-10;  // coset membership search tolerance
  double stability_tol = 1e-9;     // C_k(cutoff) >= (1 - tol) C_k(cutoff / 2)
  double sign_tol = 1e-12;         // b within this of 0 does not count as a sign
  double b_zero_tol = 1e-10;       // max |b| below this means b == 0
};

struct ZeroLine {
  Mode point{0, 0};
  Mode direction{0, 0};
};

struct RegularityVerdict {
  Answer gh = Answer::Undecided;
  Answer gs = Answer::Undecided;
  Basis gh_basis = Basis::None;
  Basis gs_basis = Basis::None;
  std::string route;
  std::vector<Mode> witnesses;  // symbol zeros found by the scan
  std::size_t zero_count = 0;
  std::optional<ZeroLine> zero_line;
  std::optional<Mode> exceptional_mode;
  std::optional<DiophantineClass> diophantine;
  std::optional<double> constant_c;
  std::optional<double> order_k;
  std::vector<std::string> notes;
  DiagnoseOptions options;
};

RegularityVerdict diagnose_constant(const OperatorSpec& op, const DiagnoseOptions& opt = {});
RegularityVerdict diagnose_variable(const OperatorSpec& op, const DiagnoseOptions& opt = {});

}  // namespace thetaper
