// Continued-fraction classification of real numbers: rational, quadratic
// irrational (periodic tail), non-Liouville evidence, or Liouville-suspect.
//
// The input is converted to an exact rational x together with a resolution
// delta (how far the true number may sit from x). Convergents p/q are trusted
// while q^2 delta < 0.1; past that horizon partial quotients reflect rounding
// of the input rather than the number itself.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thetaper {

enum class DiophantineKind { Rational, QuadraticIrrational, NonLiouville, LiouvilleSuspect };

std::string to_string(DiophantineKind k);

struct DiophantineClass {
  DiophantineKind kind = DiophantineKind::NonLiouville;
  // exact integers in decimal notation
  std::vector<std::string> partial_quotients;
  std::vector<std::pair<std::string, std::string>> convergents;
  /// -log|x - p/q| / log q per convergent (NaN for q = 1 or exact hits).
  std::vector<double> exponents;
  double best_exponent = 0.0;
  bool horizon_reached = false;
  std::optional<std::pair<std::string, std::string>> rational;
  std::optional<int> period;  // period of the repeating tail
  std::string note;

  bool non_liouville() const {
    return kind == DiophantineKind::QuadraticIrrational || kind == DiophantineKind::NonLiouville;
  }
};

struct ClassifyOptions {
  int depth = 40;       // partial quotients examined, >= 5
  double k_max = 10.0;  // exponents above this flag a Liouville suspect
};

/// Double input: exact binary value, resolution 1e-14 max(1, |alpha|).
DiophantineClass classify_real(double alpha, const ClassifyOptions& opt = {});

/// Decimal input such as "0.110001000000000000000001" or "1.5e-3": exact
/// decimal value, resolution half a unit in the last written digit.
DiophantineClass classify_decimal(const std::string& decimal, const ClassifyOptions& opt = {});

}  // namespace thetaper
