#include "thetaper/diophantine.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace thetaper {

namespace {

namespace mp = boost::multiprecision;
using Int = mp::cpp_int;
using Rational = mp::cpp_rational;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
const Rational kHorizon(1, 10);
const Rational kRationalQuality(1, 1000);  // err q^2 below this reads as an exact hit

struct ExactInput {
  Rational x;
  Rational delta;
};

double log_int(const Int& n) {
  const Int a = mp::abs(n);
  if (a == 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = mp::msb(a) + 1;
  if (bits <= 1000) return std::log(a.convert_to<double>());
  const std::size_t drop = bits - 60;
  const Int head = a >> drop;
  return std::log(head.convert_to<double>()) + double(drop) * std::log(2.0);
}

double log_abs(const Rational& r) {
  return log_int(mp::numerator(r)) - log_int(mp::denominator(r));
}

Int floor_of(const Rational& r) {
  const Int& num = mp::numerator(r);
  const Int& den = mp::denominator(r);  // positive
  Int q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Rational pow10(int e) {
  Int p = mp::pow(Int(10), std::abs(e));
  return e >= 0 ? Rational(p) : Rational(Int(1), p);
}

int longest_periodic_tail(const std::vector<Int>& a, int period) {
  const int m = static_cast<int>(a.size());
  if (m < period) return 0;
  int len = period;
  for (int i = m - 1; i - period >= 0; --i) {
    if (a[i] != a[i - period]) break;
    ++len;
  }
  return len;
}

DiophantineClass expand(const ExactInput& in, const ClassifyOptions& opt) {
  if (opt.depth < 5) throw std::invalid_argument("classify_real: depth must be >= 5");
  DiophantineClass out;
  Rational r = in.x;
  Int p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  std::vector<Int> quotients;
  const Int small_q = 1000000;
  // inputs that are themselves fractions with a small denominator expand to
  // termination regardless of the horizon
  const bool short_fraction = mp::denominator(in.x) <= small_q;

  for (int m = 0; m <= opt.depth; ++m) {
    const Int a = floor_of(r);
    const Int p = a * p1 + p2;
    const Int q = a * q1 + q2;
    const Rational approx(p, q);
    const Rational err = mp::abs(in.x - approx);
    const bool exact = r == Rational(a);
    const Rational q2delta = Rational(q * q) * in.delta;
    const bool past_horizon = q2delta >= kHorizon;

    const bool exact_rational = exact && (q <= small_q || !past_horizon);
    const bool near_rational =
        !exact && !past_horizon && err <= in.delta && err * Rational(q * q) < kRationalQuality;
    if (!exact_rational && past_horizon && !short_fraction) {
      out.horizon_reached = true;
      break;
    }
    quotients.push_back(a);
    out.partial_quotients.push_back(a.str());
    out.convergents.emplace_back(p.str(), q.str());
    out.exponents.push_back(q > 1 && err != 0 ? -log_abs(err) / log_int(q) : kNan);
    if (exact_rational || near_rational) {
      out.kind = DiophantineKind::Rational;
      out.rational = std::make_pair(p.str(), q.str());
      if (near_rational) out.note = "within input resolution of p/q";
      return out;
    }
    r = 1 / (r - Rational(a));
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
  }

  std::vector<double> valid;
  for (double e : out.exponents)
    if (!std::isnan(e)) valid.push_back(e);

  for (std::size_t i = valid.size() / 2; i < valid.size(); ++i)
    out.best_exponent = std::max(out.best_exponent, valid[i]);

  bool record_growth = false;
  if (!valid.empty()) {
    double record = valid[0];
    int streak = 0;
    for (std::size_t i = 1; i < valid.size(); ++i) {
      if (valid[i] <= record) continue;
      streak = valid[i] - record >= 0.5 ? streak + 1 : 0;
      record = valid[i];
      if (streak >= 3 && record >= 4.0) record_growth = true;
    }
  }

  // repeating tail among a_1, a_2, ...
  const std::vector<Int> tail(quotients.begin() + (quotients.empty() ? 0 : 1), quotients.end());
  const int count = static_cast<int>(tail.size());
  for (int period = 1; period <= 6 && !out.period; ++period) {
    const int len = longest_periodic_tail(tail, period);
    if (len >= std::max(3 * period, 8) && 3 * len >= 2 * count) out.period = period;
  }

  if (valid.size() < 3) {
    out.kind = DiophantineKind::LiouvilleSuspect;
    out.note = "too few convergents resolved at the input precision";
  } else if (out.best_exponent > opt.k_max || record_growth) {
    out.kind = DiophantineKind::LiouvilleSuspect;
    out.note = record_growth ? "approximation exponent keeps growing across convergents"
                             : "approximation exponent exceeds k_max";
  } else if (out.period) {
    out.kind = DiophantineKind::QuadraticIrrational;
  } else {
    out.kind = DiophantineKind::NonLiouville;
  }
  return out;
}

}  // namespace

std::string to_string(DiophantineKind k) {
  switch (k) {
    case DiophantineKind::Rational:
      return "rational";
    case DiophantineKind::QuadraticIrrational:
      return "quadratic_irrational";
    case DiophantineKind::NonLiouville:
      return "non_liouville";
    case DiophantineKind::LiouvilleSuspect:
      return "liouville_suspect";
  }
  return "unknown";
}

DiophantineClass classify_real(double alpha, const ClassifyOptions& opt) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("classify_real: non-finite input");
  ExactInput in;
  if (alpha != 0.0) {
    int e = 0;
    const double m = std::frexp(alpha, &e);
    const auto mant = static_cast<long long>(std::ldexp(m, 53));
    in.x = Rational(Int(mant));
    const int shift = e - 53;
    const Int two = mp::pow(Int(2), std::abs(shift));
    in.x = shift >= 0 ? in.x * Rational(two) : in.x / Rational(two);
  }
  // 1e-14 as an exact rational, scaled by max(1, |alpha|)
  in.delta = Rational(1, Int("100000000000000"));
  if (std::abs(alpha) > 1.0) in.delta *= mp::abs(in.x);
  return expand(in, opt);
}

DiophantineClass classify_decimal(const std::string& s, const ClassifyOptions& opt) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  std::string digits;
  int frac = 0;
  bool dot = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      if (dot) ++frac;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  int exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    try {
      std::size_t used = 0;
      exponent = std::stoi(s.substr(i + 1), &used);
      i += 1 + used;
    } catch (const std::exception&) {
      throw std::invalid_argument("classify_decimal: bad exponent in '" + s + "'");
    }
  }
  if (digits.empty() || i != s.size())
    throw std::invalid_argument("classify_decimal: not a decimal number: '" + s + "'");
  // a leading zero would make the parser read octal
  const auto nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  ExactInput in;
  in.x = Rational(Int(digits)) * pow10(exponent - frac);
  if (negative) in.x = -in.x;
  in.delta = pow10(exponent - frac) / 2;
  return expand(in, opt);
}

}  // namespace thetaper
