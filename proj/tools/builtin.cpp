#include "builtin.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace thetaper::cli {

namespace {

using io::Json;

void only_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
}

Complex opt_complex(const Json& j, const char* key, Complex dflt) {
  return j.contains(key) ? io::complex_from_json(j[key]) : dflt;
}

std::vector<double> real_list(const Json& j, const char* key, int dim, const std::string& where) {
  if (!j.contains(key) || !j[key].is_array() || static_cast<int>(j[key].size()) != dim)
    throw std::invalid_argument(where + ": '" + key + "' must be a list of " + std::to_string(dim) + " numbers");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw std::invalid_argument(where + ": '" + key + "' entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Complex eval_term(const Json& t, const ThetaSpec& spec, std::span<const double> x) {
  if (!t.is_object() || !t.contains("type") || !t["type"].is_string())
    throw std::invalid_argument("term: needs a string 'type'");
  const std::string type = t["type"];
  const int dim = static_cast<int>(x.size());
  const double period = spec.period();
  const std::string where = "term '" + type + "'";
  if (type == "const") {
    only_keys(t, {"type", "value"}, where);
    return opt_complex(t, "value", 1.0);
  }
  if (type == "exp") {
    only_keys(t, {"type", "rate", "coef"}, where);
    if (!t.contains("rate") || !t["rate"].is_array() || static_cast<int>(t["rate"].size()) != dim)
      throw std::invalid_argument(where + ": 'rate' must list one value per axis");
    Complex e = 0.0;
    for (int j = 0; j < dim; ++j) e += io::complex_from_json(t["rate"][j]) * x[j];
    return opt_complex(t, "coef", 1.0) * std::exp(e);
  }
  if (type == "sin" || type == "cos") {
    only_keys(t, {"type", "freq", "coef"}, where);
    const auto k = real_list(t, "freq", dim, where);
    double arg = 0.0;
    for (int j = 0; j < dim; ++j) arg += kTwoPi * k[j] * x[j] / period;
    return opt_complex(t, "coef", 1.0) * (type == "sin" ? std::sin(arg) : std::cos(arg));
  }
  if (type == "poly") {
    only_keys(t, {"type", "coeffs", "axis"}, where);
    const int axis = t.value("axis", 0);
    if (axis < 0 || axis >= dim) throw std::invalid_argument(where + ": bad axis");
    if (!t.contains("coeffs") || !t["coeffs"].is_array()) throw std::invalid_argument(where + ": 'coeffs' must be a list");
    Complex acc = 0.0;
    for (auto it = t["coeffs"].rbegin(); it != t["coeffs"].rend(); ++it)
      acc = acc * x[axis] + io::complex_from_json(*it);
    return acc;
  }
  if (type == "modes") {
    only_keys(t, {"type", "entries"}, where);
    if (!t.contains("entries") || !t["entries"].is_array()) throw std::invalid_argument(where + ": 'entries' must be a list");
    Complex acc = 0.0;
    for (const auto& e : t["entries"]) {
      only_keys(e, {"xi", "value"}, where + " entry");
      const auto xi = real_list(e, "xi", dim, where);
      Complex ex = 0.0;
      for (int j = 0; j < dim; ++j) {
        if (xi[j] != std::floor(xi[j])) throw std::invalid_argument(where + ": xi must be integers");
        ex += x[j] * (Complex(0.0, kTwoPi * xi[j]) + spec.log(j)) / period;
      }
      acc += opt_complex(e, "value", 1.0) * std::exp(ex);
    }
    return acc;
  }
  if (type == "product") {
    only_keys(t, {"type", "factors", "coef"}, where);
    if (!t.contains("factors") || !t["factors"].is_array()) throw std::invalid_argument(where + ": 'factors' must be a list");
    Complex acc = opt_complex(t, "coef", 1.0);
    for (const auto& f : t["factors"]) acc *= eval_term(f, spec, x);
    return acc;
  }
  throw std::invalid_argument("term: unknown type '" + type + "'");
}

}  // namespace

Complex eval_terms(const Json& terms, const ThetaSpec& spec, std::span<const double> x) {
  if (!terms.is_array()) throw std::invalid_argument("'terms' must be a list");
  Complex acc = 0.0;
  for (const auto& t : terms) acc += eval_term(t, spec, x);
  return acc;
}

SampledField make_field(const Json& block, const GridSpec& grid, const ThetaSpec& spec,
                        const std::filesystem::path& base) {
  if (!block.is_object()) throw std::invalid_argument("field block must be an object");
  if (block.contains("csv")) {
    only_keys(block, {"csv"}, "field");
    SampledField f = io::field_from_csv(io::read_file(base / block["csv"].get<std::string>()), spec);
    if (!(f.grid() == grid)) throw std::invalid_argument("field csv: grid differs from configured N");
    return f;
  }
  if (block.contains("binary")) {
    only_keys(block, {"binary"}, "field");
    SampledField f = io::field_from_binary(io::read_file(base / block["binary"].get<std::string>()), spec.theta());
    if (!(f.grid() == grid)) throw std::invalid_argument("binary field: grid differs from configured N");
    if (!(f.spec() == spec)) throw std::invalid_argument("binary field: T or branch differs from configured theta");
    return f;
  }
  only_keys(block, {"terms", "scale"}, "field");
  if (!block.contains("terms")) throw std::invalid_argument("field block needs 'terms', 'csv' or 'binary'");
  const Complex scale = opt_complex(block, "scale", 1.0);
  const Json& terms = block["terms"];
  return sample(grid, spec, [&](const std::array<double, 2>& p) {
    return scale * eval_terms(terms, spec, std::span<const double>(p.data(), grid.dim));
  });
}

ComplexVector make_trace(const Json& block, int n, double period) {
  if (block.is_number() || block.is_array()) return ComplexVector::Constant(n, io::complex_from_json(block));
  only_keys(block, {"terms", "scale"}, "trace");
  if (!block.contains("terms")) throw std::invalid_argument("trace block needs 'terms'");
  const ThetaSpec spec = ThetaSpec::periodic(1, period);
  const Complex scale = opt_complex(block, "scale", 1.0);
  ComplexVector t(n);
  for (int m = 0; m < n; ++m) {
    const double x = m * period / n;
    t[m] = scale * eval_terms(block["terms"], spec, std::span<const double>(&x, 1));
  }
  return t;
}

}  // namespace thetaper::cli
