// Built-in field expressions for job configs.
//
// A field block is one of
//   {"terms": [term, ...], "scale": z}   sum of terms, times scale
//   {"csv": "path"} / {"binary": "path"}
// where z is a number or [re, im] and a term is
//   {"type": "const", "value": z}
//   {"type": "exp",   "rate": [z, ...], "coef": z}       coef e^{rate . x}
//   {"type": "sin" | "cos", "freq": [k, ...], "coef": z}  coef sin(2 pi k . x / T)
//   {"type": "poly",  "coeffs": [z, ...], "axis": j}      sum_i coeffs_i x_j^i
//   {"type": "modes", "entries": [{"xi": [m, ...], "value": z}, ...]}
//                                 sum value e^{i (2 pi / T) x . (xi - i log theta / 2 pi)}
//   {"type": "product", "factors": [term, ...], "coef": z}

#pragma once

#include <filesystem>

#include <thetaper/core.hpp>
#include <thetaper/io.hpp>

namespace thetaper::cli {

/// Evaluates a term list at a point.
Complex eval_terms(const io::Json& terms, const ThetaSpec& spec, std::span<const double> x);

/// Builds a field on the grid from a field block; paths resolve against base.
SampledField make_field(const io::Json& block, const GridSpec& grid, const ThetaSpec& spec,
                        const std::filesystem::path& base);

/// Trace of a coefficient block over x_1 in [0, T): a constant is returned as
/// a constant-valued trace.
ComplexVector make_trace(const io::Json& block, int n, double period);

}  // namespace thetaper::cli
