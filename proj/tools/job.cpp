#include "job.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>

#include <thetaper/diophantine.hpp>
#include <thetaper/fourier.hpp>
#include <thetaper/io.hpp>
#include <thetaper/odesolve.hpp>
#include <thetaper/poincare.hpp>
#include <thetaper/regularity.hpp>
#include <thetaper/sobolev.hpp>
#include <thetaper/solver.hpp>
#include <thetaper/transform.hpp>

#include "builtin.hpp"
#include "invariants.hpp"

namespace thetaper::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

// Raised for solver outcomes that map to exit code 3 after the report is written.
struct NumericFailure {
  std::string message;
};

const std::set<std::string> kTopKeys = {
    "command", "theta", "N",  "cutoff",   "input", "coeffs_input", "operator", "lambda",
    "p",       "s",     "form", "diagnose", "outputs", "tolerances", "verify", "seed", "threads"};

const std::set<std::string> kCommands = {"transform", "analyze", "synthesize", "poincare",
                                         "diagnose",  "solve",   "ode",        "verify"};

void only_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
}

int get_int(const Json& j, const char* key, int dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number_integer()) throw std::invalid_argument(std::string("'") + key + "' must be an integer");
  return j[key].get<int>();
}

double get_double(const Json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) throw std::invalid_argument(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

Json mode_json(const Mode& m, int dim) {
  return dim == 1 ? Json::array({m[0]}) : Json::array({m[0], m[1]});
}

Json modes_json(const std::vector<Mode>& ms) {
  Json out = Json::array();
  for (const Mode& m : ms) out.push_back(mode_json(m, 2));
  return out;
}

Json complex_list(std::span<const Complex> zs) {
  Json out = Json::array();
  for (Complex z : zs) out.push_back(io::to_json(z));
  return out;
}

// p = "inf" or a number >= 1
double parse_p(const Json& v) {
  if (v.is_string() && v.get<std::string>() == "inf") return INFINITY;
  if (!v.is_number() || v.get<double>() < 1.0)
    throw std::invalid_argument("'p' entries must be numbers >= 1 or \"inf\"");
  return v.get<double>();
}

std::string number_key(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

OdeForm parse_form(const Json& cfg) {
  const std::string f = cfg.value("form", std::string("auto"));
  if (f == "auto") return OdeForm::Auto;
  if (f == "minus") return OdeForm::Minus;
  if (f == "plus") return OdeForm::Plus;
  throw std::invalid_argument("'form' must be auto, minus or plus");
}

struct Tolerances {
  DiagnoseOptions diag;
  SolveOptions solve;
};

const std::set<std::string> kToleranceKeys = {"imag_tol",      "zero_tol", "exceptional_tol",
                                              "stability_tol", "sign_tol", "b_zero_tol",
                                              "dead_mass_tol", "c_floor"};

Tolerances parse_tolerances(const Json& cfg) {
  Tolerances t;
  const Json j = cfg.value("tolerances", Json::object());
  only_keys(j, kToleranceKeys, "tolerances");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!it->is_number() || !(it->get<double>() >= 0.0))
      throw std::invalid_argument("tolerances: '" + it.key() + "' must be a non-negative number");
  t.diag.imag_tol = get_double(j, "imag_tol", t.diag.imag_tol);
  t.diag.zero_tol = get_double(j, "zero_tol", t.diag.zero_tol);
  t.diag.exceptional_tol = get_double(j, "exceptional_tol", t.diag.exceptional_tol);
  t.diag.stability_tol = get_double(j, "stability_tol", t.diag.stability_tol);
  t.diag.sign_tol = get_double(j, "sign_tol", t.diag.sign_tol);
  t.diag.b_zero_tol = get_double(j, "b_zero_tol", t.diag.b_zero_tol);
  t.diag.c_floor = get_double(j, "c_floor", t.diag.c_floor);
  t.solve.zero_tol = t.diag.zero_tol;
  t.solve.dead_mass_tol = get_double(j, "dead_mass_tol", t.solve.dead_mass_tol);
  return t;
}

Json tolerances_json(const Tolerances& t) {
  return Json{{"imag_tol", t.diag.imag_tol},
              {"zero_tol", t.diag.zero_tol},
              {"exceptional_tol", t.diag.exceptional_tol},
              {"stability_tol", t.diag.stability_tol},
              {"sign_tol", t.diag.sign_tol},
              {"b_zero_tol", t.diag.b_zero_tol},
              {"c_floor", t.diag.c_floor},
              {"dead_mass_tol", t.solve.dead_mass_tol},
              {"resonance_tol", kResonanceTol},
              {"compatibility_tol", kCompatibilityTol},
              {"aliasing_threshold", kAliasingThreshold},
              {"critical_tol", kCriticalTol}};
}

class Job {
 public:
  Job(Json cfg, fs::path base, fs::path out_dir, const JobArgs& args)
      : cfg_(std::move(cfg)), base_(std::move(base)), out_(std::move(out_dir)), args_(args) {}

  int run() {
    only_keys(cfg_, kTopKeys, "config");
    if (!cfg_.contains("command") || !cfg_["command"].is_string() ||
        !kCommands.count(cfg_["command"].get<std::string>()))
      throw std::invalid_argument("'command' must be one of transform, analyze, synthesize, "
                                  "poincare, diagnose, solve, ode, verify");
    command_ = cfg_["command"];
    resolved_ = cfg_;
    tol_ = parse_tolerances(cfg_);
    resolved_["tolerances"] = tolerances_json(tol_);
    const Json outputs = cfg_.value("outputs", Json::object());
    only_keys(outputs, {"report", "field", "coeffs", "homogeneous"}, "outputs");
    outputs_ = Json{{"report", command_ + "_report.json"}};
    for (auto it = outputs.begin(); it != outputs.end(); ++it) {
      if (!it->is_string()) throw std::invalid_argument("outputs: paths must be strings");
      outputs_[it.key()] = *it;
    }

    Json result;
    std::optional<NumericFailure> failure;
    try {
      result = dispatch();
    } catch (NumericFailure& f) {
      failure = f;
      result = partial_;
    }
    resolved_["outputs"] = outputs_;

    Json report{{"command", command_},
                {"config", resolved_},
                {"tolerances", resolved_["tolerances"]},
                {"result", result},
                {"status", failure ? "numeric_failure" : "ok"}};
    if (failure) report["message"] = failure->message;
    write(outputs_["report"], io::dump(report));
    if (failure) throw *failure;
    return kOk;
  }

 private:
  Json dispatch() {
    if (command_ == "transform") return transform();
    if (command_ == "analyze") return analyze_cmd();
    if (command_ == "synthesize") return synthesize_cmd();
    if (command_ == "poincare") return poincare();
    if (command_ == "diagnose") return diagnose();
    if (command_ == "solve") return solve();
    if (command_ == "ode") return ode();
    return verify();
  }

  void write(const std::string& rel, const std::string& data) {
    io::write_file_atomic(out_ / rel, data);
  }

  void write_default(const char* key, const std::string& dflt, const std::string& data) {
    if (!outputs_.contains(key)) outputs_[key] = dflt;
    write(outputs_[key].get<std::string>(), data);
  }

  ThetaSpec theta() {
    if (!cfg_.contains("theta")) throw std::invalid_argument("'theta' block is required");
    return io::theta_from_json(cfg_["theta"]);
  }

  int grid_size() {
    const int n = get_int(cfg_, "N", 64);
    resolved_["N"] = n;
    return n;
  }

  int cutoff(int n) {
    const int c = get_int(cfg_, "cutoff", n / 2 - 1);
    resolved_["cutoff"] = c;
    return c;
  }

  SampledField input_field(const ThetaSpec& spec, const GridSpec& grid) {
    if (!cfg_.contains("input")) throw std::invalid_argument("'input' block is required");
    return make_field(cfg_["input"], grid, spec, base_);
  }

  std::vector<double> p_list() {
    std::vector<double> ps;
    const Json pj = cfg_.value("p", Json::array({1, 2, "inf"}));
    if (!pj.is_array()) {
      ps.push_back(parse_p(pj));
    } else {
      for (const auto& v : pj) ps.push_back(parse_p(v));
    }
    resolved_["p"] = pj;
    return ps;
  }

  Json transform() {
    const ThetaSpec spec = theta();
    const GridSpec grid(spec.dim(), grid_size());
    const SampledField f = input_field(spec, grid);
    const SampledField g = omega_forward(f);
    const SampledField back = omega_inverse(g, spec);
    const double scale = std::max(1.0, f.values().cwiseAbs().maxCoeff());
    const KConstants k = k_constants(spec);
    Json weighted, plain;
    for (double p : p_list()) {
      weighted[number_key(p)] = lp_norm(f, p);
      plain[number_key(p)] = plain_lp_norm(f, p);
    }
    write_default("field", "omega.csv", io::field_to_csv(g));
    return Json{{"k_min", k.k_min},
                {"k_max", k.k_max},
                {"weighted_lp", weighted},
                {"plain_lp", plain},
                {"roundtrip_error", (back.values() - f.values()).cwiseAbs().maxCoeff() / scale}};
  }

  Json analyze_cmd() {
    const ThetaSpec spec = theta();
    const int n = grid_size();
    const GridSpec grid(spec.dim(), n);
    const SampledField f = input_field(spec, grid);
    const CoeffTable c = analyze(f, cutoff(n));
    write_default("coeffs", "coeffs.csv", io::coeffs_to_csv(c));

    const L1Report l1 = l1_bound_check(f);
    const PlancherelReport pl = plancherel_check(f);
    const double tail = tail_energy_fraction(c);
    Json result{{"cutoff", c.cutoff()},
                {"tail_energy_fraction", tail},
                {"aliasing_warning", tail > kAliasingThreshold},
                {"l1", {{"max_coeff", l1.lhs_max},
                        {"l1_norm", l1.l1_norm},
                        {"plain_l1", l1.plain_l1},
                        {"weighted_bound", l1.weighted_bound},
                        {"holds", l1.holds}}},
                {"plancherel", {{"coeff_l2", pl.coeff_l2},
                                {"weighted_l2", pl.weighted_l2},
                                {"plain_l2", pl.plain_l2},
                                {"k_min", pl.k_min},
                                {"k_max", pl.k_max},
                                {"identity_error", pl.identity_error},
                                {"identity_holds", pl.identity_holds},
                                {"sandwich_holds", pl.sandwich_holds}}}};
    const Json sj = cfg_.value("s", Json::array({0, 1, 2}));
    if (!sj.is_array()) throw std::invalid_argument("'s' must be a list of numbers");
    resolved_["s"] = sj;
    Json hs = Json::object();
    for (const auto& s : sj) {
      if (!s.is_number()) throw std::invalid_argument("'s' must be a list of numbers");
      hs[number_key(s.get<double>())] = hs_norm(c, s.get<double>());
    }
    result["hs_norm"] = hs;
    if (c.cutoff() >= 8) {
      const DecayReport d = decay_classify(c);
      Json shells = Json::array();
      for (const auto& [r, v] : d.per_shell_max) shells.push_back(Json::array({r, v}));
      result["decay"] = {{"fitted_order", d.fitted_order},
                         {"is_rapid", d.is_rapid},
                         {"asymptotic_only", d.asymptotic_only},
                         {"per_shell_max", shells}};
    }
    return result;
  }

  Json synthesize_cmd() {
    const ThetaSpec spec = theta();
    const GridSpec grid(spec.dim(), grid_size());
    if (!cfg_.contains("coeffs_input") || !cfg_["coeffs_input"].is_string())
      throw std::invalid_argument("'coeffs_input' must be a CSV path");
    const CoeffTable c = io::coeffs_from_csv(io::read_file(base_ / cfg_["coeffs_input"].get<std::string>()), spec);
    const SampledField f = synthesize(c, grid);
    write_default("field", "field.csv", io::field_to_csv(f));
    return Json{{"cutoff", c.cutoff()}, {"max_abs", f.values().cwiseAbs().maxCoeff()}};
  }

  Json poincare() {
    const ThetaSpec spec = theta();
    const PoincareCase pc = poincare_case(spec);
    Json result{{"constant", pc.constant},
                {"distance", pc.distance},
                {"near_critical", pc.near_critical},
                {"v", complex_list(std::span<const Complex>(pc.v.data(), spec.dim()))},
                {"sharp_mode", mode_json(sharp_mode(pc, spec.dim()), spec.dim())},
                {"critical_mode", pc.critical_mode ? mode_json(*pc.critical_mode, spec.dim()) : Json()}};
    if (cfg_.contains("input")) {
      const SampledField f = input_field(spec, GridSpec(spec.dim(), grid_size()));
      const PoincareReport r = poincare_verify(f);
      result["verify"] = {{"grad_norm", r.grad_norm},
                          {"f_norm", r.f_norm},
                          {"ratio", r.ratio},
                          {"holds", r.holds}};
    }
    return result;
  }

  OperatorSpec operator_spec(const ThetaSpec& spec, int n) {
    if (spec.dim() != 2) throw std::invalid_argument("operator commands need a two-dimensional theta");
    if (!cfg_.contains("operator")) throw std::invalid_argument("'operator' block is required");
    const Json& op = cfg_["operator"];
    only_keys(op, {"c", "q", "q_depends_on_x2"}, "operator");
    const double t = spec.period();
    auto coeff = [&](const char* key) -> std::variant<Complex, Trace> {
      if (!op.contains(key)) return Complex(0.0);
      const Json& b = op[key];
      if (b.is_number() || b.is_array()) return io::complex_from_json(b);
      return make_trace(b, n, t);
    };
    OperatorSpec out{spec, coeff("c"), Complex(0.0)};
    const bool q2 = op.value("q_depends_on_x2", false);
    if (q2) {
      if (!op.contains("q")) throw std::invalid_argument("operator: q_depends_on_x2 needs 'q'");
      out.q = make_field(op["q"], GridSpec(2, n), ThetaSpec::periodic(2, t), base_);
    } else {
      std::visit([&](auto&& v) { out.q = v; }, coeff("q"));
    }
    out.validate();
    return out;
  }

  static Json verdict_json(const RegularityVerdict& v) {
    Json j{{"gh", to_string(v.gh)},
           {"gs", to_string(v.gs)},
           {"gh_basis", to_string(v.gh_basis)},
           {"gs_basis", to_string(v.gs_basis)},
           {"route", v.route},
           {"witnesses", modes_json(v.witnesses)},
           {"zero_count", v.zero_count},
           {"notes", v.notes},
           {"constant_c", v.constant_c ? Json(*v.constant_c) : Json()},
           {"order_k", v.order_k ? Json(*v.order_k) : Json()},
           {"exceptional_mode", v.exceptional_mode ? mode_json(*v.exceptional_mode, 2) : Json()}};
    if (v.zero_line)
      j["zero_line"] = {{"point", mode_json(v.zero_line->point, 2)},
                        {"direction", mode_json(v.zero_line->direction, 2)}};
    else
      j["zero_line"] = nullptr;
    if (v.diophantine) {
      const DiophantineClass& d = *v.diophantine;
      Json conv = Json::array();
      for (const auto& [p, q] : d.convergents) conv.push_back(Json::array({p, q}));
      j["diophantine"] = {{"kind", to_string(d.kind)},
                          {"partial_quotients", d.partial_quotients},
                          {"convergents", conv},
                          {"exponents", d.exponents},
                          {"best_exponent", d.best_exponent},
                          {"horizon_reached", d.horizon_reached},
                          {"period", d.period ? Json(*d.period) : Json()},
                          {"note", d.note}};
    } else {
      j["diophantine"] = nullptr;
    }
    return j;
  }

  Json diagnose() {
    const ThetaSpec spec = theta();
    const OperatorSpec op = operator_spec(spec, grid_size());
    DiagnoseOptions opt = tol_.diag;
    const Json d = cfg_.value("diagnose", Json::object());
    only_keys(d, {"cutoff", "k_grid", "depth", "k_max", "c_decimal"}, "diagnose");
    opt.cutoff = get_int(d, "cutoff", opt.cutoff);
    opt.classify.depth = get_int(d, "depth", opt.classify.depth);
    opt.classify.k_max = get_double(d, "k_max", opt.classify.k_max);
    if (d.contains("k_grid")) {
      if (!d["k_grid"].is_array() || d["k_grid"].empty())
        throw std::invalid_argument("diagnose: 'k_grid' must be a non-empty list");
      opt.k_grid.clear();
      for (const auto& k : d["k_grid"]) {
        if (!k.is_number()) throw std::invalid_argument("diagnose: 'k_grid' entries must be numbers");
        opt.k_grid.push_back(k.get<double>());
      }
    }
    if (d.contains("c_decimal")) {
      if (!d["c_decimal"].is_string()) throw std::invalid_argument("diagnose: 'c_decimal' must be a string");
      opt.c_decimal = d["c_decimal"].get<std::string>();
    }
    if (opt.cutoff < 2) throw std::invalid_argument("diagnose: 'cutoff' must be >= 2");
    resolved_["diagnose"] = {{"cutoff", opt.cutoff},
                             {"k_grid", opt.k_grid},
                             {"depth", opt.classify.depth},
                             {"k_max", opt.classify.k_max},
                             {"c_decimal", opt.c_decimal ? Json(*opt.c_decimal) : Json()}};
    return verdict_json(diagnose_variable(op, opt));
  }

  Json solve() {
    const ThetaSpec spec = theta();
    const int n = grid_size();
    const OperatorSpec op = operator_spec(spec, n);
    const SampledField f = input_field(spec, GridSpec(2, n));
    SolveOptions opt = tol_.solve;
    opt.cutoff = cutoff(n);
    opt.threads = threads();
    const SolveReport r = op.constant_coefficients() ? solve_constant_L(op, f, opt)
                                                     : solve_variable_L(op, f, opt);
    write_default("field", "solution.csv", io::field_to_csv(r.u));
    Json result{{"residual", r.residual},
                {"residual_solvable", r.residual_solvable},
                {"skipped_modes", modes_json(r.skipped_modes)},
                {"unsolvable_modes", modes_json(r.unsolvable_modes)},
                {"x2_modes_only", r.x2_modes_only},
                {"condition", r.condition},
                {"solvable", r.solvable},
                {"notes", r.notes}};
    if (!r.solvable) {
      partial_ = result;
      throw NumericFailure{"data has mass on dead modes; no solution exists"};
    }
    return result;
  }

  Json ode() {
    const ThetaSpec spec = theta();
    if (spec.dim() != 1) throw std::invalid_argument("ode needs a one-dimensional theta");
    const int n = grid_size();
    const SampledField f = input_field(spec, GridSpec(1, n));
    if (!cfg_.contains("lambda")) throw std::invalid_argument("'lambda' is required");
    const Json& lj = cfg_["lambda"];
    const OdeForm form = parse_form(cfg_);
    resolved_["form"] = to_string(form);
    const OdeSolution s = (lj.is_number() || lj.is_array())
                              ? solve_const(f, io::complex_from_json(lj), form)
                              : solve_var(f, make_trace(lj, n, spec.period()), form);
    Json result{{"kind", to_string(s.kind)},
                {"form", to_string(s.form)},
                {"residual", s.residual},
                {"gap", s.resonance.gap},
                {"resonant", s.resonance.resonant},
                {"ill_conditioned", s.resonance.ill_conditioned},
                {"compatibility", s.compatibility ? io::to_json(*s.compatibility) : Json()},
                {"notes", s.notes}};
    if (s.kind == OdeKind::None) {
      partial_ = result;
      throw NumericFailure{"resonant problem fails the compatibility condition"};
    }
    write_default("field", "ode_solution.csv", io::field_to_csv(s.u));
    if (s.homogeneous) write_default("homogeneous", "homogeneous.csv", io::field_to_csv(*s.homogeneous));
    return result;
  }

  Json verify() {
    const Json v = cfg_.value("verify", Json::object());
    only_keys(v, {"trials"}, "verify");
    const int trials = get_int(v, "trials", 10);
    if (trials < 1) throw std::invalid_argument("verify: 'trials' must be >= 1");
    std::uint64_t seed = 0;
    if (args_.seed) {
      seed = *args_.seed;
    } else if (cfg_.contains("seed")) {
      if (!cfg_["seed"].is_number_unsigned()) throw std::invalid_argument("'seed' must be a non-negative integer");
      seed = cfg_["seed"].get<std::uint64_t>();
    }
    resolved_["seed"] = seed;
    resolved_["verify"] = {{"trials", trials}};
    Json checks = Json::array();
    bool all = true;
    for (const CheckResult& c : run_invariants(seed, trials)) {
      all = all && c.passed;
      checks.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"metric", c.metric},
                        {"threshold", c.threshold},
                        {"detail", c.detail}});
    }
    Json result{{"checks", checks}, {"all_passed", all}};
    if (!all) {
      partial_ = result;
      throw NumericFailure{"invariant suite reported failures"};
    }
    return result;
  }

  int threads() {
    int t = args_.threads;
    if (cfg_.contains("threads") && args_.threads <= 1) t = get_int(cfg_, "threads", 1);
    if (t < 1) throw std::invalid_argument("'threads' must be >= 1");
    resolved_["threads"] = t;
    return t;
  }

  Json cfg_;
  fs::path base_;
  fs::path out_;
  const JobArgs& args_;
  std::string command_;
  Json resolved_;
  Json outputs_;
  Tolerances tol_;
  Json partial_;
};

}  // namespace

int run_job(const JobArgs& args, std::ostream& err) {
  Json cfg;
  try {
    const std::string text = io::read_file(args.config);
    try {
      cfg = Json::parse(text);
    } catch (const Json::parse_error& e) {
      err << "error: config is not valid JSON: " << e.what() << "\n";
      return kValidation;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
  try {
    fs::create_directories(args.out_dir);
    Job job(std::move(cfg), args.config.parent_path(), args.out_dir, args);
    return job.run();
  } catch (const NumericFailure& f) {
    err << "numeric failure: " << f.message << "\n";
    return kNumeric;
  } catch (const io::IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const Json::exception& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace thetaper::cli
