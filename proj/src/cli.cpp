#include "conefourier/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "conefourier/multivariate.hpp"
#include "conefourier/transforms.hpp"
#include "conefourier/univariate.hpp"
#include "param_access.hpp"

namespace conefourier {
namespace {

using nlohmann::json;
using detail::integer;
using detail::multi_index;
using detail::scalar;
using detail::scalar_or;
using detail::vec;
using detail::vec_or_zero;

// ---------------------------------------------------------------------------
// Function catalog

struct FunctionEntry {
  std::vector<std::string> required;
  std::vector<std::string> optional;
  std::function<Cx(const ParamMap&)> eval;
};

std::vector<Cx> complex_vector(const ParamMap& p, const std::string& re, const std::string& im, std::size_t n) {
  const auto r = vec(p, re, n);
  const auto i = vec_or_zero(p, im, n);
  std::vector<Cx> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = {r[j], i[j]};
  return out;
}

ParsevalParams parseval_params(const ParamMap& p, int d, bool b_kind) {
  if (b_kind) {
    return ParsevalParams::b_family(d, scalar(p, "a1"), scalar(p, "a2"), scalar(p, "b1"), scalar(p, "b2"),
                                    scalar(p, "c1"), scalar(p, "c2"));
  }
  return ParsevalParams::a_family(d, scalar(p, "a1"), scalar(p, "a2"), scalar(p, "b1"), scalar(p, "b2"));
}

Cx family_value(const ParamMap& p, bool b_kind, bool hahn) {
  const MultiIndex k = multi_index(p, "k");
  const int d = k.dim();
  const auto pp = parseval_params(p, d, b_kind);
  const Cx t(scalar(p, "t"), scalar_or(p, "t_im", 0.0));
  const auto x = complex_vector(p, "x", "x_im", d);
  const int n = integer(p, "n");
  if (b_kind) return hahn ? b_family_hahn(t, x, k, n, pp) : b_family(t, x, k, n, pp);
  return hahn ? a_family_hahn(t, x, k, n, pp) : a_family(t, x, k, n, pp);
}

// mu only enters through Gegenbauer factors of nonzero degree, so it may be
// omitted when k = 0.
double mu_for(const ParamMap& p, const MultiIndex& k) {
  if (p.contains("mu") || k.total() > 0) return scalar(p, "mu");
  return 1.0;
}

TransformParamsLaguerre laguerre_params(const ParamMap& p, int d) {
  return {scalar(p, "a"), scalar(p, "b"), {scalar(p, "beta"), scalar(p, "mu"), d}};
}

TransformParamsJacobi jacobi_params(const ParamMap& p, int d) {
  return {scalar(p, "a"), scalar(p, "b"), scalar(p, "c"), {scalar(p, "beta"), scalar(p, "mu"), scalar(p, "gamma"), d}};
}

const std::map<std::string, FunctionEntry>& functions() {
  static const std::map<std::string, FunctionEntry> t = [] {
    std::map<std::string, FunctionEntry> m;
    m["gamma"] = {{"z"}, {"z_im"}, [](const ParamMap& p) { return gamma_cx({scalar(p, "z"), scalar_or(p, "z_im", 0.0)}); }};
    m["gegenbauer"] = {{"n", "mu", "x"}, {}, [](const ParamMap& p) {
                         return Cx(gegenbauer(integer(p, "n"), scalar(p, "mu"), scalar(p, "x")));
                       }};
    m["laguerre"] = {{"n", "alpha", "t"}, {}, [](const ParamMap& p) {
                       return Cx(laguerre(integer(p, "n"), scalar(p, "alpha"), scalar(p, "t")));
                     }};
    m["jacobi"] = {{"n", "alpha", "beta", "t"}, {}, [](const ParamMap& p) {
                     return Cx(jacobi(integer(p, "n"), scalar(p, "alpha"), scalar(p, "beta"), scalar(p, "t")));
                   }};
    m["hahn"] = {{"k", "x", "a", "b", "c", "d"}, {"x_im"}, [](const ParamMap& p) {
                   const int k = integer(p, "k");
                   if (k < 0) throw DomainError("hahn: degree must be nonnegative");
                   return continuous_hahn(k, {scalar(p, "x"), scalar_or(p, "x_im", 0.0)}, scalar(p, "a"), scalar(p, "b"),
                                          scalar(p, "c"), scalar(p, "d"));
                 }};
    m["ball-op"] = {{"k", "mu", "x"}, {"d"}, [](const ParamMap& p) {
                      const MultiIndex k = multi_index(p, "k");
                      return Cx(ball_op(k, scalar(p, "mu"), BallPoint::from_coordinates(vec(p, "x", k.dim()))));
                    }};
    m["laguerre-cone"] = {{"k", "n", "beta", "mu", "t", "x"}, {"d"}, [](const ParamMap& p) {
                            const MultiIndex k = multi_index(p, "k");
                            const LaguerreConeParams lp{scalar(p, "beta"), scalar(p, "mu"), k.dim()};
                            return Cx(laguerre_cone(k, integer(p, "n"), lp,
                                                    ConePoint::from_tx(scalar(p, "t"), vec(p, "x", k.dim()))));
                          }};
    m["jacobi-cone"] = {{"k", "n", "beta", "mu", "gamma", "t", "x"}, {"d"}, [](const ParamMap& p) {
                          const MultiIndex k = multi_index(p, "k");
                          const JacobiConeParams jp{scalar(p, "beta"), scalar(p, "mu"), scalar(p, "gamma"), k.dim()};
                          return Cx(jacobi_cone(k, integer(p, "n"), jp,
                                                ConePoint::from_tx(scalar(p, "t"), vec(p, "x", k.dim()))));
                        }};
    m["f-d"] = {{"k", "a", "x"}, {"d", "mu"}, [](const ParamMap& p) {
                  const MultiIndex k = multi_index(p, "k");
                  return Cx(f_d(vec(p, "x", k.dim()), k, scalar(p, "a"), mu_for(p, k)));
                }};
    m["g-laguerre"] = {{"t", "x", "k", "n", "a", "b", "beta", "mu"}, {"d"}, [](const ParamMap& p) {
                         const MultiIndex k = multi_index(p, "k");
                         return Cx(g_laguerre(scalar(p, "t"), vec(p, "x", k.dim()), k, integer(p, "n"),
                                              laguerre_params(p, k.dim())));
                       }};
    m["g-jacobi"] = {{"t", "x", "k", "n", "a", "b", "c", "beta", "mu", "gamma"}, {"d"}, [](const ParamMap& p) {
                       const MultiIndex k = multi_index(p, "k");
                       return Cx(g_jacobi(scalar(p, "t"), vec(p, "x", k.dim()), k, integer(p, "n"),
                                          jacobi_params(p, k.dim())));
                     }};
    m["theta-hyper"] = {{"k", "a", "xi"}, {"d", "axis", "mu"}, [](const ParamMap& p) {
                          const MultiIndex k = multi_index(p, "k");
                          return theta_hyper(integer(scalar_or(p, "axis", 0.0), "axis"), scalar(p, "a"), mu_for(p, k), k,
                                             scalar(p, "xi"));
                        }};
    m["theta-hahn"] = {{"k", "a", "xi"}, {"d", "axis", "mu"}, [](const ParamMap& p) {
                         const MultiIndex k = multi_index(p, "k");
                         return theta_hahn(integer(scalar_or(p, "axis", 0.0), "axis"), scalar(p, "a"), mu_for(p, k), k,
                                           scalar(p, "xi"));
                       }};
    m["ft-f-closed"] = {{"k", "a", "xi"}, {"d", "mu"}, [](const ParamMap& p) {
                          const MultiIndex k = multi_index(p, "k");
                          return ft_f_closed(k, scalar(p, "a"), mu_for(p, k), vec(p, "xi", k.dim()));
                        }};
    m["ft-g-laguerre-closed"] = {{"k", "n", "a", "b", "beta", "mu", "xi"}, {"d"}, [](const ParamMap& p) {
                                   const MultiIndex k = multi_index(p, "k");
                                   return ft_g_laguerre_closed(k, integer(p, "n"), laguerre_params(p, k.dim()),
                                                               vec(p, "xi", k.dim() + 1));
                                 }};
    m["ft-g-jacobi-closed"] = {{"k", "n", "a", "b", "c", "beta", "mu", "gamma", "xi"}, {"d"}, [](const ParamMap& p) {
                                 const MultiIndex k = multi_index(p, "k");
                                 return ft_g_jacobi_closed(k, integer(p, "n"), jacobi_params(p, k.dim()),
                                                           vec(p, "xi", k.dim() + 1));
                               }};
    const std::vector<std::string> a_keys = {"t", "x", "k", "n", "a1", "a2", "b1", "b2"};
    std::vector<std::string> b_keys = a_keys;
    b_keys.insert(b_keys.end(), {"c1", "c2"});
    const std::vector<std::string> fam_opt = {"d", "t_im", "x_im"};
    m["a-family"] = {a_keys, fam_opt, [](const ParamMap& p) { return family_value(p, false, false); }};
    m["a-family-hahn"] = {a_keys, fam_opt, [](const ParamMap& p) { return family_value(p, false, true); }};
    m["b-family"] = {b_keys, fam_opt, [](const ParamMap& p) { return family_value(p, true, false); }};
    m["b-family-hahn"] = {b_keys, fam_opt, [](const ParamMap& p) { return family_value(p, true, true); }};
    m["a-norm-rhs"] = {{"n", "k", "a1", "a2", "b1", "b2"}, {"d"}, [](const ParamMap& p) {
                         const MultiIndex k = multi_index(p, "k");
                         return Cx(a_norm_rhs(integer(p, "n"), k, parseval_params(p, k.dim(), false)));
                       }};
    m["b-norm-rhs"] = {{"n", "k", "a1", "a2", "b1", "b2", "c1", "c2"}, {"d"}, [](const ParamMap& p) {
                         const MultiIndex k = multi_index(p, "k");
                         return Cx(b_norm_rhs(integer(p, "n"), k, parseval_params(p, k.dim(), true)));
                       }};
    // Short names for the closed-form transforms.
    m["ft-f"] = m["ft-f-closed"];
    m["ft-g-laguerre"] = m["ft-g-laguerre-closed"];
    m["ft-g-jacobi"] = m["ft-g-jacobi-closed"];
    return m;
  }();
  return t;
}

// ---------------------------------------------------------------------------
// Config

Rule parse_rule(const std::string& s) {
  if (s == "double-exponential") return Rule::DoubleExponential;
  if (s == "adaptive-gk") return Rule::AdaptiveGK;
  if (s == "gauss-laguerre") return Rule::GaussLaguerre;
  throw ParameterError("config: unknown quadrature rule '" + s + "'");
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::DoubleExponential:
      return "double-exponential";
    case Rule::AdaptiveGK:
      return "adaptive-gk";
    case Rule::GaussLaguerre:
      return "gauss-laguerre";
  }
  return "double-exponential";
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ParameterError("config: " + where + " must be an object");
  for (const auto& [key, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParameterError("config: unknown key '" + key + "' in " + where);
  }
}

ParamMap params_from_json(const json& j) {
  if (!j.is_object()) throw ParameterError("config: grid entries must be objects");
  ParamMap p;
  for (const auto& [key, v] : j.items()) {
    if (v.is_number()) {
      p[key] = {v.get<double>()};
    } else if (v.is_array() && !v.empty()) {
      std::vector<double> xs;
      for (const auto& e : v) {
        if (!e.is_number()) throw ParameterError("config: parameter '" + key + "' must hold numbers");
        xs.push_back(e.get<double>());
      }
      p[key] = std::move(xs);
    } else {
      throw ParameterError("config: parameter '" + key + "' must be a number or a nonempty array");
    }
  }
  return p;
}

json params_to_json(const ParamMap& p) {
  json j = json::object();
  for (const auto& [k, v] : p) {
    if (v.size() == 1) {
      j[k] = v[0];
    } else {
      j[k] = v;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// Output helpers

bool write_text(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Axis {
  std::string name;
  double lo;
  double hi;
  int count;
};

double axis_value(const Axis& a, int i) {
  if (a.count == 1) return a.lo;
  return a.lo + (a.hi - a.lo) * i / (a.count - 1);
}

// Sets p[name] = v, where "xi2" addresses the second component of "xi".
void assign_axis(ParamMap& p, const std::string& name, double v) {
  const auto it = p.find(name);
  if (it != p.end() || name.empty() || !std::isdigit(static_cast<unsigned char>(name.back()))) {
    p[name] = {v};
    return;
  }
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  const std::string base = name.substr(0, cut);
  const auto bt = p.find(base);
  if (cut == 0 || bt == p.end()) {
    p[name] = {v};
    return;
  }
  const std::size_t idx = std::stoul(name.substr(cut));
  if (idx < 1 || idx > bt->second.size()) throw ParameterError("axis '" + name + "' addresses a missing component");
  bt->second[idx - 1] = v;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const OverflowError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  reject_unknown(j, {"quadrature", "grids", "ids", "out", "format", "seed", "timing"}, "the top level");
  RunConfig c;
  try {
    if (j.contains("quadrature")) {
      const json& q = j["quadrature"];
      reject_unknown(q, {"rule", "abs_tol", "rel_tol", "max_levels", "max_subdivisions", "truncation_radius"},
                     "quadrature");
      if (q.contains("rule")) c.quad.rule = parse_rule(q["rule"].get<std::string>());
      if (q.contains("abs_tol")) c.quad.abs_tol = q["abs_tol"].get<double>();
      if (q.contains("rel_tol")) c.quad.rel_tol = q["rel_tol"].get<double>();
      if (q.contains("max_levels")) c.quad.max_levels = q["max_levels"].get<int>();
      if (q.contains("max_subdivisions")) c.quad.max_subdivisions = q["max_subdivisions"].get<int>();
      if (q.contains("truncation_radius")) c.quad.truncation_radius = q["truncation_radius"].get<double>();
    }
    if (j.contains("grids")) {
      if (!j["grids"].is_object()) throw ParameterError("config: grids must be an object");
      for (const auto& [id, entries] : j["grids"].items()) {
        if (!is_identity(id)) throw ParameterError("config: unknown identity '" + id + "' in grids");
        if (!entries.is_array()) throw ParameterError("config: grid of '" + id + "' must be an array");
        Grid g;
        for (const auto& e : entries) g.push_back(params_from_json(e));
        c.grids[id] = std::move(g);
      }
    }
    if (j.contains("ids")) {
      std::vector<std::string> ids;
      for (const auto& e : j["ids"]) {
        const auto id = e.get<std::string>();
        if (!is_identity(id)) throw ParameterError("config: unknown identity '" + id + "'");
        ids.push_back(id);
      }
      c.ids = std::move(ids);
    }
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("timing")) c.timing = j["timing"].get<bool>();
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  if (c.format != "json" && c.format != "csv") throw ParameterError("config: format must be 'json' or 'csv'");
  try {
    c.quad.validate();
  } catch (const DomainError& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  return c;
}

std::string run_config_to_json(const RunConfig& c) {
  json j;
  j["quadrature"] = {{"rule", rule_name(c.quad.rule)},
                     {"abs_tol", c.quad.abs_tol},
                     {"rel_tol", c.quad.rel_tol},
                     {"max_levels", c.quad.max_levels},
                     {"max_subdivisions", c.quad.max_subdivisions},
                     {"truncation_radius", c.quad.truncation_radius}};
  json grids = json::object();
  for (const auto& [id, g] : c.grids) {
    json arr = json::array();
    for (const auto& p : g) arr.push_back(params_to_json(p));
    grids[id] = std::move(arr);
  }
  j["grids"] = std::move(grids);
  if (c.ids) j["ids"] = *c.ids;
  j["out"] = c.out;
  j["format"] = c.format;
  j["seed"] = c.seed;
  j["timing"] = c.timing;
  return j.dump(2) + "\n";
}

ParamMap parse_assignments(const std::vector<std::string>& args) {
  ParamMap p;
  for (const auto& a : args) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw ParameterError("expected name=value, got '" + a + "'");
    const std::string name = a.substr(0, eq);
    if (p.contains(name)) throw ParameterError("parameter '" + name + "' given twice");
    std::vector<double> values;
    std::stringstream ss(a.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        throw ParameterError("parameter '" + name + "': '" + item + "' is not a number");
      }
      if (used != item.size()) throw ParameterError("parameter '" + name + "': '" + item + "' is not a number");
      values.push_back(v);
    }
    if (values.empty()) throw ParameterError("parameter '" + name + "' has no value");
    p[name] = std::move(values);
  }
  return p;
}

const std::vector<std::string>& function_catalog() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, e] : functions()) v.push_back(k);
    return v;
  }();
  return names;
}

Cx evaluate_function(const std::string& name, const ParamMap& params) {
  const auto it = functions().find(name);
  if (it == functions().end()) throw ParameterError("unknown function '" + name + "'");
  detail::require_keys(name, params, it->second.required, it->second.optional);
  return it->second.eval(params);
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  std::string s(buf);
  const auto e = s.find('e');
  return s.substr(0, e + 1) + std::to_string(std::stoi(s.substr(e + 1)));
}

std::string format_value(Cx v) {
  if (v.imag() == 0.0) return format_value(v.real());
  const std::string im = format_value(std::abs(v.imag()));
  return format_value(v.real()) + (std::signbit(v.imag()) ? "-" : "+") + im + "i";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Special functions on the ball and cone: evaluation, identity checks and value tables", "conefourier"};
  app.require_subcommand(1);

  // eval
  std::string fn_name;
  std::vector<std::string> fn_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a function: eval NAME name=value ...");
  eval->add_option("function", fn_name, "Function name")->required();
  eval->add_option("params", fn_args, "Parameters as name=value (lists comma-separated)");

  // check
  std::string check_id;
  std::vector<std::string> check_args;
  std::string check_config;
  std::string check_format;
  auto* check = app.add_subcommand("check", "Verify one identity instance: check ID name=value ...");
  check->add_option("identity", check_id, "Identity id")->required();
  check->add_option("params", check_args, "Parameters as name=value");
  check->add_option("--config", check_config, "JSON run configuration");
  check->add_option("--format", check_format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  // suite
  bool suite_all = false;
  std::vector<std::string> suite_ids;
  std::string suite_config;
  std::string suite_out;
  std::string suite_format;
  std::string write_config;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::optional<std::uint64_t> seed;
  bool timing = false;
  auto* suite = app.add_subcommand("suite", "Run identity grids and write a report");
  auto* all_flag = suite->add_flag("--all", suite_all, "Run every identity");
  auto* ids_opt = suite->add_option("--ids", suite_ids, "Comma-separated identity ids")->delimiter(',');
  all_flag->excludes(ids_opt);
  suite->add_option("--config", suite_config, "JSON run configuration");
  suite->add_option("--out", suite_out, "Report path (standard output when omitted)");
  suite->add_option("--format", suite_format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  suite->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  suite->add_option("--seed", seed, "Seed for randomized grids");
  suite->add_flag("--timing", timing, "Record wall time per check (reports stop being reproducible)");
  suite->add_option("--write-config", write_config, "Write the effective configuration to this path");

  // table
  std::string table_fn;
  std::vector<std::string> table_args;
  std::string table_out;
  auto* table = app.add_subcommand("table", "Tabulate a function: table NAME name=value axis=min:max:count ...");
  table->add_option("function", table_fn, "Function name")->required();
  table->add_option("params", table_args, "Parameters; one or two as name=min:max:count");
  table->add_option("--out", table_out, "CSV path (standard output when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*eval) {
    return guarded(err, [&] {
      out << format_value(evaluate_function(fn_name, parse_assignments(fn_args))) << "\n";
      return kExitOk;
    });
  }

  if (*check) {
    return guarded(err, [&] {
      RunConfig cfg = check_config.empty() ? RunConfig{} : parse_run_config(read_text(check_config));
      const std::string format = check_format.empty() ? cfg.format : check_format;
      const CheckReport r = check_identity(check_id, parse_assignments(check_args), cfg.quad, cfg.timing);
      out << (format == "csv" ? reports_to_csv({r}) : report_to_json(r));
      if (!r.reason.empty()) err << "check failed: " << r.reason << "\n";
      return r.pass ? kExitOk : kExitFail;
    });
  }

  if (*suite) {
    return guarded(err, [&] {
      RunConfig cfg = suite_config.empty() ? RunConfig{} : parse_run_config(read_text(suite_config));
      if (seed) cfg.seed = *seed;
      if (timing) cfg.timing = true;
      if (!suite_out.empty()) cfg.out = suite_out;
      if (!suite_format.empty()) cfg.format = suite_format;
      std::vector<std::string> ids;
      if (suite_all) {
        ids = identity_catalog();
      } else if (ids_opt->count() > 0) {
        for (const auto& s : suite_ids) {
          if (!s.empty()) ids.push_back(s);
        }
      } else if (cfg.ids) {
        ids = *cfg.ids;
      } else {
        throw ParameterError("suite: give --all, --ids or an 'ids' list in the config");
      }
      cfg.ids = ids;
      if (!write_config.empty() && !write_text(write_config, run_config_to_json(cfg), err)) return kExitUsage;

      SuiteOptions opt;
      opt.quad = cfg.quad;
      opt.grids = cfg.grids;
      opt.seed = cfg.seed;
      opt.jobs = jobs;
      opt.timing = cfg.timing;
      const SuiteResult res = run_suite(ids, opt);
      const std::string text = cfg.format == "csv" ? reports_to_csv(res.reports) : suite_to_json(res);
      if (cfg.out.empty()) {
        out << text;
      } else {
        if (!write_text(cfg.out, text, err)) return kExitUsage;
        out << "total " << res.summary.total << ", passed " << res.summary.passed << ", failed "
            << res.summary.total - res.summary.passed << "\n";
        for (const auto& [id, e] : res.summary.max_rel_err_by_id) {
          out << "  " << id << ": max rel_err " << format_number(e) << "\n";
        }
      }
      return res.summary.passed == res.summary.total ? kExitOk : kExitFail;
    });
  }

  return guarded(err, [&] {
    std::vector<Axis> axes;
    std::vector<std::string> fixed;
    for (const auto& a : table_args) {
      const auto eq = a.find('=');
      if (eq != std::string::npos && a.find(':', eq) != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(a.substr(eq + 1));
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 3) throw ParameterError("axis '" + a + "' must be name=min:max:count");
        Axis ax;
        ax.name = a.substr(0, eq);
        const ParamMap parsed = parse_assignments({"lo=" + parts[0], "hi=" + parts[1], "count=" + parts[2]});
        ax.lo = scalar(parsed, "lo");
        ax.hi = scalar(parsed, "hi");
        ax.count = integer(parsed, "count");
        if (ax.count < 1) throw ParameterError("axis '" + ax.name + "' needs count >= 1");
        axes.push_back(ax);
      } else {
        fixed.push_back(a);
      }
    }
    if (axes.empty() || axes.size() > 2) throw ParameterError("table: give one or two axes as name=min:max:count");
    ParamMap base = parse_assignments(fixed);
    std::string csv;
    for (const auto& ax : axes) csv += ax.name + ",";
    csv += "re,im\n";
    const int outer = axes[0].count;
    const int inner = axes.size() == 2 ? axes[1].count : 1;
    for (int i = 0; i < outer; ++i) {
      for (int j = 0; j < inner; ++j) {
        ParamMap p = base;
        std::string row = format_number(axis_value(axes[0], i)) + ",";
        assign_axis(p, axes[0].name, axis_value(axes[0], i));
        if (axes.size() == 2) {
          assign_axis(p, axes[1].name, axis_value(axes[1], j));
          row += format_number(axis_value(axes[1], j)) + ",";
        }
        const Cx v = evaluate_function(table_fn, p);
        csv += row + format_number(v.real()) + "," + format_number(v.imag()) + "\n";
      }
    }
    if (table_out.empty()) {
      out << csv;
    } else if (!write_text(table_out, csv, err)) {
      return kExitUsage;
    }
    return kExitOk;
  });
}

}  // namespace conefourier
