// SPDX-License-Identifier: Apache-2.0

#include "gngs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "gngs/constants.hpp"
#include "gngs/error.hpp"
#include "gngs/io.hpp"

namespace gngs::cli
{

namespace
{

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void config_error(const std::string &msg) { throw Error(ErrorCode::config, msg); }

void check_keys(const json &obj, std::initializer_list<const char *> allowed, const std::string &where)
{
  if (!obj.is_object()) config_error(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char *k) { return it.key() == k; }))
      config_error("unknown key '" + it.key() + "' in " + where);
  }
}

template <typename T>
T get_as(const json &obj, const char *key, const std::string &where)
{
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception &e) {
    config_error(where + "." + key + ": " + e.what());
  }
}

template <typename T>
void get_opt(const json &obj, const char *key, const std::string &where, T &dst)
{
  if (obj.contains(key)) dst = get_as<T>(obj, key, where);
}

// Canonical text of a rational given as a JSON string or number. Numbers go through their
// shortest round-trip text, so 0.4 is read as 2/5.
std::string rational_text(const json &v, const std::string &where)
{
  std::string text;
  if (v.is_string()) text = v.get<std::string>();
  else if (v.is_number_integer() || v.is_number_unsigned()) text = v.dump();
  else if (v.is_number_float()) text = v.dump();
  else config_error(where + ": expected a rational number");
  try {
    return to_string(parse_rational(text));
  } catch (const Error &) {
    config_error(where + ": cannot read '" + text + "' as an exact rational");
  }
}

std::vector<std::string> rational_list(const json &v, const std::string &where)
{
  if (!v.is_array()) config_error(where + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_text(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ProblemConfig parse_problem(const json &j)
{
  const std::string w = "problem";
  check_keys(j, {"weights", "terms", "p", "q", "grid", "extended_symbols"}, w);
  ProblemConfig pc;
  if (!j.contains("weights") || !j.contains("terms") || !j.contains("p") || !j.contains("q") || !j.contains("grid"))
    config_error("problem needs weights, terms, p, q and grid");
  pc.weights = rational_list(j.at("weights"), w + ".weights");
  pc.p = rational_text(j.at("p"), w + ".p");
  pc.q = rational_text(j.at("q"), w + ".q");
  get_opt(j, "extended_symbols", w, pc.extended_symbols);
  const auto &g = j.at("grid");
  check_keys(g, {"points", "half_lengths"}, w + ".grid");
  pc.points = get_as<std::vector<std::size_t>>(g, "points", w + ".grid");
  pc.half_lengths = get_as<std::vector<double>>(g, "half_lengths", w + ".grid");
  const auto &terms = j.at("terms");
  if (!terms.is_array()) config_error("problem.terms must be an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tw = w + ".terms[" + std::to_string(i) + "]";
    check_keys(terms[i], {"coeffs", "axis_orders", "order"}, tw);
    TermConfig t;
    t.coeffs = get_as<std::vector<double>>(terms[i], "coeffs", tw);
    if (!terms[i].contains("order")) config_error(tw + " needs an order");
    t.order = rational_text(terms[i].at("order"), tw + ".order");
    if (terms[i].contains("axis_orders")) t.axis_orders = rational_list(terms[i].at("axis_orders"), tw + ".axis_orders");
    pc.terms.push_back(std::move(t));
  }
  return pc;
}

SolverConfig parse_solver(const json &j)
{
  const std::string w = "solver";
  check_keys(j, {"max_iters", "step0", "step_max", "armijo_c", "armijo_shrink", "tol_residual", "tol_energy",
                 "multistart", "init", "init_file", "symmetrize", "recenter_every", "stall_window"},
             w);
  SolverConfig s;
  get_opt(j, "max_iters", w, s.max_iters);
  get_opt(j, "step0", w, s.step0);
  get_opt(j, "step_max", w, s.step_max);
  get_opt(j, "armijo_c", w, s.armijo_c);
  get_opt(j, "armijo_shrink", w, s.armijo_shrink);
  get_opt(j, "tol_residual", w, s.tol_residual);
  get_opt(j, "tol_energy", w, s.tol_energy);
  get_opt(j, "multistart", w, s.multistart);
  get_opt(j, "init", w, s.init);
  get_opt(j, "init_file", w, s.init_file);
  get_opt(j, "symmetrize", w, s.symmetrize);
  get_opt(j, "recenter_every", w, s.recenter_every);
  get_opt(j, "stall_window", w, s.stall_window);
  if (s.init != "gaussian" && s.init != "random" && s.init != "file")
    config_error("solver.init must be gaussian, random or file");
  if (s.init == "file" && s.init_file.empty()) config_error("solver.init = file needs solver.init_file");
  if (s.symmetrize != "auto" && s.symmetrize != "on" && s.symmetrize != "off")
    config_error("solver.symmetrize must be auto, on or off");
  return s;
}

ExponentsConfig parse_exponents(const json &j)
{
  const std::string w = "exponents";
  check_keys(j, {"a1", "a2", "p", "Q_values", "q_values", "orders"}, w);
  ExponentsConfig e;
  if (!j.contains("a1") || !j.contains("p") || !j.contains("Q_values")) config_error("exponents needs a1, p and Q_values");
  e.a1 = rational_text(j.at("a1"), w + ".a1");
  if (j.contains("a2")) e.a2 = rational_text(j.at("a2"), w + ".a2");
  e.p = rational_text(j.at("p"), w + ".p");
  e.Q_values = rational_list(j.at("Q_values"), w + ".Q_values");
  if (j.contains("q_values")) e.q_values = rational_list(j.at("q_values"), w + ".q_values");
  if (j.contains("orders")) e.orders = rational_list(j.at("orders"), w + ".orders");
  return e;
}

std::string fmt(double v)
{
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

void emit_error(std::ostream &err, const std::string &kind, const std::string &message, int code)
{
  ojson e;
  e["error"] = kind;
  e["message"] = message;
  e["exit_code"] = code;
  err << e.dump() << '\n';
}

ojson result_json(const GroundStateResult &r)
{
  ojson j;
  j["d"] = r.d;
  j["converged"] = r.converged;
  j["boundary_ok"] = r.boundary_ok;
  j["term_seminorms"] = r.term_seminorms;
  j["lq"] = r.lq;
  j["lp"] = r.lp;
  j["el_residual"] = r.el_residual;
  j["nehari_residual"] = r.nehari_residual;
  j["pohozaev_residuals"] = r.pohozaev.residuals;
  j["lambda_derivative_residual"] = r.pohozaev.lambda_derivative;
  j["virial_residual"] = r.pohozaev.virial;
  j["iterations"] = r.iterations;
  j["boundary_mass"] = r.boundary_mass;
  j["symmetrized"] = r.symmetrized;
  j["monotonicity_violations"] = r.monotonicity_violations;
  j["nehari_violations"] = r.nehari_violations;
  j["events"] = r.events;
  j["best_run"] = r.best_run;
  j["energy_spread"] = r.energy_spread;
  ojson runs = ojson::array();
  for (const auto &s : r.runs)
    runs.push_back({{"index", s.index}, {"seed", s.seed}, {"d", s.d}, {"el_residual", s.el_residual},
                    {"iterations", s.iterations}, {"converged", s.converged}});
  j["runs"] = runs;
  return j;
}

std::string iterations_csv(const GroundStateResult &r)
{
  std::string s = "iter,L,nehari_residual,el_residual,step\n";
  for (const auto &h : r.history)
    s += std::to_string(h.iter) + "," + fmt(h.L) + "," + fmt(h.nehari_residual) + "," + fmt(h.el_residual) + "," +
         fmt(h.step) + "\n";
  return s;
}

const char *constants_header = "a1,a2,p,q,Q,d,C_S_from_mass,C_S_from_d,C_GN_from_norm,C_GN_from_d,ratio_factor,ratio_residual\n";

int run_exponents(const RunConfig &cfg, std::ostream &out)
{
  if (!cfg.exponents) config_error("the exponents command needs an exponents block");
  const auto &e = *cfg.exponents;
  const Rational a1 = parse_rational(e.a1), a2 = parse_rational(e.a2), p = parse_rational(e.p);
  std::vector<Rational> orders;
  for (const auto &o : e.orders) orders.push_back(parse_rational(o));

  std::string csv = "Q,a1,a2,p,q_lower,q_upper,q,admissible,theta1,theta2";
  if (!orders.empty()) csv += ",multi_s";
  csv += "\n";
  ojson rows = ojson::array();
  for (const auto &Qt : e.Q_values) {
    const Rational Q = parse_rational(Qt);
    std::string lower, upper;
    try {
      lower = to_string(critical_exponent(Q, a2, p));
      upper = to_string(critical_exponent(Q, a1, p));
    } catch (const Error &) {
    }
    std::vector<std::string> qs = e.q_values;
    if (qs.empty()) qs.push_back("");
    for (const auto &qt : qs) {
      std::string adm, t1, t2, ms;
      if (!qt.empty()) {
        const IndexSet idx{a1, a2, p, parse_rational(qt)};
        const auto v = check_admissible(idx, Q, false);
        adm = v.admissible ? "true" : "false";
        if (v.admissible) {
          const auto th = gn_exponents(idx, Q);
          t1 = to_string(th.theta1);
          t2 = to_string(th.theta2);
        }
        if (!orders.empty()) {
          try {
            const auto m = multi_gn_exponents(orders, p, Q, idx.q);
            for (std::size_t i = 0; i < m.s.size(); ++i) ms += (i ? " " : "") + to_string(m.s[i]);
          } catch (const Error &) {
            ms = "infeasible";
          }
        }
      }
      csv += Qt + "," + e.a1 + "," + e.a2 + "," + e.p + "," + lower + "," + upper + "," + qt + "," + adm + "," + t1 + "," + t2;
      if (!orders.empty()) csv += "," + ms;
      csv += "\n";
      rows.push_back({{"Q", Qt}, {"q_lower", lower}, {"q_upper", upper}, {"q", qt}, {"admissible", adm},
                      {"theta1", t1}, {"theta2", t2}, {"multi_s", ms}});
    }
  }
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  write_text(dir / "exponents.csv", csv);
  ojson rep;
  rep["config"] = to_json(cfg);
  rep["rows"] = rows;
  write_text(dir / "report.json", rep.dump(2) + "\n");
  out << csv;
  return exit_ok;
}

int run_solve(const RunConfig &cfg, std::ostream &err, std::chrono::steady_clock::time_point t0)
{
  if (!cfg.problem) config_error("the " + cfg.command + " command needs a problem block");
  const ProblemSpec ps = build_problem(*cfg.problem);
  const SolverOptions opts = build_solver_options(cfg.solver, cfg.seed, ps);
  if (cfg.command == "constants" && ps.term_count() != 2)
    throw Error(ErrorCode::invalid_argument, "the constants command needs a two-term problem");

  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  GroundStateResult res{.phi = GridFunction::zeros(ps.grid())};
  try {
    res = solve_ground_state(ps, opts);
  } catch (const SolverFailure &f) {
    save_field(dir / "phi_failed", f.last_iterate(), ps.weights());
    throw;
  }
  save_field(dir / "phi", res.phi, ps.weights());
  write_text(dir / "iterations.csv", iterations_csv(res));

  ojson rep;
  rep["config"] = to_json(cfg);
  rep["result"] = result_json(res);

  std::string crow;
  const auto idx = ps.extreme_indices();
  crow += to_string(idx.a1) + "," + to_string(idx.a2) + "," + to_string(idx.p) + "," + to_string(idx.q) + "," +
          to_string(ps.Q()) + "," + fmt(res.d);
  if (ps.term_count() == 2) {
    const auto bc = best_constants(res, ps);
    ojson c;
    c["C_GN_from_norm"] = bc.C_GN_from_norm;
    c["C_GN_from_d"] = bc.C_GN_from_d;
    c["C_GN_relative_gap"] = ConstantPair{bc.C_GN_from_norm, bc.C_GN_from_d}.relative_gap();
    c["J_phi"] = evaluate(ps, res.phi).J;
    double ratio_res = NAN;
    if (bc.has_sobolev) {
      const auto rc = ratio_identity_check(bc);
      ratio_res = rc.residual;
      c["C_S_from_mass"] = bc.C_S_from_mass;
      c["C_S_from_d"] = bc.C_S_from_d;
      c["C_S_relative_gap"] = ConstantPair{bc.C_S_from_mass, bc.C_S_from_d}.relative_gap();
      c["sobolev_quotient_phi"] = sobolev_quotient(ps, res.phi);
      const auto f = sobolev_gn_ratio_factor(idx.a1, idx.p, idx.q, ps.Q());
      c["ratio_factor"] = bc.ratio_factor;
      c["ratio_factor_text"] = f.value_text;
      c["ratio_factor_parts"] = {{"prefactor", to_string(f.prefactor)}, {"base", to_string(f.base)}, {"exponent", to_string(f.exponent)}};
      c["ratio"] = rc.ratio;
      c["ratio_norm_forms"] = rc.ratio_norm_forms;
      c["ratio_residual"] = rc.residual;
      c["ratio_residual_norm_forms"] = rc.residual_norm_forms;
    }
    rep["constants"] = c;
    crow += "," + (bc.has_sobolev ? fmt(bc.C_S_from_mass) : "") + "," + (bc.has_sobolev ? fmt(bc.C_S_from_d) : "") + "," +
            fmt(bc.C_GN_from_norm) + "," + fmt(bc.C_GN_from_d) + "," + (bc.has_sobolev ? fmt(bc.ratio_factor) : "") + "," +
            (bc.has_sobolev ? fmt(ratio_res) : "");

    if (cfg.command == "verify") {
      ojson v;
      const auto gn = verify_gn_inequality(ps, bc.C_GN_from_d, cfg.verify.samples, cfg.seed);
      v["gn_worst_margin"] = gn.worst_margin;
      v["gn_min_quotient"] = gn.min_quotient;
      v["gn_phi_margin"] = gn_margin(ps, bc.C_GN_from_d, res.phi);
      if (bc.has_sobolev) {
        const auto so = verify_sobolev_inequality(ps, bc.C_S_from_d, cfg.verify.samples, cfg.seed);
        v["sobolev_worst_margin"] = so.worst_margin;
        v["sobolev_min_quotient"] = so.min_quotient;
        v["sobolev_phi_margin"] = sobolev_margin(ps, bc.C_S_from_d, res.phi);
      }
      v["samples"] = gn.samples;
      v["verdict"] = "consistent with sharpness";
      if (gn.worst_margin > 1e-8 || gn.min_quotient < evaluate(ps, res.phi).J * (1 - 1e-6)) v["verdict"] = "violated";
      rep["verification"] = v;
    }
  } else {
    crow += ",,,,,,";
  }
  if (cfg.command == "verify") {
    const auto mc = minimizer_mass_check(ps, res.phi, cfg.verify.perturbations, cfg.seed);
    rep["mass_check"] = {{"min_deficit", mc.min_deficit}, {"dilation_deficit", mc.dilation_deficit}, {"samples", mc.samples}};
    if (ps.grid().size() <= 64) {
      const auto bf = brute_force_d(ps, 100, cfg.seed);
      rep["brute_force"] = {{"d", bf.d}, {"relative_gap", std::abs(bf.d - res.d) / res.d}};
    }
  }
  write_text(dir / "constants.csv", std::string(constants_header) + crow + "\n");

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep["environment"] = {{"version", version},
                        {"grid", {{"points", ps.grid().points()}, {"half_lengths", ps.grid().half_lengths()}}},
                        {"threads", parallel_width(0)},
                        {"runtime_seconds", seconds}};
  write_text(dir / "report.json", rep.dump(2) + "\n");

  if (!res.converged) {
    emit_error(err, "solver", "ground state iteration did not converge; artifacts written to " + dir.string(), exit_solver);
    return exit_solver;
  }
  return exit_ok;
}

}  // namespace

int exit_code_for(ErrorCode code)
{
  switch (code) {
  case ErrorCode::config:
  case ErrorCode::invalid_argument:
  case ErrorCode::invalid_structure:
  case ErrorCode::invalid_grid:
  case ErrorCode::grid_mismatch:
  case ErrorCode::degenerate_interpolation:
    return exit_config;
  case ErrorCode::inadmissible:
  case ErrorCode::supercritical_order:
  case ErrorCode::degenerate_pair:
  case ErrorCode::infeasible_exponent:
  case ErrorCode::unsupported_exponent:
    return exit_inadmissible;
  case ErrorCode::numeric:
  case ErrorCode::degenerate_projection:
    return exit_solver;
  case ErrorCode::io:
    return exit_other;
  }
  return exit_other;
}

RunConfig parse_config(const json &j)
{
  check_keys(j, {"command", "problem", "solver", "exponents", "verify", "runs", "output_dir", "seed"}, "config");
  RunConfig cfg;
  if (!j.contains("command")) config_error("config needs a command");
  cfg.command = get_as<std::string>(j, "command", "config");
  static const std::set<std::string> commands{"exponents", "solve", "constants", "verify", "report"};
  if (!commands.count(cfg.command)) config_error("unknown command '" + cfg.command + "'");
  if (j.contains("problem")) cfg.problem = parse_problem(j.at("problem"));
  if (j.contains("solver")) cfg.solver = parse_solver(j.at("solver"));
  if (j.contains("exponents")) cfg.exponents = parse_exponents(j.at("exponents"));
  if (j.contains("verify")) {
    check_keys(j.at("verify"), {"samples", "perturbations"}, "verify");
    get_opt(j.at("verify"), "samples", "verify", cfg.verify.samples);
    get_opt(j.at("verify"), "perturbations", "verify", cfg.verify.perturbations);
    if (cfg.verify.samples < 1 || cfg.verify.perturbations < 0) config_error("verify counts must be positive");
  }
  get_opt(j, "runs", "config", cfg.runs);
  get_opt(j, "output_dir", "config", cfg.output_dir);
  get_opt(j, "seed", "config", cfg.seed);
  if (cfg.output_dir.empty()) config_error("output_dir must not be empty");
  return cfg;
}

RunConfig parse_config_text(const std::string &text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

ojson to_json(const RunConfig &cfg)
{
  ojson j;
  j["command"] = cfg.command;
  if (cfg.problem) {
    const auto &p = *cfg.problem;
    ojson pj;
    pj["weights"] = p.weights;
    ojson terms = ojson::array();
    for (const auto &t : p.terms) {
      ojson tj;
      tj["coeffs"] = t.coeffs;
      if (!t.axis_orders.empty()) tj["axis_orders"] = t.axis_orders;
      tj["order"] = t.order;
      terms.push_back(tj);
    }
    pj["terms"] = terms;
    pj["p"] = p.p;
    pj["q"] = p.q;
    pj["grid"] = {{"points", p.points}, {"half_lengths", p.half_lengths}};
    pj["extended_symbols"] = p.extended_symbols;
    j["problem"] = pj;
  }
  const auto &s = cfg.solver;
  j["solver"] = {{"max_iters", s.max_iters},       {"step0", s.step0},
                 {"step_max", s.step_max},         {"armijo_c", s.armijo_c},
                 {"armijo_shrink", s.armijo_shrink}, {"tol_residual", s.tol_residual},
                 {"tol_energy", s.tol_energy},     {"multistart", s.multistart},
                 {"init", s.init},                 {"init_file", s.init_file},
                 {"symmetrize", s.symmetrize},     {"recenter_every", s.recenter_every},
                 {"stall_window", s.stall_window}};
  if (cfg.exponents) {
    const auto &e = *cfg.exponents;
    j["exponents"] = {{"a1", e.a1}, {"a2", e.a2}, {"p", e.p}, {"Q_values", e.Q_values}, {"q_values", e.q_values}, {"orders", e.orders}};
  }
  j["verify"] = {{"samples", cfg.verify.samples}, {"perturbations", cfg.verify.perturbations}};
  j["runs"] = cfg.runs;
  j["output_dir"] = cfg.output_dir;
  j["seed"] = cfg.seed;
  return j;
}

ProblemSpec build_problem(const ProblemConfig &pc)
{
  std::vector<Rational> w;
  for (const auto &t : pc.weights) w.push_back(parse_rational(t));
  const DilationStructure weights(std::move(w));
  std::vector<OperatorTerm> terms;
  for (const auto &t : pc.terms) {
    if (t.axis_orders.empty()) {
      terms.push_back({HomogeneousSymbol::rockland(weights, t.coeffs), parse_rational(t.order)});
    } else {
      std::vector<Rational> o;
      for (const auto &x : t.axis_orders) o.push_back(parse_rational(x));
      terms.push_back({HomogeneousSymbol::with_orders(weights, t.coeffs, std::move(o), pc.extended_symbols),
                       parse_rational(t.order)});
    }
  }
  return ProblemSpec(std::move(terms), parse_rational(pc.p), parse_rational(pc.q), GridSpec(pc.points, pc.half_lengths));
}

SolverOptions build_solver_options(const SolverConfig &sc, std::uint64_t seed, const ProblemSpec &ps)
{
  SolverOptions o;
  o.max_iters = sc.max_iters;
  o.step0 = sc.step0;
  o.step_max = sc.step_max;
  o.armijo_c = sc.armijo_c;
  o.armijo_shrink = sc.armijo_shrink;
  o.tol_residual = sc.tol_residual;
  o.tol_energy = sc.tol_energy;
  o.multistart = sc.multistart;
  o.seed = seed;
  o.recenter_every = sc.recenter_every;
  o.stall_window = sc.stall_window;
  o.symmetrize = sc.symmetrize == "on" ? Symmetrize::on : sc.symmetrize == "off" ? Symmetrize::off : Symmetrize::automatic;
  o.init = sc.init == "file" ? InitKind::file : sc.init == "random" ? InitKind::random : InitKind::gaussian;
  if (o.init == InitKind::file) {
    auto stored = load_field(sc.init_file);
    if (!(stored.u.spec() == ps.grid())) throw Error(ErrorCode::grid_mismatch, "init_file grid differs from the problem grid");
    if (!(stored.weights == ps.weights())) throw Error(ErrorCode::grid_mismatch, "init_file weights differ from the problem");
    o.init_field = std::move(stored.u);
  }
  o.validate();
  return o;
}

int run(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (cfg.command == "report") return report(cfg.runs, false, out, err);
    if (cfg.command == "exponents") return run_exponents(cfg, out);
    return run_solve(cfg, err, t0);
  } catch (const Error &e) {
    const int code = exit_code_for(e.code());
    emit_error(err, std::string(to_string(e.code())), e.what(), code);
    return code;
  } catch (const std::exception &e) {
    emit_error(err, "internal", e.what(), exit_other);
    return exit_other;
  }
}

int report(std::vector<std::string> dirs, bool strict, std::ostream &out, std::ostream &err)
{
  std::sort(dirs.begin(), dirs.end());
  const auto last = std::unique(dirs.begin(), dirs.end());
  if (last != dirs.end()) {
    err << "warning: " << std::distance(last, dirs.end()) << " duplicate run directories ignored\n";
    dirs.erase(last, dirs.end());
  }
  out << "run,status,a1,a2,p,q,Q,d,C_S,C_GN,ratio_d_forms,ratio_norm_forms,el_residual,pohozaev_max,boundary_mass,converged\n";
  bool missing = false;
  for (const auto &d : dirs) {
    const fs::path path = fs::path(d) / "report.json";
    std::ifstream in(path);
    if (!in) {
      missing = true;
      out << d << ",missing,,,,,,,,,,,,,,\n";
      continue;
    }
    try {
      const auto j = json::parse(in);
      const auto &pr = j.at("config").at("problem");
      const auto &terms = pr.at("terms");
      const auto &res = j.at("result");
      auto num = [](const json &v) { return v.is_number() ? fmt(v.get<double>()) : std::string(); };
      std::string pmax;
      if (!res.at("pohozaev_residuals").empty()) {
        double m = 0.0;
        for (const auto &r : res.at("pohozaev_residuals")) m = std::max(m, r.get<double>());
        pmax = fmt(m);
      }
      const json c = j.contains("constants") ? j.at("constants") : json::object();
      auto field = [&](const char *k) { return c.contains(k) ? num(c.at(k)) : std::string(); };
      Rational Q(0);
      for (const auto &w : pr.at("weights")) Q += parse_rational(w.get<std::string>());
      out << d << ",ok," << terms.front().at("order").get<std::string>() << "," << terms.back().at("order").get<std::string>()
          << "," << pr.at("p").get<std::string>() << "," << pr.at("q").get<std::string>() << "," << to_string(Q) << ","
          << num(res.at("d")) << "," << field("C_S_from_d") << "," << field("C_GN_from_d") << "," << field("ratio") << ","
          << field("ratio_norm_forms") << "," << num(res.at("el_residual")) << "," << pmax << ","
          << num(res.at("boundary_mass")) << "," << (res.at("converged").get<bool>() ? "true" : "false") << "\n";
    } catch (const std::exception &e) {
      missing = true;
      out << d << ",unreadable,,,,,,,,,,,,,,\n";
      err << "warning: cannot read " << path.string() << ": " << e.what() << "\n";
    }
  }
  return (strict && missing) ? exit_other : exit_ok;
}

int main(int argc, char **argv)
{
  CLI::App app{"gngs: ground-state solver and sharp-constant calculator"};
  std::string config_path, output;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::vector<std::string> positional;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--output", output, "output directory (report: CSV file)");
  app.add_option("--seed", seed, "seed override");
  app.add_flag("--strict", strict, "report: nonzero exit when a run directory lacks a report");
  app.add_option("args", positional, "[command] [run directories for report]");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    emit_error(std::cerr, "config", e.what(), exit_config);
    return exit_config;
  }

  std::string command = positional.empty() ? std::string() : positional.front();
  std::vector<std::string> extra(positional.empty() ? positional.begin() : positional.begin() + 1, positional.end());

  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      emit_error(std::cerr, "config", "cannot open config " + config_path, exit_config);
      return exit_config;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      cfg = parse_config_text(ss.str());
    } catch (const Error &e) {
      emit_error(std::cerr, std::string(to_string(e.code())), e.what(), exit_config);
      return exit_config;
    }
    if (!command.empty()) cfg.command = command;
  } else if (command == "report") {
    cfg.command = "report";
  } else {
    emit_error(std::cerr, "config", "a --config file is required unless the command is report", exit_config);
    return exit_config;
  }
  if (seed) cfg.seed = *seed;

  if (cfg.command == "report") {
    std::vector<std::string> dirs = cfg.runs;
    dirs.insert(dirs.end(), extra.begin(), extra.end());
    if (output.empty()) return report(dirs, strict, std::cout, std::cerr);
    std::ostringstream csv;
    const int code = report(dirs, strict, csv, std::cerr);
    try {
      write_text(output, csv.str());
    } catch (const Error &e) {
      emit_error(std::cerr, "io", e.what(), exit_other);
      return exit_other;
    }
    return code;
  }
  if (!extra.empty()) {
    emit_error(std::cerr, "config", "unexpected positional arguments", exit_config);
    return exit_config;
  }
  if (!output.empty()) cfg.output_dir = output;
  return run(cfg, std::cout, std::cerr);
}

}  // namespace gngs::cli
