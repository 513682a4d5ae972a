// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gngs/functionals.hpp"
#include "gngs/solver.hpp"

namespace gngs::cli
{

inline constexpr const char *version = "0.1.0";

enum ExitCode : int
{
  exit_ok = 0,
  exit_other = 1,
  exit_config = 2,
  exit_inadmissible = 3,
  exit_solver = 4
};

// Rationals are kept as their canonical text ("2/5") so a config echo re-parses to an equal
// value.

struct TermConfig
{
  std::vector<double> coeffs;
  std::vector<std::string> axis_orders;  // empty: derived from the weights
  std::string order;
  bool operator==(const TermConfig &) const = default;
};

struct ProblemConfig
{
  std::vector<std::string> weights;
  std::vector<TermConfig> terms;
  std::string p;
  std::string q;
  std::vector<std::size_t> points;
  std::vector<double> half_lengths;
  bool extended_symbols = false;
  bool operator==(const ProblemConfig &) const = default;
};

struct SolverConfig
{
  int max_iters = 20000;
  double step0 = 1.0;
  double step_max = 2.0;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double tol_residual = 1e-7;
  double tol_energy = 1e-12;
  int multistart = 1;
  std::string init = "gaussian";  // gaussian | random | file
  std::string init_file;
  std::string symmetrize = "auto";  // auto | on | off
  int recenter_every = 50;
  int stall_window = 50;
  bool operator==(const SolverConfig &) const = default;
};

struct ExponentsConfig
{
  std::string a1;
  std::string a2 = "0";
  std::string p;
  std::vector<std::string> Q_values;
  std::vector<std::string> q_values;
  std::vector<std::string> orders;  // optional multi-norm weights at each q
  bool operator==(const ExponentsConfig &) const = default;
};

struct VerifyConfig
{
  int samples = 200;
  int perturbations = 100;
  bool operator==(const VerifyConfig &) const = default;
};

struct RunConfig
{
  std::string command;  // exponents | solve | constants | verify | report
  std::optional<ProblemConfig> problem;
  SolverConfig solver;
  std::optional<ExponentsConfig> exponents;
  VerifyConfig verify;
  std::vector<std::string> runs;  // run directories for `report`
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  bool operator==(const RunConfig &) const = default;
};

/// Strict parse: unknown keys, wrong types and malformed rationals raise ErrorCode::config.
RunConfig parse_config(const nlohmann::json &j);
RunConfig parse_config_text(const std::string &text);
nlohmann::ordered_json to_json(const RunConfig &cfg);

ProblemSpec build_problem(const ProblemConfig &pc);
SolverOptions build_solver_options(const SolverConfig &sc, std::uint64_t seed, const ProblemSpec &ps);

/// Dispatches the command and writes its artifacts. Errors are reported as one JSON object
/// on `err`; the return value is the process exit status.
int run(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Merged CSV over run directories (sorted, deduplicated). Missing reports give flagged
/// rows; with `strict` they also make the exit status nonzero.
int report(std::vector<std::string> dirs, bool strict, std::ostream &out, std::ostream &err);

/// Process entry point used by the executable.
int main(int argc, char **argv);

int exit_code_for(ErrorCode code);

}  // namespace gngs::cli
