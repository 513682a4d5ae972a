// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gngs/error.hpp"
#include "gngs/functionals.hpp"

namespace gngs
{

enum class InitKind
{
  gaussian,
  random,
  file
};

enum class Symmetrize
{
  automatic,  // on for p = 2, dropped if the modulus step stalls the descent
  on,
  off
};

struct SolverOptions
{
  int max_iters = 20000;
  double step0 = 1.0;
  double step_max = 2.0;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double tol_residual = 1e-7;
  double tol_energy = 1e-12;
  int multistart = 1;
  std::uint64_t seed = 0;
  InitKind init = InitKind::gaussian;
  /// Starting profile for InitKind::file, already on the problem grid.
  std::optional<GridFunction> init_field;
  Symmetrize symmetrize = Symmetrize::automatic;
  int recenter_every = 50;
  /// Iterations per stall test. A window in which the energy drops by less than tol_energy
  /// per iteration and the residual does not halve (at or below tol_residual) or does not
  /// fall by 1% (above it) counts as a stall and ends the run. A window without halving
  /// also drops the modulus step in automatic mode.
  int stall_window = 50;
  /// Parallel multistart width; 0 reads GNGS_THREADS, falling back to the hardware count.
  unsigned threads = 0;

  void validate() const;
};

struct IterationRecord
{
  int iter = 0;
  double L = 0.0;
  double nehari_residual = 0.0;
  double el_residual = 0.0;
  double step = 0.0;
};

struct RunSummary
{
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double d = 0.0;
  double el_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct PohozaevReport
{
  /// Relative balances of the two norm identities and of the energy identity. Present for
  /// two-term problems only.
  std::vector<double> residuals;
  /// Fourth order central difference of L(phi_lambda) at lambda = 1, divided by |d|.
  double lambda_derivative = 0.0;
  /// The same derivative from its closed form sum_j a_j T_j - Q(q-p)/(pq) int |phi|^q,
  /// divided by |d|.
  double virial = 0.0;
};

struct GroundStateResult
{
  GridFunction phi;
  double d = 0.0;
  std::vector<double> term_seminorms{};
  double lq = 0.0;
  double lp = 0.0;
  double el_residual = 0.0;      // ||grad L||_2 / ||phi||_2
  double nehari_residual = 0.0;  // |I(phi)| / sum_j T_j
  PohozaevReport pohozaev{};
  int iterations = 0;
  double boundary_mass = 0.0;
  /// Iteration converged: residual, energy stall and Nehari tolerances all met.
  bool converged = false;
  /// boundary_mass <= 1e-6.
  bool boundary_ok = false;
  bool symmetrized = false;
  int monotonicity_violations = 0;
  int nehari_violations = 0;
  std::vector<std::string> events{};
  std::vector<IterationRecord> history{};
  std::vector<RunSummary> runs{};
  std::size_t best_run = 0;
  double energy_spread = 0.0;  // (max - min) d over converged runs, relative to min
};

/// Raised when the energy turns nonfinite. Carries the last finite iterate.
class SolverFailure : public Error
{
public:
  SolverFailure(const std::string &message, GridFunction last, int iteration)
    : Error(ErrorCode::numeric, message), last_(std::move(last)), iteration_(iteration)
  {
  }
  const GridFunction &last_iterate() const { return last_; }
  int iteration() const { return iteration_; }

private:
  GridFunction last_;
  int iteration_;
};

GroundStateResult solve_ground_state(const ProblemSpec &ps, const SolverOptions &opts);

/// Starting profile exp(-sum_j (x_j / w_j)^2) with w_j = L_j / 8.
GridFunction gaussian_start(const GridSpec &spec);

/// Random localized start: |random smooth function| times a Gaussian envelope.
GridFunction random_start(const GridSpec &spec, std::uint64_t seed);

/// Norm identities of a least energy solution of a two-term problem together with the
/// dilation derivative. For other term counts only the derivative parts are filled.
PohozaevReport pohozaev_check(const ProblemSpec &ps, const GridFunction &phi);

/// Fraction of int |u|^p carried by the outer shell |x_j| > 0.9 L_j (any axis).
double boundary_mass(const GridFunction &u, double p);

struct BruteForceResult
{
  double d = 0.0;
  std::vector<double> running_min;  // after each trial
};

/// Independent upper bound for d on tiny grids: random localized starts, each followed by
/// 200 fixed-step projected descent steps with step halving on energy increase.
BruteForceResult brute_force_d(const ProblemSpec &ps, int trials, std::uint64_t seed,
                               const std::optional<GridFunction> &start = std::nullopt);

struct MassCheckResult
{
  /// min over samples of (||v||^p - ||phi||^p) / ||phi||^p with v rescaled to the q-mass
  /// of phi.
  double min_deficit = 0.0;
  double dilation_deficit = 0.0;  // the same for phi dilated by 1.1
  int samples = 0;
};

MassCheckResult minimizer_mass_check(const ProblemSpec &ps, const GridFunction &phi, int perturbations,
                                     std::uint64_t seed);

/// Width for parallel sections: GNGS_THREADS if set, else the hardware count, at least one.
unsigned parallel_width(unsigned requested = 0);

}  // namespace gngs
