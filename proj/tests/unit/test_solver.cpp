// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "gngs/constants.hpp"
#include "gngs/solver.hpp"
#include "helpers.hpp"

using namespace gngs;
using gngs::test::rel;

namespace
{

// Reference values from an independent L-BFGS minimization of the projected energy
// (tests/oracles/oracles.py).
constexpr double d_coarse = 1.5269892114164372;  // N = 32, L = 20
constexpr double d_fine = 1.6171863190999978;    // N = 1024, L = 40

const GroundStateResult &fine_result()
{
  static const GroundStateResult r = solve_ground_state(test::fractional_1d(1024, 40.0), {});
  return r;
}

}  // namespace

TEST_CASE("options are validated")
{
  SolverOptions o;
  CHECK_NOTHROW(o.validate());
  o.step0 = 3.0;
  CHECK_THROWS_AS(o.validate(), Error);
  o = {};
  o.armijo_shrink = 1.0;
  CHECK_THROWS_AS(o.validate(), Error);
  o = {};
  o.init = InitKind::file;
  CHECK_THROWS_AS(o.validate(), Error);
  o = {};
  o.multistart = 0;
  CHECK_THROWS_AS(o.validate(), Error);
}

TEST_CASE("1D fractional ground state matches the independent minimizer")
{
  const auto &r = fine_result();
  CHECK(r.converged);
  CHECK(r.el_residual < 1e-7);
  CHECK(rel(r.d, d_fine) < 1e-8);
  CHECK(r.monotonicity_violations == 0);
  CHECK(r.nehari_violations == 0);
  CHECK(r.nehari_residual < 1e-10);
  CHECK(r.pohozaev.lambda_derivative < 1e-6);
  REQUIRE(r.pohozaev.residuals.size() == 3);
  for (double v : r.pohozaev.residuals) CHECK(std::isfinite(v));
  // d = (1/p - 1/q) int |phi|^q on the Nehari set
  CHECK(rel(r.d, r.lq / 6.0) < 1e-10);

  const auto coarse = solve_ground_state(test::fractional_1d(32, 20.0), {});
  CHECK(coarse.converged);
  CHECK(rel(coarse.d, d_coarse) < 1e-8);
}

TEST_CASE("energies along the iteration never increase")
{
  const auto &h = fine_result().history;
  REQUIRE(h.size() > 2);
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i].L <= h[i - 1].L * (1.0 + 1e-14));
  for (const auto &rec : h) CHECK(rec.nehari_residual <= 1e-10);
}

TEST_CASE("seminorm floor from the computed GN constant")
{
  const auto ps = test::fractional_1d(1024, 40.0);
  const auto &r = fine_result();
  const auto bc = best_constants(r, ps);
  const double norm_p = r.term_seminorms[0] + r.term_seminorms[1];
  REQUIRE(norm_p > 0.0);
  // kappa = C^{-1/(q-p)} bounds the norm on the Nehari set for any valid constant
  for (double C : {bc.C_GN_from_norm, bc.C_GN_from_d}) CHECK(std::sqrt(norm_p) >= std::pow(C, -1.0));
  // with C = 1/J(phi), (norm/kappa)^{q-p} = (sum T)^{q/p} / (T1^theta1 T2^theta2) exactly
  const double C = 1.0 / gn_quotient_J(ps, r.phi);
  const double predicted =
      std::pow(norm_p, 1.5) / (std::pow(r.term_seminorms[0], ps.theta1_value()) * std::pow(r.term_seminorms[1], ps.theta2_value()));
  CHECK(rel(std::sqrt(norm_p) * C, predicted) < 1e-10);
  CHECK(predicted > 1.0);
}

TEST_CASE("multistart is deterministic and keeps the lowest energy")
{
  const auto ps = test::fractional_1d(64, 20.0);
  SolverOptions o;
  o.multistart = 3;
  o.init = InitKind::random;
  o.seed = 5;
  const auto a = solve_ground_state(ps, o);
  o.threads = 1;
  const auto b = solve_ground_state(ps, o);
  CHECK(a.d == b.d);
  CHECK(a.best_run == b.best_run);
  REQUIRE(a.runs.size() == 3);
  for (const auto &run : a.runs)
    if (run.converged) CHECK(a.d <= run.d);
  CHECK(a.energy_spread < 1e-6);
}

TEST_CASE("restarting from a solution reproduces it")
{
  const auto ps = test::fractional_1d(1024, 40.0);
  SolverOptions o;
  o.init = InitKind::file;
  o.init_field = fine_result().phi;
  const auto r = solve_ground_state(ps, o);
  CHECK(r.converged);
  CHECK(rel(r.d, fine_result().d) < 1e-10);
  CHECK(r.iterations < 200);

  o.init_field = GridFunction::zeros(GridSpec({512}, {40.0}));
  CHECK_THROWS_AS(solve_ground_state(ps, o), Error);
}

TEST_CASE("three-term problem")
{
  const auto ps = test::three_term_1d(512, 40.0);
  const auto r = solve_ground_state(ps, {});
  CHECK(r.converged);
  CHECK(r.pohozaev.residuals.empty());
  CHECK(r.pohozaev.lambda_derivative < 1e-5);
  CHECK(rel(r.d, energy_L(ps, r.phi)) < 1e-12);
}

TEST_CASE("brute force oracle")
{
  const auto ps = test::fractional_1d(32, 20.0);
  const auto bf = brute_force_d(ps, 8, 3);
  REQUIRE(bf.running_min.size() == 8);
  for (std::size_t i = 1; i < bf.running_min.size(); ++i) CHECK(bf.running_min[i] <= bf.running_min[i - 1]);
  CHECK(bf.d >= d_coarse * (1.0 - 1e-9));

  const auto sol = solve_ground_state(ps, {});
  const auto fixed = brute_force_d(ps, 1, 3, sol.phi);
  CHECK(rel(fixed.d, sol.d) < 1e-9);
  CHECK_THROWS_AS(brute_force_d(test::fractional_1d(128, 20.0), 1, 1), Error);
}

TEST_CASE("minimizer mass check")
{
  const auto ps = test::fractional_1d(1024, 40.0);
  const auto &r = fine_result();
  const auto mc = minimizer_mass_check(ps, r.phi, 30, 9);
  const double norm_p = r.term_seminorms[0] + r.term_seminorms[1];
  CHECK(mc.min_deficit >= -1e-6 * norm_p);
  CHECK(mc.dilation_deficit >= -1e-6 * norm_p);
  CHECK(mc.samples >= 30);
}

TEST_CASE("boundary mass")
{
  const GridSpec g({128}, {10.0});
  std::vector<double> v(128, 0.0);
  v[1] = 1.0;
  CHECK(boundary_mass(GridFunction(g, v), 2.0) == 1.0);
  v[64] = 1.0;
  CHECK(boundary_mass(GridFunction(g, v), 2.0) == 0.5);
  CHECK(boundary_mass(gaussian_start(g), 2.0) < 1e-12);
}

TEST_CASE("parallel width")
{
  CHECK(parallel_width(3) == 3);
  CHECK(parallel_width() >= 1);
}
