// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "gngs/constants.hpp"
#include "helpers.hpp"

using namespace gngs;
using gngs::test::rel;

namespace
{

struct Solved
{
  ProblemSpec ps;
  GroundStateResult res;
};

const Solved &solved(double c = 1.0)
{
  static const Solved one{test::fractional_1d(512, 40.0), solve_ground_state(test::fractional_1d(512, 40.0), {})};
  static const Solved two{test::fractional_1d(512, 40.0, Rational(2, 5), 2, 3, 2.0),
                          solve_ground_state(test::fractional_1d(512, 40.0, Rational(2, 5), 2, 3, 2.0), {})};
  return c == 1.0 ? one : two;
}

}  // namespace

TEST_CASE("d forms of the constants follow from d")
{
  const auto &[ps, res] = solved();
  REQUIRE(res.converged);
  const auto bc = best_constants(res, ps);
  CHECK(bc.has_sobolev);
  CHECK(rel(bc.C_S_from_d, std::pow(6.0 * res.d, -1.0 / 3.0)) < 1e-14);
  // the Sobolev quotient at a Nehari point is (int |phi|^q)^{(q-p)/q} = 1 / C_S
  CHECK(rel(sobolev_quotient(ps, res.phi), std::pow(res.lq, 1.0 / 3.0)) < 1e-10);
  CHECK(rel(sobolev_quotient(ps, res.phi) * bc.C_S_from_d, 1.0) < 1e-10);
  for (double v : {bc.C_S_from_mass, bc.C_S_from_d, bc.C_GN_from_norm, bc.C_GN_from_d, bc.ratio_factor}) {
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
}

TEST_CASE("ratio identity")
{
  const auto &[ps, res] = solved();
  const auto bc = best_constants(res, ps);
  const auto rc = ratio_identity_check(bc);
  CHECK(rc.residual < 1e-8);
  CHECK(bc.ratio_factor == sobolev_gn_ratio_factor(Rational(2, 5), 2, 3, 1).value);

  const auto &[ps2, res2] = solved(2.0);
  REQUIRE(res2.converged);
  const auto rc2 = ratio_identity_check(best_constants(res2, ps2));
  CHECK(rel(rc.ratio, rc2.ratio) < 1e-4);
  CHECK(rel(rc.ratio_norm_forms, rc2.ratio_norm_forms) < 1e-4);
}

TEST_CASE("sampled inequalities hold with the computed constants")
{
  const auto &[ps, res] = solved();
  const auto bc = best_constants(res, ps);
  const auto gn = verify_gn_inequality(ps, bc.C_GN_from_d, 60, 1);
  CHECK(gn.samples == 60);
  CHECK(gn.worst_margin <= 1e-8);
  const auto so = verify_sobolev_inequality(ps, bc.C_S_from_d, 60, 1);
  CHECK(so.worst_margin <= 1e-8);
  CHECK(so.min_quotient >= sobolev_quotient(ps, res.phi) * (1.0 - 1e-6));
  CHECK(gn_margin(ps, bc.C_GN_from_d, GridFunction::zeros(ps.grid())) == 0.0);
}

TEST_CASE("inequality samples are reproducible")
{
  const GridSpec g({64}, {10.0});
  CHECK(inequality_sample(g, 4, 7).data() == inequality_sample(g, 4, 7).data());
  CHECK(inequality_sample(g, 4, 7).data() != inequality_sample(g, 4, 8).data());
}

TEST_CASE("constants need the right term structure")
{
  const auto ps = test::three_term_1d(64, 10.0);
  GroundStateResult fake{.phi = GridFunction::zeros(ps.grid())};
  fake.term_seminorms = {1.0, 1.0, 1.0};
  fake.d = 1.0;
  CHECK_THROWS_AS(best_constants(fake, ps), Error);
  CHECK_THROWS_AS(verify_gn_inequality(test::fractional_1d(64, 10.0), -1.0, 3, 1), Error);
}
