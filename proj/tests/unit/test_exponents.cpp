// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "gngs/error.hpp"
#include "gngs/exponents.hpp"

using namespace gngs;

namespace
{

Rational r(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("homogeneous dimension sums the weights")
{
  const DilationStructure w({r(1), r(2), r(3, 2)});
  CHECK(w.Q() == r(9, 2));
  CHECK_THROWS_AS(DilationStructure({}), Error);
  CHECK_THROWS_AS(DilationStructure({r(1), r(0)}), Error);
}

TEST_CASE("critical exponents")
{
  CHECK(critical_exponent(r(3), r(1), r(2)) == r(6));
  CHECK(critical_exponent(r(3), r(1, 2), r(2)) == r(3));
  CHECK(critical_exponent(r(3), r(0), r(2)) == r(2));
  CHECK(critical_exponent(r(1), r(2, 5), r(2)) == r(10));
  CHECK_THROWS_AS(critical_exponent(r(3), r(3, 2), r(2)), Error);

  // strictly increasing in a on [0, Q/p)
  for (int Qn = 1; Qn <= 6; ++Qn) {
    const Rational Q(Qn);
    Rational prev = critical_exponent(Q, r(0), r(2));
    for (int k = 1; k < 20; ++k) {
      const Rational a = Q / 2 * Rational(k, 20);
      const Rational c = critical_exponent(Q, a, r(2));
      CHECK(c > prev);
      prev = c;
    }
  }
}

TEST_CASE("admissibility verdicts")
{
  const IndexSet inside{r(1), r(0), r(2), r(3)};
  CHECK(check_admissible(inside, r(3), true).admissible);

  const IndexSet endpoint{r(1), r(0), r(2), r(6)};
  CHECK(check_admissible(endpoint, r(3), false).admissible);
  CHECK_FALSE(check_admissible(endpoint, r(3), true).admissible);

  const auto bad = check_admissible({r(1), r(1), r(2), r(3)}, r(3), false);
  CHECK_FALSE(bad.admissible);
  CHECK_FALSE(bad.failures.empty());

  CHECK_FALSE(check_admissible({r(2), r(0), r(2), r(3)}, r(3), false).admissible);
}

TEST_CASE("gn exponents sum to q/p and hit the endpoints")
{
  for (int Qn = 1; Qn <= 5; ++Qn) {
    const Rational Q(Qn);
    for (const auto &[a1, a2] : {std::pair{r(1, 3), r(0)}, std::pair{r(2, 5), r(1, 10)}}) {
      const Rational p = 2;
      const Rational lo = critical_exponent(Q, a2, p), hi = critical_exponent(Q, a1, p);
      for (int k = 1; k < 10; ++k) {
        const Rational q = lo + (hi - lo) * Rational(k, 10);
        const auto th = gn_exponents({a1, a2, p, q}, Q);
        CHECK(th.theta1 + th.theta2 == q / p);
        CHECK(th.theta1 > 0);
        CHECK(th.theta2 > 0);
      }
      const auto at_lo = gn_exponents({a1, a2, p, lo}, Q);
      CHECK(at_lo.theta1 == 0);
      CHECK(at_lo.theta2 == lo / p);
      const auto at_hi = gn_exponents({a1, a2, p, hi}, Q);
      CHECK(at_hi.theta1 == hi / p);
      CHECK(at_hi.theta2 == 0);
    }
  }
  CHECK_THROWS_AS(gn_exponents({r(1), r(1), r(2), r(3)}, r(3)), Error);
}

TEST_CASE("interpolation parameter")
{
  const auto s = interpolation_s(r(1), r(3), r(2), r(5, 2), r(2));
  // (1/2 - 2/5) / (1/3 + 1/2 - 1/2)
  CHECK(s.s == r(3, 10));
  CHECK(s.in_unit_interval);
}

TEST_CASE("multi-norm weights")
{
  const std::vector<Rational> orders{r(1), r(1, 2), r(0)};
  const auto m = multi_gn_exponents(orders, r(2), r(3), r(5, 2));
  // frozen from the exact minimum-norm oracle
  REQUIRE(m.s.size() == 3);
  CHECK(m.s[0] == r(2, 15));
  CHECK(m.s[1] == r(1, 3));
  CHECK(m.s[2] == r(8, 15));
  CHECK(m.endpoint_exponents == std::vector<Rational>{r(6), r(3), r(2)});
  CHECK(m.solution_dimension == 1);
  CHECK_FALSE(m.unique);
  CHECK_FALSE(m.polytope_projection);

  Rational sum = 0, harm = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    sum += m.s[j];
    harm += m.s[j] / m.endpoint_exponents[j];
  }
  CHECK(sum == 1);
  CHECK(harm == r(2, 5));

  const auto t = multi_gn_exponents(std::vector<Rational>{r(2, 5), r(1, 5), r(0)}, r(2), r(1), r(3));
  CHECK(t.s == std::vector<Rational>{r(1, 4), r(1, 3), r(5, 12)});

  // q equal to the smallest endpoint: only s = (0, ..., 1) is feasible
  const auto edge = multi_gn_exponents(orders, r(2), r(3), r(2));
  CHECK(edge.s == std::vector<Rational>{r(0), r(0), r(1)});

  CHECK_THROWS_AS(multi_gn_exponents(orders, r(2), r(3), r(7)), Error);
}

TEST_CASE("ratio factor")
{
  const auto f = sobolev_gn_ratio_factor(r(2, 5), r(2), r(3), r(1));
  CHECK(f.prefactor == r(12, 7));
  CHECK(f.base == r(5, 7));
  CHECK(f.exponent == r(-5, 12));
  // 30 digits from an mpmath evaluation
  CHECK(f.value_text.substr(0, 30) == std::string("1.97228598008191150331946456998").substr(0, 30));
  CHECK(f.value == doctest::Approx(1.9722859800819115).epsilon(1e-15));
}

TEST_CASE("rational parsing")
{
  CHECK(parse_rational("2/5") == r(2, 5));
  CHECK(parse_rational("0.4") == r(2, 5));
  CHECK(parse_rational("-3") == r(-3));
  CHECK(to_string(r(4, 10)) == "2/5");
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}
