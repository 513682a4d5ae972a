// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "gngs/functionals.hpp"

namespace gngs::test
{

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

inline ProblemSpec fractional_1d(std::size_t n, double half, Rational a = Rational(2, 5), Rational p = 2, Rational q = 3,
                                 double c = 1.0)
{
  const DilationStructure w({Rational(1)});
  const auto sym = HomogeneousSymbol::rockland(w, {c});
  return ProblemSpec({{sym, a}, {sym, Rational(0)}}, p, q, GridSpec({n}, {half}));
}

inline ProblemSpec anisotropic_2d(std::size_t n1, std::size_t n2, double l1, double l2)
{
  const DilationStructure w({Rational(1), Rational(2)});
  const auto sym = HomogeneousSymbol::rockland(w, {1.0, 1.0});
  return ProblemSpec({{sym, Rational(1)}, {sym, Rational(0)}}, 2, 4, GridSpec({n1, n2}, {l1, l2}));
}

inline ProblemSpec three_term_1d(std::size_t n, double half)
{
  const DilationStructure w({Rational(1)});
  const auto sym = HomogeneousSymbol::rockland(w, {1.0});
  return ProblemSpec({{sym, Rational(2, 5)}, {sym, Rational(1, 5)}, {sym, Rational(0)}}, 2, 3, GridSpec({n}, {half}));
}

}  // namespace gngs::test
