// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gngs/exponents.hpp"
#include "gngs/grid.hpp"
#include "gngs/operators.hpp"
#include "gngs/symbol.hpp"

namespace gngs
{

/// One term |R^{a/nu} u|^p of the energy. A zero order term is the plain Lebesgue term
/// int |u|^p; its symbol only fixes the dilation weights.
struct OperatorTerm
{
  HomogeneousSymbol symbol;
  Rational order;
};

/// Data of the equation sum_j R_j^{a_j/nu_j}(|R_j^{a_j/nu_j} u|^{p-2} R_j^{a_j/nu_j} u) = |u|^{q-2} u
/// on a periodic grid. Validated on construction; the Fourier multipliers of every term are
/// built once and shared between copies.
class ProblemSpec
{
public:
  ProblemSpec(std::vector<OperatorTerm> terms, Rational p, Rational q, GridSpec grid);

  const std::vector<OperatorTerm> &terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  const Rational &p() const { return p_; }
  const Rational &q() const { return q_; }
  double p_value() const { return pd_; }
  double q_value() const { return qd_; }
  const GridSpec &grid() const { return grid_; }
  const DilationStructure &weights() const { return terms_.front().symbol.weights(); }
  const Rational &Q() const { return weights().Q(); }
  /// (a_1, a_l, p, q).
  IndexSet extreme_indices() const;

  /// Multiplier of term j, or nullptr for a zero order term.
  const FourierMultiplier *multiplier(std::size_t j) const;
  /// 1 / (1 + sum_j m_j^2) over the nonzero order terms.
  std::span<const double> preconditioner() const;
  /// GN powers of a two-term problem as doubles; NaN otherwise.
  double theta1_value() const;
  double theta2_value() const;

  /// Same data on another grid.
  ProblemSpec on_grid(GridSpec grid) const;

private:
  struct Cache;
  std::vector<OperatorTerm> terms_;
  Rational p_;
  Rational q_;
  double pd_ = 0.0;
  double qd_ = 0.0;
  GridSpec grid_;
  std::shared_ptr<const Cache> cache_;
};

struct FunctionalReport
{
  double L = 0.0;
  double I = 0.0;
  double J = 0.0;  // NaN unless the problem has exactly two terms
  std::vector<double> term_seminorms;  // int |R_j^{a_j/nu_j} u|^p
  double lq = 0.0;                     // int |u|^q
  double lp = 0.0;                     // int |u|^p
  double seminorm_sum() const;
};

FunctionalReport evaluate(const ProblemSpec &ps, const GridFunction &u);

double energy_L(const ProblemSpec &ps, const GridFunction &u);
double nehari_I(const ProblemSpec &ps, const GridFunction &u);

struct Projection
{
  double mu = 0.0;
  GridFunction v;
};

/// mu u with mu = (sum_j T_j / int |u|^q)^{1/(q-p)}, the unique positive multiple on the
/// Nehari set.
Projection nehari_project(const ProblemSpec &ps, const GridFunction &u);

double gn_quotient_J(const ProblemSpec &ps, const GridFunction &u);

/// (int |R^{a/nu} u|^p + int |u|^p) / (int |u|^q)^{p/q} for a problem with orders (a, 0).
double sobolev_quotient(const ProblemSpec &ps, const GridFunction &u);

/// L2 gradient of the energy. Refuses p < 2.
GridFunction gradient_L(const ProblemSpec &ps, const GridFunction &u);

struct BrezisLiebResult
{
  double max_violation = 0.0;  // max of (lhs - rhs) / max(|lhs|, |rhs|)
  std::size_t draws = 0;
};

/// Samples |l(a+b) - l(a)| <= eps [l(m a) - m l(a)] + |l(C b)| + |l(-C b)| for l(z) = |z|^p,
/// C = 1/(eps (m - 1)), over random complex a, b. With `m` and `eps` unset, both are drawn
/// per sample (m in (1, 5], eps in (0, 1/m)).
BrezisLiebResult brezis_lieb_check(double p, std::size_t samples, std::uint64_t seed,
                                   std::optional<double> m = std::nullopt,
                                   std::optional<double> eps = std::nullopt);

}  // namespace gngs
