// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gngs/rational.hpp"

namespace gngs
{

/// Dilation weights nu_1..nu_n of an abelian graded group R^n, acting by
/// D_r(x) = (r^{nu_1} x_1, ..., r^{nu_n} x_n), together with the homogeneous dimension
/// Q = nu_1 + ... + nu_n.
class DilationStructure
{
public:
  explicit DilationStructure(std::vector<Rational> weights);

  const std::vector<Rational> &weights() const { return weights_; }
  const Rational &Q() const { return Q_; }
  std::size_t dims() const { return weights_.size(); }
  std::vector<double> weights_as_double() const;

  bool operator==(const DilationStructure &other) const { return weights_ == other.weights_; }

private:
  std::vector<Rational> weights_;
  Rational Q_;
};

Rational homogeneous_dimension(std::span<const Rational> weights);

/// Sobolev orders a1 > a2 >= 0 and Lebesgue exponents p, q of a two-term inequality.
struct IndexSet
{
  Rational a1;
  Rational a2;
  Rational p;
  Rational q;

  bool operator==(const IndexSet &) const = default;
};

struct AdmissibilityVerdict
{
  bool admissible = false;
  std::vector<std::string> failures;
};

/// pQ/(Q - ap), the Sobolev endpoint for order a.
Rational critical_exponent(const Rational &Q, const Rational &a, const Rational &p);

/// Checks a1 > a2 >= 0, 1 < p < Q/a1 and the q-range between the two critical exponents.
/// The q-range is closed unless `strict` is set, in which case both ends are excluded.
AdmissibilityVerdict check_admissible(const IndexSet &idx, const Rational &Q, bool strict);

/// Powers carried by the two seminorm integrals in the Gagliardo-Nirenberg bound
///   int |u|^q <= C (int |R1^{a1/nu1} u|^p)^theta1 (int |R2^{a2/nu2} u|^p)^theta2.
struct GNExponents
{
  Rational theta1;
  Rational theta2;
};

GNExponents gn_exponents(const IndexSet &idx, const Rational &Q);

struct Interpolation
{
  Rational s;
  bool in_unit_interval = false;
};

/// s = (1/p - 1/q) / (a/Q + 1/p - 1/r).
Interpolation interpolation_s(const Rational &a, const Rational &Q, const Rational &p,
                              const Rational &q, const Rational &r);

/// Weights s_j of the multi-norm inequality: sum s_j = 1 and sum s_j / p_j = 1/q with
/// p_j = pQ/(Q - a_j p). With more than two orders the system is underdetermined; the
/// minimum Euclidean norm solution is returned and `solution_dimension` reports the
/// dimension of the affine solution set. If that point leaves [0,1], the minimum-norm point
/// of the feasible polytope is returned instead and `polytope_projection` is set.
struct MultiGNExponents
{
  std::vector<Rational> s;
  std::vector<Rational> endpoint_exponents;
  std::size_t solution_dimension = 0;
  bool unique = true;
  bool polytope_projection = false;
};

MultiGNExponents multi_gn_exponents(std::span<const Rational> orders, const Rational &p,
                                    const Rational &Q, const Rational &q);

/// The R-independent factor linking the two best constants when a2 = 0:
///   C_GN^{p/q} = C_S * prefactor * base^exponent.
struct RatioFactor
{
  Rational prefactor;  // apq / (apq - Q(q-p))
  Rational base;       // Q(q-p) / (apq - Q(q-p))
  Rational exponent;   // Q(p-q) / (apq)
  double value = 0.0;
  std::string value_text;  // 30 significant digits
};

RatioFactor sobolev_gn_ratio_factor(const Rational &a, const Rational &p, const Rational &q,
                                    const Rational &Q);

}  // namespace gngs
