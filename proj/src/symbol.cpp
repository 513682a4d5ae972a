// SPDX-License-Identifier: Apache-2.0

#include "gngs/symbol.hpp"

#include <cmath>
#include <string>

#include <boost/integer/common_factor.hpp>

#include "gngs/error.hpp"

namespace gngs
{

namespace
{

using boost::multiprecision::cpp_int;

double ipow(double x, int n)
{
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

HomogeneousSymbol::HomogeneousSymbol(DilationStructure weights, std::vector<double> coeffs,
                                     std::vector<Rational> axis_orders, Rational homogeneity)
  : weights_(std::move(weights)),
    coeffs_(std::move(coeffs)),
    axis_orders_(std::move(axis_orders)),
    homogeneity_(std::move(homogeneity))
{
  if (coeffs_.size() != weights_.dims() || axis_orders_.size() != weights_.dims())
    throw Error(ErrorCode::invalid_structure, "symbol arity does not match the dilation weights");
  for (double c : coeffs_)
    if (!(c > 0.0) || !std::isfinite(c))
      throw Error(ErrorCode::invalid_structure, "symbol coefficients must be positive");
  for (const auto &o : axis_orders_) {
    if (o <= 0) throw Error(ErrorCode::invalid_structure, "axis orders must be positive");
    integer_orders_.push_back(is_integer(o) && o <= 64 ? static_cast<int>(boost::multiprecision::numerator(o)) : -1);
    real_orders_.push_back(to_double(o));
  }
}

HomogeneousSymbol HomogeneousSymbol::rockland(const DilationStructure &weights, std::vector<double> coeffs)
{
  // lcm of rationals n_j/d_j is lcm(n_j)/gcd(d_j).
  cpp_int num_lcm = 1, den_gcd = 0;
  for (const auto &w : weights.weights()) {
    const cpp_int n = boost::multiprecision::numerator(w);
    const cpp_int d = boost::multiprecision::denominator(w);
    num_lcm = boost::integer::lcm(num_lcm, n);
    den_gcd = boost::integer::gcd(den_gcd, d);
  }
  const Rational nu0 = Rational(num_lcm) / Rational(den_gcd);
  std::vector<Rational> orders;
  for (const auto &w : weights.weights()) orders.push_back(2 * nu0 / w);
  return HomogeneousSymbol(weights, std::move(coeffs), std::move(orders), 2 * nu0);
}

HomogeneousSymbol HomogeneousSymbol::with_orders(const DilationStructure &weights, std::vector<double> coeffs,
                                                 std::vector<Rational> axis_orders, bool extended)
{
  if (axis_orders.size() != weights.dims())
    throw Error(ErrorCode::invalid_structure, "one axis order per dilation weight is required");
  const Rational degree = weights.weights()[0] * axis_orders[0];
  for (std::size_t j = 0; j < axis_orders.size(); ++j) {
    if (weights.weights()[j] * axis_orders[j] != degree)
      throw Error(ErrorCode::invalid_structure,
                  "axis " + std::to_string(j) + ": nu_j * order_j differs from the other axes");
    if (!extended && (!is_integer(axis_orders[j]) || boost::multiprecision::numerator(axis_orders[j]) % 2 != 0))
      throw Error(ErrorCode::invalid_structure,
                  "axis " + std::to_string(j) + ": order " + to_string(axis_orders[j]) +
                      " is not an even integer (enable extended symbols)");
  }
  return HomogeneousSymbol(weights, std::move(coeffs), std::move(axis_orders), degree);
}

double HomogeneousSymbol::operator()(const std::array<double, 3> &xi) const
{
  double s = 0.0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const double a = std::abs(xi[j]);
    s += coeffs_[j] * (integer_orders_[j] >= 0 ? ipow(a, integer_orders_[j]) : std::pow(a, real_orders_[j]));
  }
  return s;
}

HomogeneousSymbol HomogeneousSymbol::scaled(double c) const
{
  std::vector<double> coeffs(coeffs_);
  for (double &v : coeffs) v *= c;
  return HomogeneousSymbol(weights_, std::move(coeffs), axis_orders_, homogeneity_);
}

}  // namespace gngs
