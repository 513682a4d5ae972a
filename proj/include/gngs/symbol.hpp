// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "gngs/exponents.hpp"

namespace gngs
{

/// Positive Fourier multiplier sigma(xi) = sum_j c_j |xi_j|^{o_j}, homogeneous of degree
/// `homogeneity` under the dual dilation xi_j -> r^{nu_j} xi_j.
class HomogeneousSymbol
{
public:
  /// sum_j c_j xi_j^{2 nu0/nu_j} with nu0 the least common multiple of the weights, so every
  /// axis order is an even integer and the homogeneous degree is 2 nu0.
  static HomogeneousSymbol rockland(const DilationStructure &weights, std::vector<double> coeffs);

  /// Explicit axis orders. They must satisfy nu_j o_j = const; without `extended` they must
  /// also be even integers.
  static HomogeneousSymbol with_orders(const DilationStructure &weights, std::vector<double> coeffs,
                                       std::vector<Rational> axis_orders, bool extended);

  const DilationStructure &weights() const { return weights_; }
  const std::vector<double> &coeffs() const { return coeffs_; }
  const std::vector<Rational> &axis_orders() const { return axis_orders_; }
  const Rational &homogeneity() const { return homogeneity_; }
  double homogeneity_value() const { return to_double(homogeneity_); }
  std::size_t dims() const { return coeffs_.size(); }

  double operator()(const std::array<double, 3> &xi) const;

  /// Same orders, coefficients multiplied by c > 0.
  HomogeneousSymbol scaled(double c) const;

  bool operator==(const HomogeneousSymbol &) const = default;

private:
  HomogeneousSymbol(DilationStructure weights, std::vector<double> coeffs,
                    std::vector<Rational> axis_orders, Rational homogeneity);

  DilationStructure weights_;
  std::vector<double> coeffs_;
  std::vector<Rational> axis_orders_;
  std::vector<int> integer_orders_;  // -1 where the order is not an integer
  std::vector<double> real_orders_;
  Rational homogeneity_;
};

}  // namespace gngs
