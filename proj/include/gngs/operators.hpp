// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gngs/grid.hpp"
#include "gngs/symbol.hpp"

namespace gngs
{

/// sigma^s sampled on the half spectrum of a grid, with the zero mode set to 0.
class FourierMultiplier
{
public:
  FourierMultiplier(const HomogeneousSymbol &sym, double s, const GridSpec &spec);

  const GridSpec &spec() const { return spec_; }
  std::span<const double> values() const { return values_; }
  std::vector<double> apply(std::span<const double> u) const;

private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// R^s u as the inverse transform of sigma^s u_hat, with sigma(0)^s := 0 for every s >= 0.
GridFunction apply_fractional_power(const HomogeneousSymbol &sym, double s, const GridFunction &u);

/// ||R^{a/nu} u||_p with nu the homogeneous degree of the symbol.
double sobolev_seminorm(const GridFunction &u, const HomogeneousSymbol &sym, double a, double p);

using Profile = std::function<double(const std::array<double, 3> &)>;

/// Samples lambda^{Q/p} f(lambda^{nu_1} x_1, ..., lambda^{nu_n} x_n).
GridFunction dilate(const Profile &f, double lambda, double p, const DilationStructure &weights,
                    const GridSpec &spec);

/// The same dilation applied to grid data through its trigonometric interpolant. Points
/// mapped outside the box wrap periodically.
GridFunction dilate_grid(const GridFunction &u, double lambda, double p, const DilationStructure &weights);

/// Periodic shift by whole samples along each axis.
GridFunction roll(const GridFunction &u, std::span<const long long> shift);

struct RandomFunctionOptions
{
  double decay = 1.0;
  bool zero_mean = true;
  /// Damping symbol; the Euclidean sum xi_j^2 when unset.
  std::optional<HomogeneousSymbol> reference;
};

/// Independent normal spectral coefficients damped by (1 + sigma_ref)^{-decay}, normalized
/// to unit L2 norm. Deterministic in the seed.
GridFunction random_test_function(const GridSpec &spec, std::uint64_t seed,
                                  const RandomFunctionOptions &opts = {});

/// Seed of the i-th member of a family derived from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace gngs
