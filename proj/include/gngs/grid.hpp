// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace gngs
{

/// Periodic rectangular box: axis j carries points[j] samples spanning [-L_j, L_j).
/// Values are stored row-major, the last axis varying fastest.
class GridSpec
{
public:
  GridSpec(std::vector<std::size_t> points, std::vector<double> half_lengths);

  std::size_t dims() const { return points_.size(); }
  const std::vector<std::size_t> &points() const { return points_; }
  const std::vector<double> &half_lengths() const { return half_lengths_; }
  std::size_t size() const { return size_; }
  double spacing(std::size_t axis) const;
  double cell_volume() const { return cell_volume_; }
  double box_volume() const;
  double coordinate(std::size_t axis, std::size_t i) const;
  std::size_t stride(std::size_t axis) const;
  /// Multi-index of a flat position.
  std::array<std::size_t, 3> unflatten(std::size_t flat) const;

  bool operator==(const GridSpec &) const = default;

private:
  std::vector<std::size_t> points_;
  std::vector<double> half_lengths_;
  std::size_t size_ = 0;
  double cell_volume_ = 0.0;
};

/// Real samples on a grid. Immutable once built; the constructor rejects wrong lengths and
/// nonfinite samples.
class GridFunction
{
public:
  GridFunction(GridSpec spec, std::vector<double> values);

  static GridFunction zeros(const GridSpec &spec);

  const GridSpec &spec() const { return spec_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double> &data() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  GridFunction scaled(double c) const;

private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Pairwise (tree) summation with a fixed split order, so results do not depend on how
/// callers partition the work.
double pairwise_sum(std::span<const double> x);

/// (sum |u_i|^p h)^{1/p}.
double lp_norm(const GridFunction &u, double p);

/// sum |u_i|^p h, the quantity the functionals actually use.
double lp_integral(std::span<const double> u, double p, double h);

/// L2 inner product sum u_i v_i h.
double inner(std::span<const double> u, std::span<const double> v, double h);

/// Per-axis angular frequencies (pi/L_j) k for k = 0..N/2-1, -N/2..-1.
std::vector<std::vector<double>> fourier_frequencies(const GridSpec &spec);

}  // namespace gngs
