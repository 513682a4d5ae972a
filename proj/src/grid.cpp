// SPDX-License-Identifier: Apache-2.0

#include "gngs/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gngs/error.hpp"

namespace gngs
{

GridSpec::GridSpec(std::vector<std::size_t> points, std::vector<double> half_lengths)
  : points_(std::move(points)), half_lengths_(std::move(half_lengths))
{
  if (points_.empty() || points_.size() > 3)
    throw Error(ErrorCode::invalid_grid, "grid must have 1, 2 or 3 axes");
  if (points_.size() != half_lengths_.size())
    throw Error(ErrorCode::invalid_grid, "points and half_lengths differ in length");
  size_ = 1;
  cell_volume_ = 1.0;
  for (std::size_t j = 0; j < points_.size(); ++j) {
    const std::size_t n = points_[j];
    if (n < 8 || (n & (n - 1)) != 0)
      throw Error(ErrorCode::invalid_grid,
                  "axis " + std::to_string(j) + ": point count " + std::to_string(n) +
                      " is not a power of two >= 8");
    if (!(half_lengths_[j] > 0.0) || !std::isfinite(half_lengths_[j]))
      throw Error(ErrorCode::invalid_grid, "axis " + std::to_string(j) + ": half length must be positive");
    size_ *= n;
    cell_volume_ *= 2.0 * half_lengths_[j] / static_cast<double>(n);
  }
}

double GridSpec::spacing(std::size_t axis) const
{
  return 2.0 * half_lengths_[axis] / static_cast<double>(points_[axis]);
}

double GridSpec::box_volume() const
{
  double v = 1.0;
  for (double L : half_lengths_) v *= 2.0 * L;
  return v;
}

double GridSpec::coordinate(std::size_t axis, std::size_t i) const
{
  return -half_lengths_[axis] + spacing(axis) * static_cast<double>(i);
}

std::size_t GridSpec::stride(std::size_t axis) const
{
  std::size_t s = 1;
  for (std::size_t j = axis + 1; j < points_.size(); ++j) s *= points_[j];
  return s;
}

std::array<std::size_t, 3> GridSpec::unflatten(std::size_t flat) const
{
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (std::size_t j = points_.size(); j-- > 0;) {
    idx[j] = flat % points_[j];
    flat /= points_[j];
  }
  return idx;
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
  : spec_(std::move(spec)), values_(std::move(values))
{
  if (values_.size() != spec_.size())
    throw Error(ErrorCode::grid_mismatch, "sample count " + std::to_string(values_.size()) +
                                              " does not match grid size " + std::to_string(spec_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorCode::numeric, "nonfinite sample in grid function");
}

GridFunction GridFunction::zeros(const GridSpec &spec)
{
  return GridFunction(spec, std::vector<double>(spec.size(), 0.0));
}

GridFunction GridFunction::scaled(double c) const
{
  std::vector<double> v(values_);
  for (double &x : v) x *= c;
  return GridFunction(spec_, std::move(v));
}

double pairwise_sum(std::span<const double> x)
{
  constexpr std::size_t block = 64;
  if (x.size() <= block) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double lp_integral(std::span<const double> u, double p, double h)
{
  std::vector<double> w(u.size());
  if (p == 2.0) {
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] * u[i];
  } else {
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = std::pow(std::abs(u[i]), p);
  }
  return pairwise_sum(w) * h;
}

double lp_norm(const GridFunction &u, double p)
{
  if (!(p >= 1.0)) throw Error(ErrorCode::invalid_argument, "lp_norm requires p >= 1");
  return std::pow(lp_integral(u.values(), p, u.spec().cell_volume()), 1.0 / p);
}

double inner(std::span<const double> u, std::span<const double> v, double h)
{
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] * v[i];
  return pairwise_sum(w) * h;
}

std::vector<std::vector<double>> fourier_frequencies(const GridSpec &spec)
{
  std::vector<std::vector<double>> out(spec.dims());
  for (std::size_t j = 0; j < spec.dims(); ++j) {
    const std::size_t n = spec.points()[j];
    const double base = std::numbers::pi / spec.half_lengths()[j];
    out[j].resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const long long kk = k < n / 2 ? static_cast<long long>(k) : static_cast<long long>(k) - static_cast<long long>(n);
      out[j][k] = base * static_cast<double>(kk);
    }
  }
  return out;
}

}  // namespace gngs
