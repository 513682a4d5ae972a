// SPDX-License-Identifier: Apache-2.0

#include "gngs/operators.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "gngs/error.hpp"
#include "gngs/spectral.hpp"

namespace gngs
{

namespace
{

// Multipliers must be even so that the inverse transform is real. The half spectrum only
// stores k_last >= 0; evenness in the remaining axes is checked against mirrored entries.
void check_even(const GridSpec &spec, std::span<const double> m)
{
  const std::size_t d = spec.dims();
  std::vector<std::size_t> shape(spec.points());
  shape.back() = shape.back() / 2 + 1;
  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (std::size_t flat = 0; flat < m.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t j = d; j-- > 0;) {
      idx[j] = rem % shape[j];
      rem /= shape[j];
    }
    std::size_t mirror = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t k = (j + 1 == d) ? idx[j] : (shape[j] - idx[j]) % shape[j];
      mirror = mirror * shape[j] + k;
    }
    if (std::abs(m[flat] - m[mirror]) > 1e-10 * scale)
      throw Error(ErrorCode::numeric, "multiplier is not even; its inverse transform would not be real");
  }
}

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Evaluates every line of `in` along `axis` at the points lambda^{nu} x_i via the
// trigonometric interpolant of the line.
std::vector<double> interpolate_axis(const GridSpec &spec, std::span<const double> in, std::size_t axis,
                                     double factor)
{
  const std::size_t n = spec.points()[axis];
  const std::size_t nh = n / 2 + 1;
  const double L = spec.half_lengths()[axis];
  const std::size_t stride = spec.stride(axis);
  const std::size_t lines = spec.size() / n;

  // Phase table e^{i k theta_i} for each target point i. Long axes use a rotation
  // recurrence instead, re-anchored every 64 steps.
  const bool tabulate = n <= 2048;
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = std::numbers::pi * (factor * spec.coordinate(axis, i) + L) / L;
  std::vector<std::complex<double>> phase(tabulate ? n * nh : 0);
  if (tabulate) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < nh; ++k) phase[i * nh + k] = std::polar(1.0, theta[i] * static_cast<double>(k));
  }
  std::vector<std::complex<double>> row(tabulate ? 0 : nh);
  auto phases = [&](std::size_t i) -> const std::complex<double> * {
    if (tabulate) return &phase[i * nh];
    const std::complex<double> step = std::polar(1.0, theta[i]);
    for (std::size_t k = 0; k < nh; ++k)
      row[k] = k % 64 == 0 ? std::polar(1.0, theta[i] * static_cast<double>(k)) : row[k - 1] * step;
    return row.data();
  };

  GridSpec line_spec({n}, {L});
  auto &tr = SpectralTransform::for_grid(line_spec);
  std::vector<double> line(n), out(in.size());
  std::vector<std::complex<double>> coef(nh);
  for (std::size_t l = 0; l < lines; ++l) {
    // Base offset of line l: split l into the index before and after `axis`.
    const std::size_t base = (l / stride) * stride * n + (l % stride);
    for (std::size_t i = 0; i < n; ++i) line[i] = in[base + i * stride];
    tr.forward(line, coef);
    for (std::size_t i = 0; i < n; ++i) {
      const std::complex<double> *ph = phases(i);
      double s = coef[0].real();
      for (std::size_t k = 1; k + 1 < nh; ++k) s += 2.0 * (coef[k] * ph[k]).real();
      s += coef[nh - 1].real() * ph[nh - 1].real();
      out[base + i * stride] = s / static_cast<double>(n);
    }
  }
  return out;
}

}  // namespace

FourierMultiplier::FourierMultiplier(const HomogeneousSymbol &sym, double s, const GridSpec &spec)
  : spec_(spec)
{
  if (sym.dims() != spec.dims()) throw Error(ErrorCode::grid_mismatch, "symbol and grid dimensions differ");
  if (!(s >= 0.0)) throw Error(ErrorCode::invalid_argument, "fractional power must be nonnegative");
  values_ = half_spectrum_map(spec, [&](const std::array<double, 3> &xi) {
    const double v = sym(xi);
    if (v == 0.0) return 0.0;
    return s == 1.0 ? v : std::pow(v, s);
  });
  check_even(spec, values_);
}

std::vector<double> FourierMultiplier::apply(std::span<const double> u) const
{
  return apply_multiplier(spec_, values_, u);
}

GridFunction apply_fractional_power(const HomogeneousSymbol &sym, double s, const GridFunction &u)
{
  FourierMultiplier m(sym, s, u.spec());
  return GridFunction(u.spec(), m.apply(u.values()));
}

double sobolev_seminorm(const GridFunction &u, const HomogeneousSymbol &sym, double a, double p)
{
  if (!(a >= 0.0)) throw Error(ErrorCode::invalid_argument, "Sobolev order must be nonnegative");
  return lp_norm(apply_fractional_power(sym, a / sym.homogeneity_value(), u), p);
}

GridFunction dilate(const Profile &f, double lambda, double p, const DilationStructure &weights,
                    const GridSpec &spec)
{
  if (!(lambda > 0.0)) throw Error(ErrorCode::invalid_argument, "dilation factor must be positive");
  if (weights.dims() != spec.dims()) throw Error(ErrorCode::grid_mismatch, "weights and grid dimensions differ");
  const auto nu = weights.weights_as_double();
  const double amp = std::pow(lambda, to_double(weights.Q()) / p);
  std::vector<double> factor(nu.size());
  for (std::size_t j = 0; j < nu.size(); ++j) factor[j] = std::pow(lambda, nu[j]);

  std::vector<double> v(spec.size());
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < spec.dims(); ++j) x[j] = factor[j] * spec.coordinate(j, idx[j]);
    v[flat] = amp * f(x);
  }
  return GridFunction(spec, std::move(v));
}

GridFunction dilate_grid(const GridFunction &u, double lambda, double p, const DilationStructure &weights)
{
  if (!(lambda > 0.0)) throw Error(ErrorCode::invalid_argument, "dilation factor must be positive");
  const GridSpec &spec = u.spec();
  if (weights.dims() != spec.dims()) throw Error(ErrorCode::grid_mismatch, "weights and grid dimensions differ");
  const auto nu = weights.weights_as_double();
  std::vector<double> v(u.data());
  for (std::size_t j = 0; j < spec.dims(); ++j) v = interpolate_axis(spec, v, j, std::pow(lambda, nu[j]));
  const double amp = std::pow(lambda, to_double(weights.Q()) / p);
  for (double &x : v) x *= amp;
  return GridFunction(spec, std::move(v));
}

GridFunction roll(const GridFunction &u, std::span<const long long> shift)
{
  const GridSpec &spec = u.spec();
  if (shift.size() != spec.dims()) throw Error(ErrorCode::invalid_argument, "one shift per axis is required");
  std::vector<double> v(u.size());
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    std::size_t target = 0;
    for (std::size_t j = 0; j < spec.dims(); ++j) {
      const long long n = static_cast<long long>(spec.points()[j]);
      const long long k = ((static_cast<long long>(idx[j]) + shift[j]) % n + n) % n;
      target = target * spec.points()[j] + static_cast<std::size_t>(k);
    }
    v[target] = u[flat];
  }
  return GridFunction(spec, std::move(v));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index)
{
  return splitmix64(splitmix64(base) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

GridFunction random_test_function(const GridSpec &spec, std::uint64_t seed, const RandomFunctionOptions &opts)
{
  if (!(opts.decay > 0.0)) throw Error(ErrorCode::invalid_argument, "decay must be positive");
  if (opts.reference && opts.reference->dims() != spec.dims())
    throw Error(ErrorCode::grid_mismatch, "reference symbol and grid dimensions differ");
  const auto damping = half_spectrum_map(spec, [&](const std::array<double, 3> &xi) {
    double s = 0.0;
    if (opts.reference) {
      s = (*opts.reference)(xi);
    } else {
      for (std::size_t j = 0; j < spec.dims(); ++j) s += xi[j] * xi[j];
    }
    return std::pow(1.0 + s, -opts.decay);
  });

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::complex<double>> c(damping.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    c[i] = damping[i] * std::complex<double>(re, im);
  }
  c[0] = opts.zero_mean ? 0.0 : std::complex<double>(c[0].real(), 0.0);

  auto &tr = SpectralTransform::for_grid(spec);
  std::vector<double> v(spec.size());
  tr.inverse(c, v);
  const double norm = std::sqrt(lp_integral(v, 2.0, spec.cell_volume()));
  if (norm > 0.0)
    for (double &x : v) x /= norm;
  return GridFunction(spec, std::move(v));
}

}  // namespace gngs
