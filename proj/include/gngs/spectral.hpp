// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "gngs/grid.hpp"

namespace gngs
{

/// Real-to-half-complex transform on a grid shape. The half spectrum keeps the last axis
/// up to N/2 inclusive, in the usual r2c layout.
class SpectralTransform
{
public:
  /// Per-thread cached transform for the shape of `spec`.
  static SpectralTransform &for_grid(const GridSpec &spec);

  explicit SpectralTransform(const std::vector<std::size_t> &points);
  ~SpectralTransform();
  SpectralTransform(const SpectralTransform &) = delete;
  SpectralTransform &operator=(const SpectralTransform &) = delete;

  std::size_t real_size() const { return real_size_; }
  std::size_t half_size() const { return half_size_; }

  /// Unnormalized forward transform.
  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  /// Inverse transform including the 1/N normalization.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

private:
  std::size_t real_size_ = 0;
  std::size_t half_size_ = 0;
  double *real_buf_ = nullptr;
  void *complex_buf_ = nullptr;
  void *forward_plan_ = nullptr;
  void *inverse_plan_ = nullptr;
};

/// Evaluates f at every frequency of the half spectrum, in transform layout.
std::vector<double> half_spectrum_map(const GridSpec &spec,
                                      const std::function<double(const std::array<double, 3> &)> &f);

/// Multiplicity of each half-spectrum entry in the full spectrum (1 or 2), for Parseval sums.
std::vector<double> half_spectrum_multiplicity(const GridSpec &spec);

/// Inverse transform of mult * fft(u). `mult` must be even in each frequency so the result
/// is real.
std::vector<double> apply_multiplier(const GridSpec &spec, std::span<const double> mult,
                                     std::span<const double> u);

}  // namespace gngs
