// SPDX-License-Identifier: Apache-2.0

#include "gngs/spectral.hpp"

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "gngs/error.hpp"

namespace gngs
{

namespace
{

// FFTW planning and plan destruction are not thread safe.
std::mutex &planner_mutex()
{
  static std::mutex m;
  return m;
}

}  // namespace

SpectralTransform &SpectralTransform::for_grid(const GridSpec &spec)
{
  thread_local std::map<std::vector<std::size_t>, std::unique_ptr<SpectralTransform>> cache;
  auto &slot = cache[spec.points()];
  if (!slot) slot = std::make_unique<SpectralTransform>(spec.points());
  return *slot;
}

SpectralTransform::SpectralTransform(const std::vector<std::size_t> &points)
{
  std::vector<int> n(points.begin(), points.end());
  real_size_ = 1;
  for (auto v : points) real_size_ *= v;
  half_size_ = real_size_ / points.back() * (points.back() / 2 + 1);

  std::lock_guard<std::mutex> lock(planner_mutex());
  real_buf_ = fftw_alloc_real(real_size_);
  auto *cbuf = fftw_alloc_complex(half_size_);
  complex_buf_ = cbuf;
  if (!real_buf_ || !cbuf) throw Error(ErrorCode::numeric, "FFT buffer allocation failed");
  // FFTW_ESTIMATE does not time candidate algorithms, so plans are reproducible.
  forward_plan_ = fftw_plan_dft_r2c(static_cast<int>(n.size()), n.data(), real_buf_, cbuf, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r(static_cast<int>(n.size()), n.data(), cbuf, real_buf_, FFTW_ESTIMATE);
  if (!forward_plan_ || !inverse_plan_) throw Error(ErrorCode::numeric, "FFT planning failed");
}

SpectralTransform::~SpectralTransform()
{
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_buf_);
  fftw_free(complex_buf_);
}

void SpectralTransform::forward(std::span<const double> in, std::span<std::complex<double>> out)
{
  std::memcpy(real_buf_, in.data(), real_size_ * sizeof(double));
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  std::memcpy(static_cast<void *>(out.data()), complex_buf_, half_size_ * sizeof(fftw_complex));
}

void SpectralTransform::inverse(std::span<const std::complex<double>> in, std::span<double> out)
{
  std::memcpy(complex_buf_, in.data(), half_size_ * sizeof(fftw_complex));
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double scale = 1.0 / static_cast<double>(real_size_);
  for (std::size_t i = 0; i < real_size_; ++i) out[i] = real_buf_[i] * scale;
}

std::vector<double> half_spectrum_map(const GridSpec &spec,
                                      const std::function<double(const std::array<double, 3> &)> &f)
{
  const auto freqs = fourier_frequencies(spec);
  const std::size_t d = spec.dims();
  std::vector<std::size_t> shape(spec.points());
  shape.back() = shape.back() / 2 + 1;
  std::size_t total = 1;
  for (auto s : shape) total *= s;

  std::vector<double> out(total);
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t j = d; j-- > 0;) {
      idx[j] = rem % shape[j];
      rem /= shape[j];
    }
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < d; ++j) xi[j] = freqs[j][idx[j]];
    out[flat] = f(xi);
  }
  return out;
}

std::vector<double> half_spectrum_multiplicity(const GridSpec &spec)
{
  const std::size_t n = spec.points().back();
  const std::size_t last = n / 2 + 1;
  std::size_t total = spec.size() / n * last;
  std::vector<double> m(total, 2.0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    const std::size_t k = flat % last;
    if (k == 0 || k == n / 2) m[flat] = 1.0;
  }
  return m;
}

std::vector<double> apply_multiplier(const GridSpec &spec, std::span<const double> mult,
                                     std::span<const double> u)
{
  auto &tr = SpectralTransform::for_grid(spec);
  if (mult.size() != tr.half_size() || u.size() != tr.real_size())
    throw Error(ErrorCode::grid_mismatch, "multiplier or input does not match the grid");
  std::vector<std::complex<double>> spec_buf(tr.half_size());
  tr.forward(u, spec_buf);
  for (std::size_t i = 0; i < spec_buf.size(); ++i) spec_buf[i] *= mult[i];
  std::vector<double> out(tr.real_size());
  tr.inverse(spec_buf, out);
  return out;
}

}  // namespace gngs
