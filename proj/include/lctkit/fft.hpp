#ifndef LCTKIT_FFT_HPP
#define LCTKIT_FFT_HPP

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <complex>
#include <mutex>
#include <span>
#include <vector>

namespace lctkit::detail {

using cplx = std::complex<double>;

// FFTW planning is not thread-safe; execution is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

enum class FftDirection : int { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

/// Unnormalized in-place DFT: forward uses exp(-2 pi i jk/N).
inline void fft_inplace(std::span<cplx> data, FftDirection dir) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf,
                            static_cast<int>(dir), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

inline cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Evaluates S_j = sum_m g_m exp(i*kappa*x_m*y_j) for x_m = x0 + m*dx,
/// y_j = y0 + j*dy, j in [0, out_count), via Bluestein's chirp-z algorithm.
/// Exact up to rounding for any kappa, dx, dy; cost O((N+M) log(N+M)).
inline std::vector<cplx> quadratic_phase_sum(std::span<const cplx> g,
                                             double x0, double dx,
                                             std::size_t out_count, double y0,
                                             double dy, double kappa) {
  const std::size_t n = g.size();
  const std::size_t m = out_count;
  std::vector<cplx> out(m);
  if (n == 0 || m == 0) return out;

  const double beta = kappa * dx * dy;
  const std::size_t len = std::bit_ceil(n + m - 1);

  std::vector<cplx> a(len), b(len);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double x = x0 + kk * dx;
    a[k] = g[k] * unit_phase(kappa * x * y0 + 0.5 * beta * kk * kk);
  }
  for (std::size_t k = 0; k < m; ++k) {
    const double kk = static_cast<double>(k);
    b[k] = unit_phase(-0.5 * beta * kk * kk);
  }
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    b[len - k] = unit_phase(-0.5 * beta * kk * kk);
  }

  fft_inplace(a, FftDirection::forward);
  fft_inplace(b, FftDirection::forward);
  for (std::size_t k = 0; k < len; ++k) a[k] *= b[k];
  fft_inplace(a, FftDirection::backward);

  const double inv_len = 1.0 / static_cast<double>(len);
  for (std::size_t j = 0; j < m; ++j) {
    const double jj = static_cast<double>(j);
    out[j] = a[j] * inv_len *
             unit_phase(0.5 * beta * jj * jj + kappa * x0 * jj * dy);
  }
  return out;
}

}  // namespace lctkit::detail

#endif  // LCTKIT_FFT_HPP
