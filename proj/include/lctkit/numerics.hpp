#ifndef LCTKIT_NUMERICS_HPP
#define LCTKIT_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lctkit/errors.hpp"
#include "lctkit/fft.hpp"
#include "lctkit/grid.hpp"
#include "lctkit/hermite.hpp"

namespace lctkit::numerics {

/// Relative amplitude below which a sampled signal counts as decayed.
inline constexpr double kDecayThreshold = 1e-12;

inline double trapezoid_weight(const UniformGrid& g, std::size_t i) {
  return (i == 0 || i + 1 == g.count()) ? 0.5 * g.step() : g.step();
}

inline void require_same_domain(const SampledWave& f, const SampledWave& g) {
  if (!(f.grid() == g.grid())) throw GridMismatchError("waves live on different grids");
  if (f.representation() != g.representation()) {
    throw RepresentationError("waves are in different representations");
  }
}

/// step * sum conj(f_i) g_i with half-weight endpoints.
inline cplx trapezoid_inner(const SampledWave& f, const SampledWave& g) {
  require_same_domain(f, g);
  const auto& grid = f.grid();
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < grid.count(); ++i) {
    acc += trapezoid_weight(grid, i) * std::conj(f[i]) * g[i];
  }
  return acc;
}

inline double norm_squared(const SampledWave& f) {
  const auto& grid = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.count(); ++i) {
    acc += trapezoid_weight(grid, i) * std::norm(f[i]);
  }
  return acc;
}

inline double norm(const SampledWave& f) { return std::sqrt(norm_squared(f)); }

/// |<f,g>| / (|f| |g|); insensitive to a global phase on either argument.
inline double fidelity(const SampledWave& f, const SampledWave& g) {
  require_same_domain(f, g);
  const double nf = norm(f);
  const double ng = norm(g);
  if (nf == 0.0 || ng == 0.0) throw ZeroNormError("fidelity of a zero wave");
  return std::clamp(std::abs(trapezoid_inner(f, g)) / (nf * ng), 0.0, 1.0);
}

/// Relative L2 distance |f - g| / |g|.
inline double relative_l2_error(const SampledWave& f, const SampledWave& g) {
  require_same_domain(f, g);
  double diff = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    diff += trapezoid_weight(f.grid(), i) * std::norm(f[i] - g[i]);
  }
  const double ref = norm_squared(g);
  if (ref == 0.0) throw ZeroNormError("reference wave has zero norm");
  return std::sqrt(diff / ref);
}

inline double peak_amplitude(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

/// True when both end samples are below kDecayThreshold times the peak.
inline bool decays_at_ends(const SampledWave& w) {
  const double peak = peak_amplitude(w.values());
  if (peak == 0.0) return true;
  const double lim = kDecayThreshold * peak;
  return std::abs(w[0]) <= lim && std::abs(w[w.size() - 1]) <= lim;
}

/// Largest |x| over samples whose amplitude exceeds `relative` times the peak.
inline double effective_extent(const SampledWave& w, double relative = 1e-13) {
  const double peak = peak_amplitude(w.values());
  if (peak == 0.0) return 0.0;
  double extent = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) > relative * peak) {
      extent = std::max(extent, std::abs(w.grid().point(i)));
    }
  }
  return extent;
}

/// Conjugate-grid step 2*pi*hbar / (N*dx) for a discrete Fourier pair.
inline double conjugate_step(const UniformGrid& g, const Units& units) {
  return 2.0 * kPi * units.hbar() / (static_cast<double>(g.count()) * g.step());
}

namespace detail {

// out_j = (2 pi hbar)^{-1/2} dx sum_m in_m exp(sign i q_j x_m / hbar),
// q_j = q0 + j dq with dq = conjugate_step. Exact discrete Fourier pair.
inline std::vector<cplx> fourier_to(std::span<const cplx> in, const UniformGrid& from,
                                    double q0, double sign, const Units& units) {
  const std::size_t n = in.size();
  const double hbar = units.hbar();
  const double dx = from.step();
  const double x0 = from.start();
  const double dq = 2.0 * kPi * hbar / (static_cast<double>(n) * dx);
  std::vector<cplx> buf(n);
  for (std::size_t m = 0; m < n; ++m) {
    buf[m] = in[m] * lctkit::detail::unit_phase(sign * q0 * static_cast<double>(m) * dx / hbar);
  }
  lctkit::detail::fft_inplace(buf, sign < 0 ? lctkit::detail::FftDirection::forward
                                            : lctkit::detail::FftDirection::backward);
  const double scale = dx / std::sqrt(2.0 * kPi * hbar);
  for (std::size_t j = 0; j < n; ++j) {
    const double q = q0 + static_cast<double>(j) * dq;
    buf[j] *= scale * lctkit::detail::unit_phase(sign * q * x0 / hbar);
  }
  return buf;
}

inline double centered_start(double center, std::size_t n, double step) {
  return center - static_cast<double>(n / 2) * step;
}

}  // namespace detail

/// Picks the conjugate-band centre at the spectral peak so that the band
/// brackets the signal without wrap-around.
inline double auto_conjugate_center(const SampledWave& wave, const Units& units) {
  const double dq = conjugate_step(wave.grid(), units);
  const double sign = wave.representation() == Representation::coordinate ? -1.0 : 1.0;
  const double q0 = detail::centered_start(0.0, wave.size(), dq);
  const auto spec = detail::fourier_to(wave.values(), wave.grid(), q0, sign, units);
  std::size_t best = wave.size() / 2;
  double best_mag = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (std::abs(spec[j]) > best_mag) {
      best_mag = std::abs(spec[j]);
      best = j;
    }
  }
  return q0 + static_cast<double>(best) * dq;
}

/// hbar-scaled unitary Fourier transform on the conjugate grid. A coordinate
/// wave maps to momentum with kernel e^{-ipx/hbar}; a momentum wave maps back
/// with e^{+ipx/hbar}. The conjugate grid has step 2*pi*hbar/(N*dx) and is
/// centred on `center` (default: the spectral peak).
inline SampledWave dft_unitary(const SampledWave& wave, const Units& units,
                               std::optional<double> center = std::nullopt) {
  const double dq = conjugate_step(wave.grid(), units);
  const double c = center ? *center : auto_conjugate_center(wave, units);
  const double q0 = detail::centered_start(c, wave.size(), dq);
  const bool to_momentum = wave.representation() == Representation::coordinate;
  auto values = detail::fourier_to(wave.values(), wave.grid(), q0,
                                   to_momentum ? -1.0 : 1.0, units);
  SampledWave out(UniformGrid(q0, dq, wave.size()), std::move(values),
                  to_momentum ? Representation::momentum : Representation::coordinate);
  out.meta() = wave.meta();
  if (!decays_at_ends(wave)) {
    out.meta().warn("input does not decay below 1e-12 at the grid ends");
  }
  return out;
}

/// Applies f(q) for the conjugate variable spectrally and returns to the
/// original grid: f(p) on a coordinate wave, f(x) on a momentum wave.
inline SampledWave apply_conjugate_multiplier(const SampledWave& wave, const Units& units,
                                              const std::function<double(double)>& f) {
  const auto spec = dft_unitary(wave, units);
  std::vector<cplx> scaled(spec.values().begin(), spec.values().end());
  for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] *= f(spec.grid().point(j));
  const bool back_to_coordinate = wave.representation() == Representation::coordinate;
  auto values = detail::fourier_to(scaled, spec.grid(), wave.grid().start(),
                                   back_to_coordinate ? 1.0 : -1.0, units);
  SampledWave out(wave.grid(), std::move(values), wave.representation());
  out.meta() = wave.meta();
  return out;
}

}  // namespace lctkit::numerics

#endif  // LCTKIT_NUMERICS_HPP
