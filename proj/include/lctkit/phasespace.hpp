#ifndef LCTKIT_PHASESPACE_HPP
#define LCTKIT_PHASESPACE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "lctkit/errors.hpp"
#include "lctkit/grid.hpp"
#include "lctkit/numerics.hpp"

namespace lctkit::phasespace {

using numerics::trapezoid_weight;

/// Label of the basis state |n, X, P, dp>: harmonic Gaussian of order n
/// centred at (X, P) with momentum width dp and coordinate width hbar/(2 dp).
class PhaseSpaceState {
 public:
  PhaseSpaceState(int n, double X, double P, double delta_p, Units units = {})
      : n_(n), X_(X), P_(P), delta_p_(delta_p), units_(units) {
    if (n < 0) throw RangeError("basis order must be nonnegative");
    if (!(delta_p > 0.0) || !std::isfinite(delta_p)) {
      throw RangeError("delta_p must be positive");
    }
  }

  int n() const noexcept { return n_; }
  double X() const noexcept { return X_; }
  double P() const noexcept { return P_; }
  double delta_p() const noexcept { return delta_p_; }
  double delta_x() const noexcept { return units_.hbar() / (2.0 * delta_p_); }
  const Units& units() const noexcept { return units_; }

  PhaseSpaceState with_order(int n) const { return {n, X_, P_, delta_p_, units_}; }
  PhaseSpaceState with_center(double X, double P) const {
    return {n_, X, P, delta_p_, units_};
  }

 private:
  int n_;
  double X_;
  double P_;
  double delta_p_;
  Units units_;
};

/// Means, variances and the two ordered codispersions of a state.
struct MomentSet {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  cplx codisp_xp{0.0, 0.0};
  cplx codisp_px{0.0, 0.0};
  WaveMeta meta;

  double uncertainty_product() const { return var_x * var_p; }
};

/// Phase-space wave function Psi^n(X, P) sampled on an X x P lattice.
struct PhaseSpaceCoefficients {
  int n = 0;
  double delta_p = 1.0;
  UniformGrid X_grid;
  UniformGrid P_grid;
  std::vector<cplx> values;  // row-major, X index outer
  WaveMeta meta;

  PhaseSpaceCoefficients(int n_, double dp, UniformGrid xg, UniformGrid pg)
      : n(n_), delta_p(dp), X_grid(xg), P_grid(pg),
        values(xg.count() * pg.count()) {}

  cplx& at(std::size_t i, std::size_t j) { return values[i * P_grid.count() + j]; }
  cplx at(std::size_t i, std::size_t j) const { return values[i * P_grid.count() + j]; }
};

enum class DispersionKind { sigma_x, sigma_p };

/// Centre and widths of a dispersion operator Sigma_x or Sigma_p.
struct DispersionOperatorSpec {
  DispersionKind kind;
  double center_x;
  double center_p;
  double delta_x;
  double delta_p;

  /// Operator whose eigenstates include `state`; widths satisfy dx*dp = hbar/2.
  static DispersionOperatorSpec for_state(DispersionKind kind, const PhaseSpaceState& s) {
    return {kind, s.X(), s.P(), s.delta_x(), s.delta_p()};
  }

  void validate(const Units& units) const {
    if (!(delta_x > 0.0) || !(delta_p > 0.0)) {
      throw RangeError("dispersion widths must be positive");
    }
    const double target = 0.5 * units.hbar();
    if (std::abs(delta_x * delta_p - target) > 1e-12 * target) {
      throw RangeError("dispersion widths must satisfy delta_x * delta_p = hbar/2");
    }
  }
};

// ---------------------------------------------------------------------------
// Basis functions

/// phi_n(x, X, P, dp): coordinate wave function of |n, X, P, dp>.
inline cplx basis_value_x(const PhaseSpaceState& s, double x) {
  const double dx = s.delta_x();
  const double t = (x - s.X()) / (std::sqrt(2.0) * dx);
  const double amp = numerics::hermite_weighted(s.n(), t) /
                     std::sqrt(std::sqrt(2.0 * kPi) * dx);
  return amp * lctkit::detail::unit_phase(s.P() * x / s.units().hbar());
}

inline cplx minus_i_power(int n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

/// Momentum wave function of |n, X, P, dp>, including (-i)^n and the
/// e^{-iX(p-P)/hbar} displacement phase.
inline cplx basis_value_p(const PhaseSpaceState& s, double p) {
  const double dp = s.delta_p();
  const double t = (p - s.P()) / (std::sqrt(2.0) * dp);
  const double amp = numerics::hermite_weighted(s.n(), t) /
                     std::sqrt(std::sqrt(2.0 * kPi) * dp);
  return minus_i_power(s.n()) * amp *
         lctkit::detail::unit_phase(-s.X() * (p - s.P()) / s.units().hbar());
}

/// Half-width that keeps |phi_n| below ~1e-15 of its peak at the grid ends.
inline double recommended_half_width(int n, double width) {
  return 12.0 * std::sqrt(2.0 * n + 1.0) * width;
}

/// Coordinate grid centred on X that contains the state and resolves its
/// momentum content with a factor-two margin.
inline UniformGrid recommended_grid_x(const PhaseSpaceState& s,
                                      std::size_t min_count = 1024) {
  const double half = recommended_half_width(s.n(), s.delta_x());
  const double p_reach = std::abs(s.P()) + recommended_half_width(s.n(), s.delta_p());
  const double step = 0.5 * kPi * s.units().hbar() / p_reach;
  return UniformGrid::centered(s.X(), half, step, min_count);
}

inline UniformGrid recommended_grid_p(const PhaseSpaceState& s,
                                      std::size_t min_count = 1024) {
  const double half = recommended_half_width(s.n(), s.delta_p());
  const double x_reach = std::abs(s.X()) + recommended_half_width(s.n(), s.delta_x());
  const double step = 0.5 * kPi * s.units().hbar() / x_reach;
  return UniformGrid::centered(s.P(), half, step, min_count);
}

namespace detail {

inline void check_coverage(WaveMeta& meta, const UniformGrid& grid, double center,
                           double width, int n) {
  const double need = 8.0 * std::sqrt(2.0 * n + 1.0) * width;
  if (grid.start() > center - need || grid.end() < center + need) {
    meta.warn("grid does not cover 8*sqrt(2n+1) widths around the state centre");
  }
}

}  // namespace detail

inline SampledWave eval_basis_x(const PhaseSpaceState& s, const UniformGrid& grid) {
  std::vector<cplx> v(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) v[i] = basis_value_x(s, grid.point(i));
  SampledWave w(grid, std::move(v), Representation::coordinate);
  detail::check_coverage(w.meta(), grid, s.X(), s.delta_x(), s.n());
  return w;
}

inline SampledWave eval_basis_p(const PhaseSpaceState& s, const UniformGrid& grid) {
  std::vector<cplx> v(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) v[i] = basis_value_p(s, grid.point(i));
  SampledWave w(grid, std::move(v), Representation::momentum);
  detail::check_coverage(w.meta(), grid, s.P(), s.delta_p(), s.n());
  return w;
}

// ---------------------------------------------------------------------------
// Moments

/// Means and variances from |psi|^2 and |psi~|^2; codispersions by applying
/// the conjugate operator spectrally. Accepts either representation: the
/// conjugate side is always obtained through dft_unitary.
inline MomentSet moments(const SampledWave& input, const Units& units) {
  MomentSet m;
  const double nsq = numerics::norm_squared(input);
  if (nsq == 0.0) throw ZeroNormError("moments of a zero wave");

  SampledWave wave = input;
  if (std::abs(nsq - 1.0) > 1e-6) {
    const double s = 1.0 / std::sqrt(nsq);
    for (auto& z : wave.values()) z *= s;
    m.meta.normalized = true;
  }
  if (!numerics::decays_at_ends(wave)) {
    m.meta.warn("wave does not decay below 1e-12 at the grid ends");
  }

  const bool coord = wave.representation() == Representation::coordinate;
  const auto conj = numerics::dft_unitary(wave, units);
  const SampledWave& xw = coord ? wave : conj;
  const SampledWave& pw = coord ? conj : wave;

  auto first_two = [](const SampledWave& w) {
    double norm = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double wt = trapezoid_weight(w.grid(), i) * std::norm(w[i]);
      norm += wt;
      mean += wt * w.grid().point(i);
    }
    mean /= norm;
    double var = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double d = w.grid().point(i) - mean;
      var += trapezoid_weight(w.grid(), i) * std::norm(w[i]) * d * d;
    }
    return std::pair{mean, var / norm};
  };
  std::tie(m.mean_x, m.var_x) = first_two(xw);
  std::tie(m.mean_p, m.var_p) = first_two(pw);

  // Work in the input representation: multiply by the local variable there and
  // apply the conjugate one through the Fourier pair.
  const double mx = m.mean_x;
  const double mp = m.mean_p;
  const double local_mean = coord ? mx : mp;
  const double conj_mean = coord ? mp : mx;
  auto centered_local = [&](SampledWave w) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= w.grid().point(i) - local_mean;
    return w;
  };
  auto conj_op = [&](const SampledWave& w) {
    return numerics::apply_conjugate_multiplier(
        w, units, [conj_mean](double q) { return q - conj_mean; });
  };

  // local*conj applied to psi, and conj*local.
  const auto conj_psi = conj_op(wave);
  const auto local_conj_psi = centered_local(conj_psi);
  const auto conj_local_psi = conj_op(centered_local(wave));
  const cplx lc = numerics::trapezoid_inner(wave, local_conj_psi);
  const cplx cl = numerics::trapezoid_inner(wave, conj_local_psi);
  // In coordinate representation local = x, conj = p: lc = <(x)(p)>.
  m.codisp_xp = coord ? lc : cl;
  m.codisp_px = coord ? cl : lc;
  return m;
}

/// Closed-form moments of |n, X, P, dp>.
inline MomentSet basis_moments(const PhaseSpaceState& s) {
  MomentSet m;
  const double hbar = s.units().hbar();
  const double k = 2.0 * s.n() + 1.0;
  m.mean_x = s.X();
  m.mean_p = s.P();
  m.var_x = k * s.delta_x() * s.delta_x();
  m.var_p = k * s.delta_p() * s.delta_p();
  m.codisp_xp = {0.0, 0.5 * hbar};
  m.codisp_px = {0.0, -0.5 * hbar};
  return m;
}

// ---------------------------------------------------------------------------
// Analysis and synthesis

/// Psi^n(X_i, P_j) = <n, X_i, P_j, dp | psi> by trapezoid quadrature on the
/// wave's own grid, in whichever representation the wave is given.
inline PhaseSpaceCoefficients analyze(const SampledWave& wave, int n, double delta_p,
                                      const UniformGrid& X_grid, const UniformGrid& P_grid,
                                      const Units& units = {}) {
  const PhaseSpaceState probe(n, 0.0, 0.0, delta_p, units);
  PhaseSpaceCoefficients out(n, delta_p, X_grid, P_grid);
  const auto& g = wave.grid();
  const std::size_t N = g.count();
  const double hbar = units.hbar();
  const std::size_t NX = X_grid.count();
  const std::size_t NP = P_grid.count();
  const double sq = std::sqrt(2.0);

  if (wave.representation() == Representation::coordinate) {
    // conj(phi_n) = h_n(x - X) e^{-iPx/hbar}
    const double dx = probe.delta_x();
    const double norm = 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * dx);
    std::vector<cplx> phase(NP * N);
    for (std::size_t j = 0; j < NP; ++j) {
      for (std::size_t m = 0; m < N; ++m) {
        phase[j * N + m] = lctkit::detail::unit_phase(-P_grid.point(j) * g.point(m) / hbar);
      }
    }
    std::vector<cplx> u(N);
    for (std::size_t i = 0; i < NX; ++i) {
      const double X = X_grid.point(i);
      for (std::size_t m = 0; m < N; ++m) {
        const double t = (g.point(m) - X) / (sq * dx);
        u[m] = trapezoid_weight(g, m) * norm * numerics::hermite_weighted(n, t) * wave[m];
      }
      for (std::size_t j = 0; j < NP; ++j) {
        cplx acc{0.0, 0.0};
        const cplx* ph = &phase[j * N];
        for (std::size_t m = 0; m < N; ++m) acc += u[m] * ph[m];
        out.at(i, j) = acc;
      }
    }
  } else {
    // conj(phi~_n) = conj((-i)^n) h_n(p - P) e^{iX(p-P)/hbar}
    const double dp = delta_p;
    const double norm = 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * dp);
    const cplx pre = std::conj(minus_i_power(n));
    std::vector<cplx> phase(NX * N);
    for (std::size_t i = 0; i < NX; ++i) {
      for (std::size_t m = 0; m < N; ++m) {
        phase[i * N + m] = lctkit::detail::unit_phase(X_grid.point(i) * g.point(m) / hbar);
      }
    }
    std::vector<cplx> u(N);
    for (std::size_t j = 0; j < NP; ++j) {
      const double P = P_grid.point(j);
      for (std::size_t m = 0; m < N; ++m) {
        const double t = (g.point(m) - P) / (sq * dp);
        u[m] = trapezoid_weight(g, m) * norm * numerics::hermite_weighted(n, t) * wave[m];
      }
      for (std::size_t i = 0; i < NX; ++i) {
        cplx acc{0.0, 0.0};
        const cplx* ph = &phase[i * N];
        for (std::size_t m = 0; m < N; ++m) acc += u[m] * ph[m];
        out.at(i, j) = pre * acc *
                       lctkit::detail::unit_phase(-X_grid.point(i) * P / hbar);
      }
    }
  }
  return out;
}

/// Reconstruction psi(x) = sum Psi^n(X,P) phi_n(x,X,P) dX dP / (2 pi hbar)
/// with trapezoid weights on the (X, P) lattice.
inline SampledWave synthesize_over_XP(const PhaseSpaceCoefficients& c,
                                      const UniformGrid& out_grid,
                                      const Units& units = {}) {
  const PhaseSpaceState probe(c.n, 0.0, 0.0, c.delta_p, units);
  const double hbar = units.hbar();
  const double dx = probe.delta_x();
  const double norm = 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * dx);
  const double sq = std::sqrt(2.0);
  const std::size_t NX = c.X_grid.count();
  const std::size_t NP = c.P_grid.count();
  const std::size_t M = out_grid.count();

  std::vector<cplx> phase(NP * M);
  for (std::size_t j = 0; j < NP; ++j) {
    for (std::size_t k = 0; k < M; ++k) {
      phase[j * M + k] = lctkit::detail::unit_phase(c.P_grid.point(j) * out_grid.point(k) / hbar);
    }
  }
  std::vector<cplx> acc(M);
  std::vector<cplx> row(M);
  double peak = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < NX; ++i) {
    std::fill(row.begin(), row.end(), cplx{});
    for (std::size_t j = 0; j < NP; ++j) {
      const cplx coef = trapezoid_weight(c.P_grid, j) * c.at(i, j);
      const double mag = std::abs(c.at(i, j));
      peak = std::max(peak, mag);
      if (i == 0 || i + 1 == NX || j == 0 || j + 1 == NP) edge = std::max(edge, mag);
      if (coef == cplx{}) continue;
      const cplx* ph = &phase[j * M];
      for (std::size_t k = 0; k < M; ++k) row[k] += coef * ph[k];
    }
    const double wx = trapezoid_weight(c.X_grid, i);
    const double X = c.X_grid.point(i);
    for (std::size_t k = 0; k < M; ++k) {
      const double t = (out_grid.point(k) - X) / (sq * dx);
      acc[k] += wx * norm * numerics::hermite_weighted(c.n, t) * row[k];
    }
  }
  const double measure = 1.0 / (2.0 * kPi * hbar);
  for (auto& z : acc) z *= measure;
  SampledWave out(out_grid, std::move(acc), Representation::coordinate);
  if (peak > 0.0 && edge > 1e-6 * peak) {
    out.meta().warn("(X,P) lattice does not cover the coefficient support");
  }
  return out;
}

/// Sum_n c_n phi_n(x, X, P, dp) at a fixed phase-space centre.
inline SampledWave synthesize_over_n(std::vector<std::pair<int, cplx>> coeffs,
                                     double X, double P, double delta_p,
                                     const UniformGrid& out_grid, const Units& units = {}) {
  std::sort(coeffs.begin(), coeffs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    if (coeffs[k].first == coeffs[k - 1].first) {
      throw DuplicateIndexError("duplicate basis order " + std::to_string(coeffs[k].first));
    }
  }
  SampledWave out = SampledWave::zeros(out_grid, Representation::coordinate);
  if (coeffs.empty()) return out;
  if (coeffs.front().first < 0) throw RangeError("basis order must be nonnegative");
  const PhaseSpaceState probe(0, X, P, delta_p, units);
  const double dx = probe.delta_x();
  const double norm = 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * dx);
  const int n_max = coeffs.back().first;
  std::vector<double> h(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t k = 0; k < out_grid.count(); ++k) {
    const double x = out_grid.point(k);
    numerics::hermite_weighted_all((x - X) / (std::sqrt(2.0) * dx), h);
    cplx sum{};
    for (const auto& [n, c] : coeffs) sum += c * h[static_cast<std::size_t>(n)];
    out[k] = sum * norm * lctkit::detail::unit_phase(P * x / units.hbar());
  }
  return out;
}

/// Coefficients <n, X, P, dp | psi> for n = 0..n_max at a single centre.
inline std::vector<std::pair<int, cplx>> project_fixed_center(const SampledWave& wave,
                                                              int n_max, double X, double P,
                                                              double delta_p,
                                                              const Units& units = {}) {
  if (wave.representation() != Representation::coordinate) {
    throw RepresentationError("projection expects a coordinate wave");
  }
  if (n_max < 0) throw RangeError("n_max must be nonnegative");
  const PhaseSpaceState probe(0, X, P, delta_p, units);
  const double dx = probe.delta_x();
  const double norm = 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * dx);
  std::vector<cplx> acc(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> h(acc.size());
  const auto& g = wave.grid();
  for (std::size_t m = 0; m < g.count(); ++m) {
    const double x = g.point(m);
    numerics::hermite_weighted_all((x - X) / (std::sqrt(2.0) * dx), h);
    const cplx f = trapezoid_weight(g, m) * norm * wave[m] *
                   lctkit::detail::unit_phase(-P * x / units.hbar());
    for (std::size_t n = 0; n < h.size(); ++n) acc[n] += h[n] * f;
  }
  std::vector<std::pair<int, cplx>> out;
  out.reserve(acc.size());
  for (std::size_t n = 0; n < acc.size(); ++n) out.emplace_back(static_cast<int>(n), acc[n]);
  return out;
}

// ---------------------------------------------------------------------------
// Dispersion operators

/// Sigma_x psi = 1/2 [(x-X)^2 + (dx/dp)^2 (p-P)^2] psi, Sigma_p = (dp/dx)^2 Sigma_x.
/// (x-X)^2 acts pointwise; (p-P)^2 acts through the discrete Fourier pair.
inline SampledWave apply_dispersion(const DispersionOperatorSpec& op, const SampledWave& wave,
                                    const Units& units = {}) {
  op.validate(units);
  if (wave.representation() != Representation::coordinate) {
    throw RepresentationError("dispersion operators act on coordinate waves");
  }
  const double X = op.center_x;
  const double P = op.center_p;
  auto out = numerics::apply_conjugate_multiplier(
      wave, units, [P](double p) { return (p - P) * (p - P); });
  const double ratio = (op.delta_x / op.delta_p) * (op.delta_x / op.delta_p);
  const double scale = op.kind == DispersionKind::sigma_x ? 1.0 : 1.0 / ratio;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d = wave.grid().point(i) - X;
    out[i] = 0.5 * scale * (d * d * wave[i] + ratio * out[i]);
  }
  if (!numerics::decays_at_ends(wave)) {
    out.meta().warn("wave does not decay below 1e-12 at the grid ends");
  }
  return out;
}

}  // namespace lctkit::phasespace

#endif  // LCTKIT_PHASESPACE_HPP
