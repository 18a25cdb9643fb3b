#ifndef LCTKIT_ISODISPERSION_HPP
#define LCTKIT_ISODISPERSION_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "lctkit/lct.hpp"
#include "lctkit/phasespace.hpp"

namespace lctkit::iso {

using lct::LctParams;
using phasespace::PhaseSpaceState;

/// Rotation (cos a, sin a, -sin a, cos a) with epsilon = (alpha - pi/2)/2.
inline LctParams iso_params(double alpha, double delta_p, Units units = {}) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return lct::make_params(c, s, -s, c, delta_p, 0.5 * (alpha - 0.5 * kPi), units);
}

/// Fractional Fourier transform of order alpha in the (dp/dx)-scaled variable.
/// Angles with |sin alpha| < 1e-8 take the scaling path (identity or parity).
inline SampledWave frft(double alpha, const SampledWave& wave, const UniformGrid& out_grid,
                        double delta_p, Units units = {}) {
  return lct::apply_lct(iso_params(alpha, delta_p, units), wave, out_grid);
}

struct BasisImage {
  PhaseSpaceState target;
  cplx phase;
};

/// frft(alpha) maps phi_n(., X, P, dp) to phase * phi_n(., Y, K, dp).
/// At X = P = 0 the phase reduces to +-e^{-i n alpha}.
inline BasisImage transform_basis_state(double alpha, const PhaseSpaceState& state) {
  const auto params = iso_params(alpha, state.delta_p(), state.units());
  const auto frame = lct::transformed_frame(params, state);
  const PhaseSpaceState target(state.n(), frame.Y, frame.K, state.delta_p(), state.units());
  cplx phase;
  if (std::abs(params.b()) < lct::kDegenerateThreshold) {
    const double a = params.a();
    phase = lctkit::detail::unit_phase(params.epsilon() + std::copysign(0.25 * kPi, a));
    if (a < 0.0 && state.n() % 2 == 1) phase = -phase;
  } else {
    phase = lct::coordinate_prefactor(params, state.n());
  }
  phase *= lct::displacement_phase(params, state);
  return {target, phase / std::abs(phase)};
}

struct InvarianceCheck {
  std::string name;
  double residual;
  double tolerance;
  bool passed;
};

struct InvarianceReport {
  std::vector<InvarianceCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

/// Verifies that widths, variances and dispersion eigenvalues of a basis
/// state survive the rotation by alpha.
inline InvarianceReport check_isodispersion_invariance(double alpha,
                                                       const PhaseSpaceState& state) {
  InvarianceReport report;
  auto add = [&](std::string name, double residual, double tol) {
    report.checks.push_back({std::move(name), residual, tol, residual <= tol});
  };
  const Units& units = state.units();
  const auto params = iso_params(alpha, state.delta_p(), units);
  const auto frame = lct::transformed_frame(params, state);
  add("width ratio dy/dx", std::abs(frame.delta_y / state.delta_x() - 1.0), 1e-14);
  add("width ratio dk/dp", std::abs(frame.delta_k / state.delta_p() - 1.0), 1e-14);

  const auto out_grid = lct::image_grid_x(params, state);
  const auto in_grid = lct::source_grid_x(params, state, out_grid);
  const auto image = frft(alpha, phasespace::eval_basis_x(state, in_grid), out_grid,
                          state.delta_p(), units);
  const auto m = phasespace::moments(image, units);
  const double k = 2.0 * state.n() + 1.0;
  const double dx2 = state.delta_x() * state.delta_x();
  const double dp2 = state.delta_p() * state.delta_p();
  add("variance y", std::abs(m.var_x - k * dx2), 1e-6);
  add("variance k", std::abs(m.var_p - k * dp2), 1e-6);

  const double norm = numerics::norm(image);
  auto eigen_residual = [&](phasespace::DispersionKind kind, double lambda) {
    const phasespace::DispersionOperatorSpec op{kind, frame.Y, frame.K, frame.delta_y,
                                                 frame.delta_k};
    auto applied = phasespace::apply_dispersion(op, image, units);
    double acc = 0.0;
    for (std::size_t i = 0; i < applied.size(); ++i) {
      acc += numerics::trapezoid_weight(image.grid(), i) *
             std::norm(applied[i] - lambda * image[i]);
    }
    return std::sqrt(acc) / norm;
  };
  add("sigma_y eigenvalue", eigen_residual(phasespace::DispersionKind::sigma_x, k * dx2), 1e-5);
  add("sigma_k eigenvalue", eigen_residual(phasespace::DispersionKind::sigma_p, k * dp2), 1e-5);
  return report;
}

}  // namespace lctkit::iso

#endif  // LCTKIT_ISODISPERSION_HPP
