#ifndef LCTKIT_VERIFY_HPP
#define LCTKIT_VERIFY_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lctkit/isodispersion.hpp"
#include "lctkit/lct.hpp"
#include "lctkit/numerics.hpp"
#include "lctkit/phasespace.hpp"

namespace lctkit::verify {

using lct::LctParams;
using phasespace::MomentSet;
using phasespace::PhaseSpaceState;

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  /// Multiplies every accuracy tolerance; runtime limits are not scaled.
  double tolerance_scale = 1.0;
  /// Added to d of every random parameter set, bypassing validation.
  double perturb_symplectic = 0.0;
  /// Criterion ids to run; empty runs all.
  std::set<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed deviation (or bound slack)
  double tolerance = 0.0;  // pass threshold on `measured`
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 means unlimited
  std::string detail;
};

namespace detail {

inline double worst(double acc, double v) { return std::isnan(v) ? v : std::max(acc, v); }

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

inline double infidelity(const SampledWave& f, const SampledWave& g) {
  return 1.0 - numerics::fidelity(f, g);
}

inline double max_modulus_gap(const SampledWave& f, const SampledWave& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    m = std::max(m, std::abs(std::abs(f[i]) - std::abs(g[i])));
  }
  return m;
}

inline double phase_distance(cplx u, cplx v) { return std::abs(std::arg(u / v)); }

// Largest componentwise gap between two moment sets.
inline double moment_gap(const MomentSet& u, const MomentSet& v) {
  double g = 0.0;
  g = std::max(g, std::abs(u.mean_x - v.mean_x));
  g = std::max(g, std::abs(u.mean_p - v.mean_p));
  g = std::max(g, std::abs(u.var_x - v.var_x));
  g = std::max(g, std::abs(u.var_p - v.var_p));
  g = std::max(g, std::abs(u.codisp_xp.real() - v.codisp_xp.real()));
  g = std::max(g, std::abs(u.codisp_xp.imag() - v.codisp_xp.imag()));
  g = std::max(g, std::abs(u.codisp_px.real() - v.codisp_px.real()));
  g = std::max(g, std::abs(u.codisp_px.imag() - v.codisp_px.imag()));
  return g;
}

}  // namespace detail

/// Runs the acceptance properties. Criterion 13 audits the moment sets
/// produced by criteria 4 to 9, so it should run after them.
class Verifier {
 public:
  explicit Verifier(VerifyOptions opts = {}) : opts_(std::move(opts)) {}

  std::vector<CriterionResult> run() {
    using Fn = CriterionResult (Verifier::*)();
    const Fn table[] = {&Verifier::orthonormality,    &Verifier::fourier_pairing,
                        &Verifier::basis_moments,     &Verifier::moment_transport,
                        &Verifier::closed_moments,    &Verifier::closed_form_transforms,
                        &Verifier::iso_constraints,   &Verifier::frft_reduction,
                        &Verifier::frft_eigenfunctions, &Verifier::dispersion_eigenvalues,
                        &Verifier::iso_invariance,    &Verifier::resolution_of_identity,
                        &Verifier::uncertainty};
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 13; ++id) {
      if (!opts_.only.empty() && !opts_.only.count(id)) continue;
      const auto t0 = std::chrono::steady_clock::now();
      CriterionResult r;
      try {
        r = (this->*table[id - 1])();
      } catch (const std::exception& e) {
        r.name = "criterion " + std::to_string(id);
        r.passed = false;
        r.measured = std::numeric_limits<double>::quiet_NaN();
        r.detail = std::string("exception: ") + e.what();
      }
      r.id = id;
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (r.time_limit > 0.0 && r.seconds > r.time_limit) {
        r.passed = false;
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("runtime limit exceeded");
      }
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  VerifyOptions opts_;
  std::vector<MomentSet> transported_;  // audited by criterion 13
  std::vector<iso::InvarianceReport> invariance_;
  bool invariance_ready_ = false;

  double tol(double t) const { return t * opts_.tolerance_scale; }
  std::mt19937_64 rng(int id) const { return std::mt19937_64(opts_.seed + 7919u * id); }

  CriterionResult make(const char* name, double measured, double tolerance,
                       double time_limit, std::string detail = {}) const {
    CriterionResult r;
    r.name = name;
    r.measured = measured;
    r.tolerance = tolerance;
    r.passed = measured <= tolerance;  // NaN fails
    r.time_limit = time_limit;
    r.detail = std::move(detail);
    return r;
  }

  LctParams random_params(std::mt19937_64& g, double delta_p, double min_b,
                          double min_c = 0.0) const {
    auto p = lct::random_params(g, delta_p, 2.0, min_b, min_c);
    if (opts_.perturb_symplectic == 0.0) return p;
    return lct::make_params_unchecked(p.a(), p.b(), p.c(), p.d() + opts_.perturb_symplectic,
                                      delta_p, p.epsilon(), p.units());
  }

  // --- 1 -------------------------------------------------------------------
  CriterionResult orthonormality() {
    const PhaseSpaceState base(0, 0.3, -1.1, 0.8);
    const auto rule = numerics::gauss_hermite_nodes(200);
    const double dx = base.delta_x();
    const int nmax = 15;
    // Rows hold e^{t^2/2} phi_n(X + sqrt2 dx t) at each node.
    std::vector<std::vector<cplx>> rows(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
      const auto s = base.with_order(n);
      rows[n].resize(rule.nodes.size());
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        rows[n][i] = phasespace::basis_value_x(s, s.X() + std::sqrt(2.0) * dx * t) *
                     std::exp(0.5 * t * t);
      }
    }
    double err = 0.0;
    for (int m = 0; m <= nmax; ++m) {
      for (int n = 0; n <= nmax; ++n) {
        cplx acc{};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          acc += rule.weights[i] * std::conj(rows[m][i]) * rows[n][i];
        }
        acc *= std::sqrt(2.0) * dx;
        err = detail::worst(err, std::abs(acc - (m == n ? 1.0 : 0.0)));
      }
    }
    return make("basis orthonormality", err, tol(1e-10), 1.0,
                "max |<phi_m,phi_n> - delta_mn|, m,n <= 15, 200-node Gauss-Hermite");
  }

  // --- 2 -------------------------------------------------------------------
  CriterionResult fourier_pairing() {
    double worst = 0.0;
    for (int n : {0, 1, 2, 5}) {
      const PhaseSpaceState s(n, 0.4, -0.7, 0.6);
      const double width = phasespace::recommended_half_width(n, s.delta_x());
      const UniformGrid grid(s.X() - width, 2.0 * width / 2047.0, 2048);
      const auto spec = numerics::dft_unitary(phasespace::eval_basis_x(s, grid), s.units());
      const auto ref = phasespace::eval_basis_p(s, spec.grid());
      worst = detail::worst(worst, detail::infidelity(spec, ref));
    }
    return make("Fourier pairing", worst, tol(1e-8), 1.0,
                "1 - fidelity(dft(phi_n), phi~_n), n in {0,1,2,5}, 2048 points");
  }

  // --- 3 -------------------------------------------------------------------
  CriterionResult basis_moments() {
    double worst = 0.0;
    for (int n : {0, 1, 5}) {
      const PhaseSpaceState s(n, 0.7, -1.3, 0.6);
      const auto m = phasespace::moments(
          phasespace::eval_basis_x(s, phasespace::recommended_grid_x(s)), s.units());
      const auto e = phasespace::basis_moments(s);
      worst = detail::worst(worst, std::abs(m.mean_x - e.mean_x));
      worst = detail::worst(worst, std::abs(m.mean_p - e.mean_p));
      worst = detail::worst(worst, std::abs(m.var_x / e.var_x - 1.0));
      worst = detail::worst(worst, std::abs(m.var_p / e.var_p - 1.0));
      worst = detail::worst(worst, std::abs(m.codisp_xp - e.codisp_xp));
      worst = detail::worst(worst, std::abs(m.codisp_px - e.codisp_px));
    }
    return make("basis-state moments", worst, tol(1e-8), 2.0,
                "means abs, variances rel, codispersions abs; n in {0,1,5}");
  }

  // --- 4 -------------------------------------------------------------------
  CriterionResult moment_transport() {
    auto g = rng(4);
    std::uniform_real_distribution<double> centre(-1.0, 1.0);
    std::uniform_int_distribution<int> order(0, 3);
    double worst = 0.0, residual = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto s = random_params(g, 0.5, 0.1);
      residual = std::max(residual, std::abs(s.residual()));
      const PhaseSpaceState st(order(g), centre(g), centre(g), 0.5);
      const auto out = lct::image_grid_x(s, st);
      const auto in = lct::source_grid_x(s, st, out);
      const auto psi = phasespace::eval_basis_x(st, in);
      const auto predicted = lct::transform_moments(s, phasespace::moments(psi, st.units()));
      const auto measured = phasespace::moments(lct::apply_lct_x(s, psi, out), st.units());
      transported_.push_back(predicted);
      transported_.push_back(measured);
      worst = detail::worst(worst, detail::moment_gap(predicted, measured));
    }
    auto r = make("moment transport", worst, tol(1e-6), 30.0,
                  "20 random symplectic sets, |b| > 0.1; max symplectic residual " +
                      detail::fmt(residual));
    if (residual > lct::kSymplecticTolerance) {
      r.passed = false;
      r.detail += " exceeds 1e-12";
    }
    return r;
  }

  // --- 5 -------------------------------------------------------------------
  CriterionResult closed_moments() {
    auto g = rng(5);
    std::uniform_real_distribution<double> centre(-2.0, 2.0);
    std::uniform_real_distribution<double> width(0.2, 2.0);
    std::uniform_int_distribution<int> order(0, 10);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double dp = width(g);
      const auto s = random_params(g, dp, 0.0);
      const PhaseSpaceState st(order(g), centre(g), centre(g), dp);
      const auto general = lct::transform_moments(s, phasespace::basis_moments(st));
      const auto closed = lct::transformed_basis_moments(s, st);
      transported_.push_back(closed);
      // Rounding scale: the same sums with every term made nonnegative.
      const auto abs_s = lct::make_params_unchecked(std::abs(s.a()), std::abs(s.b()),
                                                    std::abs(s.c()), std::abs(s.d()), dp);
      const PhaseSpaceState abs_st(st.n(), std::abs(st.X()), std::abs(st.P()), dp);
      auto abs_m = phasespace::basis_moments(abs_st);
      abs_m.codisp_px = {0.0, std::abs(abs_m.codisp_px.imag())};
      const auto scale = lct::transform_moments(abs_s, abs_m);
      auto rel = [&](double u, double v, double sc) {
        return std::abs(u - v) / (std::max(sc, std::numeric_limits<double>::min()) * eps);
      };
      worst = detail::worst(worst, rel(general.mean_x, closed.mean_x, scale.mean_x));
      worst = detail::worst(worst, rel(general.mean_p, closed.mean_p, scale.mean_p));
      worst = detail::worst(worst, rel(general.var_x, closed.var_x, scale.var_x));
      worst = detail::worst(worst, rel(general.var_p, closed.var_p, scale.var_p));
      const double cs = std::abs(scale.codisp_xp.real()) + std::abs(scale.codisp_xp.imag());
      worst = detail::worst(worst, rel(general.codisp_xp.real(), closed.codisp_xp.real(), cs));
      worst = detail::worst(worst, rel(general.codisp_xp.imag(), closed.codisp_xp.imag(), cs));
      worst = detail::worst(worst, rel(general.codisp_px.real(), closed.codisp_px.real(), cs));
      worst = detail::worst(worst, rel(general.codisp_px.imag(), closed.codisp_px.imag(), cs));
    }
    return make("phase-space-state moment formulas", worst, tol(16.0), 0.0,
                "gap in units of machine epsilon times the term magnitude");
  }

  // --- 6 -------------------------------------------------------------------
  CriterionResult closed_form_transforms() {
    auto g = rng(6);
    std::uniform_real_distribution<double> centre(-1.0, 1.0);
    double infid = 0.0, modulus = 0.0;
    for (int k = 0; k < 5; ++k) {
      const auto s = random_params(g, 0.5, 0.2, 0.2);
      const double X = centre(g), P = centre(g);
      for (int n = 0; n <= 5; ++n) {
        const PhaseSpaceState st(n, X, P, 0.5);
        transported_.push_back(lct::transformed_basis_moments(s, st));

        const auto out_x = lct::image_grid_x(s, st);
        const auto in_x = lct::source_grid_x(s, st, out_x);
        const auto num_x = lct::apply_lct_x(s, phasespace::eval_basis_x(st, in_x), out_x);
        const auto cf_x = lct::closed_form_transform_x(s, st, out_x);
        infid = detail::worst(infid, detail::infidelity(num_x, cf_x));
        modulus = detail::worst(modulus, detail::max_modulus_gap(num_x, cf_x));

        const auto out_p = lct::image_grid_p(s, st);
        const auto in_p = lct::source_grid_p(s, st, out_p);
        const auto num_p = lct::apply_lct_p(s, phasespace::eval_basis_p(st, in_p), out_p);
        const auto cf_p = lct::closed_form_transform_p(s, st, out_p);
        infid = detail::worst(infid, detail::infidelity(num_p, cf_p));
        modulus = detail::worst(modulus, detail::max_modulus_gap(num_p, cf_p));
      }
    }
    const double worst = std::max(infid, modulus);
    return make("closed form vs integral transform", worst, tol(1e-6), 60.0,
                "1 - fidelity " + detail::fmt(infid) + ", max modulus gap " +
                    detail::fmt(modulus) + "; n <= 5, 5 sets, both sides");
  }

  // --- 7 -------------------------------------------------------------------
  CriterionResult iso_constraints() {
    double worst = 0.0;
    for (int i = 0; i < 256; ++i) {
      const double alpha = -2.0 * kPi + (i + 0.5) * (4.0 * kPi / 256.0);
      const auto s = iso::iso_params(alpha, 0.5);
      worst = detail::worst(worst, std::abs(s.residual()));
      worst = detail::worst(worst, std::abs(s.a() * s.a() + s.b() * s.b() - 1.0));
      worst = detail::worst(worst, std::abs(s.c() * s.c() + s.d() * s.d() - 1.0));
      worst = detail::worst(worst, std::abs(s.a() * s.c() + s.b() * s.d()));
    }
    return make("isodispersion constraint set", worst, tol(1e-14), 0.0,
                "256 angles in (-2pi, 2pi)");
  }

  // --- 8 -------------------------------------------------------------------
  CriterionResult frft_reduction() {
    const double dp = 0.5;
    const Units units;
    const PhaseSpaceState st(2, 0.6, -0.9, dp);

    // alpha = pi/2 against the unitary DFT, compared on the DFT's own lattice.
    const auto quarter = iso::iso_params(0.5 * kPi, dp);
    const double spread = std::sqrt(2.0 * st.n() + 1.0);
    const double rx = quarter.delta_x() / dp;
    const double p_reach = std::abs(st.P()) + 14.0 * spread * dp;
    const double x_half = phasespace::recommended_half_width(st.n(), st.delta_x());
    const double step =
        std::min(0.5 * kPi / p_reach,
                 0.5 * lct::required_step_x(quarter, std::abs(st.X()) + x_half, rx * p_reach));
    const auto in = UniformGrid::centered(st.X(), x_half, step, 1024);
    const auto psi = phasespace::eval_basis_x(st, in);
    const auto spec = numerics::dft_unitary(psi, units, st.P());
    std::size_t j0 = spec.size(), j1 = 0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
      if (std::abs(spec.grid().point(j) - st.P()) <= 12.0 * spread * dp) {
        j0 = std::min(j0, j);
        j1 = std::max(j1, j);
      }
    }
    const std::size_t count = j1 - j0 + 1;
    const UniformGrid window(spec.grid().point(j0), spec.grid().step(), count);
    const UniformGrid y_grid(rx * window.start(), rx * window.step(), count);
    const auto rotated = iso::frft(0.5 * kPi, psi, y_grid, dp, units);
    std::vector<cplx> ref(spec.values().begin() + j0, spec.values().begin() + j0 + count);
    const SampledWave dft_window(window, std::move(ref), Representation::momentum);
    const SampledWave frft_window(window, {rotated.values().begin(), rotated.values().end()},
                                  Representation::momentum);
    const double quarter_infid = detail::infidelity(dft_window, frft_window);
    record_moments(rotated, units);

    // Additivity on seeded angle pairs.
    auto g = rng(8);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    auto usable = [](double a) { return std::abs(std::sin(a)) > 1e-3; };
    double add_infid = 0.0;
    for (int k = 0; k < 10; ++k) {
      double a1, a2;
      do {
        a1 = angle(g);
        a2 = angle(g);
      } while (!usable(a1) || !usable(a2) || !usable(a1 + a2));
      add_infid = detail::worst(add_infid, additivity_gap(st, a1, a2));
    }
    const double measured = std::max(quarter_infid / 1e-8, add_infid / 1e-5);
    return make("FrFT reduction and additivity", measured, tol(1.0), 20.0,
                "pi/2 vs DFT: 1 - fidelity " + detail::fmt(quarter_infid) +
                    " (tol 1e-8); additivity: " + detail::fmt(add_infid) +
                    " (tol 1e-5); measured is the larger ratio");
  }

  void record_moments(const SampledWave& w, const Units& units) {
    transported_.push_back(phasespace::moments(w, units));
  }

  double additivity_gap(const PhaseSpaceState& st, double a1, double a2) {
    const Units units = st.units();
    const double dp = st.delta_p();
    const auto s1 = iso::iso_params(a1, dp);
    const auto s2 = iso::iso_params(a2, dp);
    const auto s12 = iso::iso_params(a1 + a2, dp);
    const auto mid_state = iso::transform_basis_state(a1, st).target;

    const auto final_grid = lct::image_grid_x(s12, st);
    // Intermediate lattice must also resolve the second chirp.
    auto mid = lct::image_grid_x(s1, st);
    const double mid_half = 0.5 * (mid.end() - mid.start());
    const double mid_step = std::min(
        mid.step(),
        0.5 * lct::required_step_x(s2, std::abs(mid_state.X()) + mid_half, final_grid.max_abs()));
    mid = UniformGrid::centered(mid_state.X(), mid_half, mid_step, 256);

    auto in = lct::source_grid_x(s1, st, mid);
    const double in_half = 0.5 * (in.end() - in.start());
    const double in_step = std::min(
        in.step(),
        0.5 * lct::required_step_x(s12, std::abs(st.X()) + in_half, final_grid.max_abs()));
    in = UniformGrid::centered(st.X(), in_half, in_step, 1024);

    const auto psi = phasespace::eval_basis_x(st, in);
    const auto direct = iso::frft(a1 + a2, psi, final_grid, dp, units);
    const auto step1 = iso::frft(a1, psi, mid, dp, units);
    const auto twice = iso::frft(a2, step1, final_grid, dp, units);
    record_moments(direct, units);
    return detail::infidelity(direct, twice);
  }

  // --- 9 -------------------------------------------------------------------
  CriterionResult frft_eigenfunctions() {
    const double dp = 0.5;
    const Units units;
    double infid = 0.0, phase_err = 0.0, convention_gap = 0.0;
    for (double alpha : {0.3, 1.0, 2.5}) {
      const auto s = iso::iso_params(alpha, dp);
      for (int n = 0; n <= 5; ++n) {
        const PhaseSpaceState st(n, 0.0, 0.0, dp);
        // Same lattice in and out: refine until the chirp is resolved.
        auto grid = phasespace::recommended_grid_x(st);
        const double half = 0.5 * (grid.end() - grid.start());
        const double need = 0.5 * lct::required_step_x(s, half, half);
        if (grid.step() > need) grid = UniformGrid::centered(0.0, half, need, 1024);
        const auto psi = phasespace::eval_basis_x(st, grid);
        const auto out = iso::frft(alpha, psi, grid, dp, units);
        infid = detail::worst(infid, detail::infidelity(out, psi));
        const cplx overlap = numerics::trapezoid_inner(psi, out);
        const cplx predicted = iso::transform_basis_state(alpha, st).phase;
        phase_err = detail::worst(phase_err, detail::phase_distance(overlap, predicted));
        convention_gap = detail::worst(
            convention_gap,
            detail::phase_distance(predicted, lctkit::detail::unit_phase(-n * alpha)));
        record_moments(out, units);
      }
    }
    const double measured = std::max(infid / 1e-6, phase_err / 1e-5);
    return make("FrFT eigenfunctions", measured, tol(1.0), 0.0,
                "1 - fidelity " + detail::fmt(infid) + " (tol 1e-6); phase error " +
                    detail::fmt(phase_err) + " rad (tol 1e-5); predicted phase vs e^{-i n alpha}: " +
                    detail::fmt(convention_gap) + " rad");
  }

  // --- 10, 11 --------------------------------------------------------------
  static constexpr double kIsoAngles[3] = {0.7, 2.2, -1.3};

  const std::vector<iso::InvarianceReport>& invariance_reports() {
    if (!invariance_ready_) {
      for (double alpha : kIsoAngles) {
        for (int n = 0; n <= 5; ++n) {
          const PhaseSpaceState st(n, 0.6, -0.4, 0.5);
          invariance_.push_back(iso::check_isodispersion_invariance(alpha, st));
        }
      }
      invariance_ready_ = true;
    }
    return invariance_;
  }

  CriterionResult dispersion_eigenvalues() {
    const Units units;
    double before = 0.0;
    for (int n = 0; n <= 5; ++n) {
      const PhaseSpaceState st(n, 0.6, -0.4, 0.5);
      const auto psi = phasespace::eval_basis_x(st, phasespace::recommended_grid_x(st));
      const double norm = numerics::norm(psi);
      const double k = 2.0 * n + 1.0;
      for (auto kind : {phasespace::DispersionKind::sigma_x, phasespace::DispersionKind::sigma_p}) {
        const auto op = phasespace::DispersionOperatorSpec::for_state(kind, st);
        const double lambda = k * (kind == phasespace::DispersionKind::sigma_x
                                       ? st.delta_x() * st.delta_x()
                                       : st.delta_p() * st.delta_p());
        const auto applied = phasespace::apply_dispersion(op, psi, units);
        double acc = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
          acc += numerics::trapezoid_weight(psi.grid(), i) *
                 std::norm(applied[i] - lambda * psi[i]);
        }
        before = detail::worst(before, std::sqrt(acc) / norm);
      }
    }
    double after = 0.0;
    for (const auto& rep : invariance_reports()) {
      for (const auto& c : rep.checks) {
        if (c.name.find("eigenvalue") != std::string::npos) after = detail::worst(after, c.residual);
      }
    }
    const double worst = std::max(before, after);
    return make("dispersion-operator eigenvalues", worst, tol(1e-5), 0.0,
                "relative residual before " + detail::fmt(before) + ", after rotation " +
                    detail::fmt(after) + "; n <= 5");
  }

  CriterionResult iso_invariance() {
    double widths = 0.0, variances = 0.0;
    for (const auto& rep : invariance_reports()) {
      for (const auto& c : rep.checks) {
        if (c.name.find("width") != std::string::npos) widths = detail::worst(widths, c.residual);
        if (c.name.find("variance") != std::string::npos) {
          variances = detail::worst(variances, c.residual);
        }
      }
    }
    const double measured = std::max(widths / 1e-14, variances / 1e-6);
    return make("isodispersion invariance", measured, tol(1.0), 0.0,
                "width ratios " + detail::fmt(widths) + " (tol 1e-14); variances " +
                    detail::fmt(variances) + " (tol 1e-6); measured is the larger ratio");
  }

  // --- 12 ------------------------------------------------------------------
  CriterionResult resolution_of_identity() {
    const Units units;
    const PhaseSpaceState st(0, 0.7, -0.4, 0.5);
    const auto grid = UniformGrid::from_range(-25.0, 0.05, 25.0);
    const auto psi = phasespace::eval_basis_x(st, grid);
    auto round_trip = [&](std::size_t count) {
      const double xr = 40.0 * st.delta_x();
      const double pr = 40.0 * st.delta_p();
      const UniformGrid xg(-xr, 2.0 * xr / static_cast<double>(count - 1), count);
      const UniformGrid pg(-pr, 2.0 * pr / static_cast<double>(count - 1), count);
      const auto coeffs = phasespace::analyze(psi, 0, st.delta_p(), xg, pg, units);
      return numerics::relative_l2_error(phasespace::synthesize_over_XP(coeffs, grid, units), psi);
    };
    const double e32 = round_trip(32);
    const double e64 = round_trip(64);
    const double e128 = round_trip(128);
    const bool halving = e64 <= 0.5 * e32 && e128 <= 0.5 * e64;
    auto r = make("resolution of identity", e64, tol(1e-3), 30.0,
                  "L2 error 32x32 " + detail::fmt(e32) + ", 64x64 " + detail::fmt(e64) +
                      ", 128x128 " + detail::fmt(e128) + (halving ? "; halving holds" : "; halving fails"));
    r.passed = r.passed && halving;
    return r;
  }

  // --- 13 ------------------------------------------------------------------
  CriterionResult uncertainty() {
    const double bound = 0.25;  // (hbar/2)^2 at hbar = 1
    double slack = 0.0;
    for (const auto& m : transported_) {
      slack = detail::worst(slack, 1.0 - m.uncertainty_product() / bound);
    }
    auto r = make("uncertainty preservation", slack, tol(1e-9), 0.0,
                  std::to_string(transported_.size()) + " moment sets from criteria 4-9");
    if (transported_.empty()) {
      r.passed = false;
      r.detail = "no moment sets recorded; run criteria 4-9 first";
    }
    return r;
  }
};

inline std::vector<CriterionResult> run_all(const VerifyOptions& opts = {}) {
  return Verifier(opts).run();
}

}  // namespace lctkit::verify

#endif  // LCTKIT_VERIFY_HPP
