#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "lctkit/fft.hpp"
#include "lctkit/hermite.hpp"
#include "lctkit/numerics.hpp"
#include "lctkit/phasespace.hpp"

namespace {

using namespace lctkit;
using numerics::gauss_hermite_nodes;
using numerics::hermite;
using numerics::hermite_weighted;

// H_n(t) = n! sum_m (-1)^m (2t)^(n-2m) / (m! (n-2m)!), in long double.
long double hermite_explicit(int n, long double t) {
  long double sum = 0.0L;
  for (int m = 0; 2 * m <= n; ++m) {
    const long double term = std::pow(-1.0L, m) * std::pow(2.0L * t, n - 2 * m) /
                             (std::tgamma(static_cast<long double>(m + 1)) *
                              std::tgamma(static_cast<long double>(n - 2 * m + 1)));
    sum += term;
  }
  return std::tgamma(static_cast<long double>(n + 1)) * sum;
}

// Gamma(j + 1/2) = integral of t^{2j} e^{-t^2}.
double even_gaussian_moment(int j) { return std::tgamma(j + 0.5); }

SampledWave gaussian(const UniformGrid& g, double center, double width, double freq = 0.0) {
  std::vector<cplx> v(g.count());
  const double norm = 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * width);
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double x = g.point(i) - center;
    v[i] = norm * std::exp(-x * x / (4.0 * width * width)) * std::polar(1.0, freq * g.point(i));
  }
  return SampledWave(g, std::move(v), Representation::coordinate);
}

// ---------------------------------------------------------------------------
// Grids

TEST(UniformGrid, PointsAreStartPlusIndexTimesStep) {
  const UniformGrid g(-1.25, 0.125, 21);
  for (std::size_t i = 0; i < g.count(); ++i) EXPECT_EQ(g.point(i), -1.25 + i * 0.125);
  EXPECT_EQ(g.end(), 1.25);
}

TEST(UniformGrid, RejectsNonPositiveStepAndTinyCount) {
  EXPECT_THROW(UniformGrid(0.0, 0.0, 10), RangeError);
  EXPECT_THROW(UniformGrid(0.0, -1.0, 10), RangeError);
  EXPECT_THROW(UniformGrid(0.0, 1.0, 1), RangeError);
}

TEST(UniformGrid, FromRangeSnapsEndDownToLattice) {
  EXPECT_EQ(UniformGrid::from_range(-8.0, 0.01, 8.0).count(), 1601u);
  EXPECT_EQ(UniformGrid::from_range(0.0, 0.3, 1.0).count(), 4u);
  EXPECT_THROW(UniformGrid::from_range(1.0, 0.1, 0.0), RangeError);
}

TEST(UniformGrid, CenteredGridIsSymmetricWithEvenCount) {
  const auto g = UniformGrid::centered(2.0, 5.0, 0.3, 16);
  EXPECT_EQ(g.count() % 2, 0u);
  EXPECT_LE(g.step(), 0.3);
  EXPECT_NEAR(g.start() + g.end(), 4.0, 1e-12);
}

// ---------------------------------------------------------------------------
// Hermite polynomials

TEST(Hermite, SpecExamples) {
  EXPECT_EQ(hermite(0, 1.7), 1.0);
  EXPECT_EQ(hermite(1, 0.0), 0.0);
  EXPECT_EQ(hermite(2, 1.0), 2.0);
}

TEST(Hermite, MatchesExplicitExpansion) {
  for (int n = 0; n <= 20; ++n) {
    for (double t : {-3.3, -1.0, -0.2, 0.4, 1.9, 4.5}) {
      const double expect = static_cast<double>(hermite_explicit(n, t));
      EXPECT_NEAR(hermite(n, t), expect, 1e-12 * std::max(1.0, std::abs(expect)))
          << "n=" << n << " t=" << t;
    }
  }
}

TEST(Hermite, RecurrenceIdentityHolds) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> order(1, 40);
  std::uniform_real_distribution<double> arg(-6.0, 6.0);
  for (int k = 0; k < 200; ++k) {
    const int n = order(rng);
    const double t = arg(rng);
    const double lhs = hermite(n + 1, t);
    const double rhs = 2.0 * t * hermite(n, t) - 2.0 * n * hermite(n - 1, t);
    const double scale = std::abs(hermite(n + 1, t)) + std::abs(2.0 * t * hermite(n, t)) +
                         std::abs(2.0 * n * hermite(n - 1, t));
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * scale);
  }
}

TEST(Hermite, OrderLimits) {
  EXPECT_THROW(hermite(-1, 0.0), RangeError);
  EXPECT_THROW(hermite(65, 0.0), OrderOverflowError);
  EXPECT_NO_THROW(hermite(80, 0.5, 100));
  try {
    hermite(70, 0.0);
  } catch (const OrderOverflowError& e) {
    EXPECT_EQ(e.order(), 70);
  }
}

TEST(HermiteWeighted, SpecExamples) {
  EXPECT_EQ(hermite_weighted(0, 0.0), 1.0);
  double v = 1.0;
  EXPECT_NO_THROW(v = hermite_weighted(30, 40.0));
  EXPECT_LE(std::abs(v), 1e-300);
}

TEST(HermiteWeighted, MatchesProductOracle) {
  for (int n = 0; n <= 20; ++n) {
    const double norm = std::sqrt(std::ldexp(std::tgamma(n + 1.0), n));
    for (double t = -5.0; t <= 5.0; t += 0.37) {
      const double expect = hermite(n, t) * std::exp(-0.5 * t * t) / norm;
      EXPECT_NEAR(hermite_weighted(n, t), expect, 1e-12 * std::max(std::abs(expect), 1e-3))
          << "n=" << n << " t=" << t;
    }
  }
}

TEST(HermiteWeighted, InvertsToPlainHermite) {
  for (int n = 0; n <= 20; ++n) {
    const double norm = std::sqrt(std::ldexp(std::tgamma(n + 1.0), n));
    for (double t : {-2.5, -0.7, 0.3, 1.1, 3.9}) {
      const double back = hermite_weighted(n, t) * std::exp(0.5 * t * t) * norm;
      const double h = hermite(n, t);
      EXPECT_NEAR(back, h, 1e-12 * std::max(1.0, std::abs(h)));
    }
  }
}

TEST(HermiteWeighted, StaysNormalizedAtHighOrder) {
  // integral of q_n(t)^2 e^{-t^2} dt = sqrt(pi) at any order.
  for (int n : {100, 400, 1000}) {
    const double half = std::sqrt(2.0 * n + 1.0) + 12.0;
    const double h = 0.01;
    double acc = 0.0;
    for (double t = -half; t <= half; t += h) acc += std::pow(hermite_weighted(n, t), 2) * h;
    EXPECT_NEAR(acc, std::sqrt(kPi), 1e-9) << "n=" << n;
  }
}

TEST(HermiteWeighted, BatchMatchesScalar) {
  std::vector<double> all(40);
  for (double t : {-4.0, 0.0, 2.2, 9.0}) {
    numerics::hermite_weighted_all(t, all);
    for (int n = 0; n < 40; ++n) EXPECT_DOUBLE_EQ(all[n], hermite_weighted(n, t));
  }
}

// ---------------------------------------------------------------------------
// Gauss-Hermite

TEST(GaussHermite, OnePointRule) {
  const auto r = gauss_hermite_nodes(1);
  ASSERT_EQ(r.nodes.size(), 1u);
  EXPECT_EQ(r.nodes[0], 0.0);
  EXPECT_DOUBLE_EQ(r.weights[0], std::sqrt(kPi));
}

TEST(GaussHermite, TwoPointClosedForm) {
  const auto r = gauss_hermite_nodes(2);
  EXPECT_NEAR(r.nodes[0], -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.nodes[1], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.weights[0], std::sqrt(kPi) / 2.0, 1e-15);
  EXPECT_NEAR(r.weights[1], std::sqrt(kPi) / 2.0, 1e-15);
  const double second = r.weights[0] * r.nodes[0] * r.nodes[0] + r.weights[1] * r.nodes[1] * r.nodes[1];
  EXPECT_NEAR(second, std::sqrt(kPi) / 2.0, 1e-15);
}

TEST(GaussHermite, WeightSumIsSqrtPi) {
  const auto r = gauss_hermite_nodes(20);
  double s = 0.0;
  for (double w : r.weights) s += w;
  EXPECT_NEAR(s, std::sqrt(kPi), 1e-14);
}

TEST(GaussHermite, IntegratesEvenMomentsExactly) {
  for (int k : {3, 8, 20, 50}) {
    const auto r = gauss_hermite_nodes(k);
    for (int j = 0; 2 * j <= 2 * k - 1; ++j) {
      long double acc = 0.0L;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        acc += static_cast<long double>(r.weights[i]) * std::pow(static_cast<long double>(r.nodes[i]), 2 * j);
      }
      const double expect = even_gaussian_moment(j);
      EXPECT_NEAR(static_cast<double>(acc), expect, 1e-13 * expect) << "k=" << k << " j=" << j;
    }
  }
}

TEST(GaussHermite, NodesAreRootsOfHermite) {
  const auto r = gauss_hermite_nodes(30);
  for (double x : r.nodes) {
    // Root of the weighted function; compare against its local slope scale.
    EXPECT_NEAR(hermite_weighted(30, x), 0.0, 1e-12);
  }
}

TEST(GaussHermite, LargeRuleIsSymmetricAndPositive) {
  const auto r = gauss_hermite_nodes(512);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    // Outermost weights fall below the double range (about e^{-x^2}).
    EXPECT_GE(r.weights[i], 0.0);
    if (std::abs(r.nodes[i]) < 26.0) {
      EXPECT_GT(r.weights[i], 0.0);
    }
    EXPECT_EQ(r.nodes[i], -r.nodes[r.nodes.size() - 1 - i]);
    if (i) {
      EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
    }
  }
}

TEST(GaussHermite, RangeErrors) {
  EXPECT_THROW(gauss_hermite_nodes(0), RangeError);
  EXPECT_THROW(gauss_hermite_nodes(513), RangeError);
}

// ---------------------------------------------------------------------------
// Inner products and fidelity

TEST(TrapezoidInner, GaussianHasUnitNorm) {
  const auto g = UniformGrid::from_range(-20.0, 0.02, 20.0);
  const auto f = gaussian(g, 0.3, 1.2);
  EXPECT_NEAR(numerics::trapezoid_inner(f, f).real(), 1.0, 1e-12);
}

TEST(TrapezoidInner, OrthogonalBasisStates) {
  const auto g = UniformGrid::from_range(-20.0, 0.02, 20.0);
  const phasespace::PhaseSpaceState s0(0, 0.4, 0.9, 0.7);
  const auto f = phasespace::eval_basis_x(s0, g);
  const auto h = phasespace::eval_basis_x(s0.with_order(1), g);
  EXPECT_LT(std::abs(numerics::trapezoid_inner(f, h)), 1e-10);
}

TEST(TrapezoidInner, ZeroWaveGivesExactZero) {
  const auto g = UniformGrid::from_range(-1.0, 0.1, 1.0);
  const auto z = SampledWave::zeros(g, Representation::coordinate);
  const auto f = gaussian(g, 0.0, 0.3);
  EXPECT_EQ(numerics::trapezoid_inner(z, f), cplx(0.0, 0.0));
}

TEST(TrapezoidInner, HalfWeightEndpoints) {
  const UniformGrid g(0.0, 0.5, 3);
  const SampledWave one(g, {1.0, 1.0, 1.0}, Representation::coordinate);
  EXPECT_DOUBLE_EQ(numerics::trapezoid_inner(one, one).real(), 1.0);
}

TEST(TrapezoidInner, RejectsMismatchedDomains) {
  const auto a = SampledWave::zeros(UniformGrid(0.0, 0.1, 10), Representation::coordinate);
  const auto b = SampledWave::zeros(UniformGrid(0.0, 0.1, 11), Representation::coordinate);
  const auto c = SampledWave::zeros(UniformGrid(0.0, 0.1, 10), Representation::momentum);
  EXPECT_THROW(numerics::trapezoid_inner(a, b), GridMismatchError);
  EXPECT_THROW(numerics::trapezoid_inner(a, c), RepresentationError);
}

TEST(Fidelity, PhaseInvariantAndSymmetric) {
  const auto g = UniformGrid::from_range(-15.0, 0.05, 15.0);
  const auto f = gaussian(g, 0.5, 1.0, 0.4);
  const auto h = gaussian(g, -0.2, 0.8, -0.3);
  for (double theta : {0.0, 0.7, 2.0, -3.0}) {
    auto rotated = f;
    for (auto& z : rotated.values()) z *= std::polar(1.0, theta);
    EXPECT_NEAR(numerics::fidelity(f, rotated), 1.0, 1e-14);
    EXPECT_NEAR(numerics::fidelity(rotated, h), numerics::fidelity(f, h), 1e-14);
  }
  EXPECT_NEAR(numerics::fidelity(f, h), numerics::fidelity(h, f), 1e-15);
  EXPECT_NEAR(numerics::fidelity(f, f), 1.0, 1e-15);
}

TEST(Fidelity, OrthogonalStatesAndZeroNorm) {
  const auto g = UniformGrid::from_range(-20.0, 0.02, 20.0);
  const phasespace::PhaseSpaceState s(0, 0.0, 0.0, 0.5);
  EXPECT_LT(numerics::fidelity(phasespace::eval_basis_x(s, g),
                               phasespace::eval_basis_x(s.with_order(1), g)),
            1e-10);
  EXPECT_THROW(numerics::fidelity(SampledWave::zeros(g, Representation::coordinate),
                                  phasespace::eval_basis_x(s, g)),
               ZeroNormError);
}

// ---------------------------------------------------------------------------
// Discrete Fourier transform

TEST(DftUnitary, GaussianWidthIsConjugate) {
  const Units units;
  const double dx = 0.8;
  const auto g = UniformGrid::centered(0.0, 14.0 * dx, 0.05, 512);
  const auto spec = numerics::dft_unitary(gaussian(g, 0.0, dx), units, 0.0);
  const double dp = units.hbar() / (2.0 * dx);
  const double norm = 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * dp);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double p = spec.grid().point(j);
    EXPECT_NEAR(std::abs(spec[j]), norm * std::exp(-p * p / (4.0 * dp * dp)), 1e-12);
  }
  EXPECT_EQ(spec.representation(), Representation::momentum);
}

TEST(DftUnitary, MatchesDirectSum) {
  const Units units(0.7);
  const UniformGrid g(-6.0, 0.05, 240);
  const auto f = gaussian(g, 0.4, 0.9, 1.3);
  const auto spec = numerics::dft_unitary(f, units, 1.1);
  for (std::size_t j = 0; j < spec.size(); j += 7) {
    const double p = spec.grid().point(j);
    cplx acc{};
    for (std::size_t m = 0; m < g.count(); ++m) acc += f[m] * std::polar(1.0, -p * g.point(m) / units.hbar());
    acc *= g.step() / std::sqrt(2.0 * kPi * units.hbar());
    EXPECT_NEAR(std::abs(spec[j] - acc), 0.0, 1e-12);
  }
}

TEST(DftUnitary, BasisStateMapsToMomentumBasisState) {
  const phasespace::PhaseSpaceState s(0, 0.6, -1.2, 0.7);
  const auto x = phasespace::eval_basis_x(s, phasespace::recommended_grid_x(s));
  const auto p = numerics::dft_unitary(x, s.units());
  const auto ref = phasespace::eval_basis_p(s, p.grid());
  for (std::size_t j = 0; j < p.size(); ++j) EXPECT_NEAR(std::abs(p[j] - ref[j]), 0.0, 1e-8);
}

TEST(DftUnitary, PreservesNormAndRoundTrips) {
  const Units units;
  const auto g = UniformGrid::centered(1.0, 15.0, 0.04, 256);
  const auto f = gaussian(g, 1.0, 1.1, -0.8);
  const auto spec = numerics::dft_unitary(f, units);
  EXPECT_NEAR(numerics::norm(spec) / numerics::norm(f), 1.0, 1e-9);
  const auto back = numerics::dft_unitary(spec, units, g.point(g.count() / 2));
  EXPECT_EQ(back.representation(), Representation::coordinate);
  ASSERT_EQ(back.grid().count(), g.count());
  EXPECT_NEAR(back.grid().step(), g.step(), 1e-14);
  EXPECT_GT(numerics::fidelity(SampledWave(g, {back.values().begin(), back.values().end()},
                                           Representation::coordinate),
                               f),
            1.0 - 1e-12);
}

TEST(DftUnitary, ZeroSignalStaysZero) {
  const auto g = UniformGrid::from_range(-1.0, 0.1, 1.0);
  const auto spec = numerics::dft_unitary(SampledWave::zeros(g, Representation::coordinate), Units{});
  for (const auto& z : spec.values()) EXPECT_EQ(z, cplx(0.0, 0.0));
}

TEST(DftUnitary, WarnsWhenSignalDoesNotDecay) {
  const auto g = UniformGrid::from_range(-2.0, 0.05, 2.0);
  const auto spec = numerics::dft_unitary(gaussian(g, 0.0, 1.0), Units{});
  ASSERT_FALSE(spec.meta().warnings.empty());
}

// ---------------------------------------------------------------------------
// Chirp-z sum

TEST(QuadraticPhaseSum, MatchesDirectSummation) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto [n, m] : {std::pair{17, 40}, std::pair{256, 100}, std::pair{512, 512}}) {
    std::vector<cplx> g(n);
    for (auto& z : g) z = {u(rng), u(rng)};
    const double x0 = -2.3, dx = 0.013, y0 = 1.7, dy = 0.021, kappa = -3.1;
    const auto fast = lctkit::detail::quadratic_phase_sum(g, x0, dx, m, y0, dy, kappa);
    for (int j = 0; j < m; ++j) {
      cplx acc{};
      const double y = y0 + j * dy;
      for (int k = 0; k < n; ++k) acc += g[k] * std::polar(1.0, kappa * (x0 + k * dx) * y);
      EXPECT_NEAR(std::abs(fast[j] - acc), 0.0, 1e-10 * std::sqrt(static_cast<double>(n)));
    }
  }
}

TEST(ConjugateMultiplier, MomentumOperatorOnPlaneWaveGaussian) {
  const Units units;
  const auto g = UniformGrid::centered(0.0, 20.0, 0.05, 256);
  const auto f = gaussian(g, 0.0, 1.0, 0.0);
  // p psi = -i hbar psi' = i x/(2 dx^2) psi for a centred Gaussian.
  const auto p_psi = numerics::apply_conjugate_multiplier(f, units, [](double p) { return p; });
  for (std::size_t i = 0; i < g.count(); ++i) {
    const cplx expect = cplx(0.0, g.point(i) / 2.0) * f[i];
    EXPECT_NEAR(std::abs(p_psi[i] - expect), 0.0, 1e-11);
  }
}

}  // namespace
