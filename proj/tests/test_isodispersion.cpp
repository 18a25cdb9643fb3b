#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "lctkit/isodispersion.hpp"
#include "lctkit/lct.hpp"
#include "lctkit/numerics.hpp"
#include "lctkit/phasespace.hpp"

namespace {

using namespace lctkit;
using namespace lctkit::iso;

const double kRootHalf = std::sqrt(0.5);  // dx = dp at hbar = 1

// Window [lo, lo + count) of a wave, relabelled to the given representation.
SampledWave window(const SampledWave& w, std::size_t lo, std::size_t count, Representation rep) {
  const UniformGrid g(w.grid().point(lo), w.grid().step(), count);
  std::vector<cplx> v(w.values().begin() + lo, w.values().begin() + lo + count);
  return SampledWave(g, std::move(v), rep);
}

std::pair<std::size_t, std::size_t> window_range(const UniformGrid& g, double center, double half) {
  std::size_t lo = 0;
  while (g.point(lo) < center - half) ++lo;
  std::size_t hi = lo;
  while (hi + 1 < g.count() && g.point(hi + 1) <= center + half) ++hi;
  return {lo, hi - lo + 1};
}

double phase_distance(cplx u, cplx v) { return std::abs(std::arg(u / v)); }

// Same lattice in and out, refined until the chirp of the rotation is resolved.
UniformGrid eigen_grid(double alpha, const PhaseSpaceState& st) {
  auto grid = phasespace::recommended_grid_x(st);
  const double half = 0.5 * (grid.end() - grid.start());
  const double need = 0.5 * lct::required_step_x(iso_params(alpha, st.delta_p()), half, half);
  if (grid.step() > need) grid = UniformGrid::centered(grid.start() + half, half, need, 1024);
  return grid;
}

// ---------------------------------------------------------------------------
// Parameters

TEST(IsoParams, Examples) {
  const auto id = iso_params(0.0, 0.5);
  EXPECT_EQ(id.a(), 1.0);
  EXPECT_EQ(id.b(), 0.0);
  EXPECT_EQ(id.c(), 0.0);
  EXPECT_EQ(id.d(), 1.0);

  const auto q = iso_params(0.5 * kPi, 0.5);
  EXPECT_NEAR(q.a(), 0.0, 1e-16);
  EXPECT_DOUBLE_EQ(q.b(), 1.0);
  EXPECT_DOUBLE_EQ(q.c(), -1.0);
  EXPECT_NEAR(q.d(), 0.0, 1e-16);
  EXPECT_EQ(q.epsilon(), 0.0);
}

TEST(IsoParams, EpsilonRootsTheNormalization) {
  for (double alpha : {0.2, 1.0, 2.0, 3.0}) {
    const auto s = iso_params(alpha, 0.5);
    const cplx e = std::polar(1.0, s.epsilon());
    EXPECT_NEAR(std::abs(e * e - cplx(std::sin(alpha), -std::cos(alpha))), 0.0, 1e-15);
  }
}

TEST(IsoParams, ConstraintsHoldAcrossTwoTurns) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  for (int i = 0; i < 256; ++i) {
    const auto s = iso_params(angle(rng), 0.7);
    EXPECT_LE(std::abs(s.a() * s.d() - s.b() * s.c() - 1.0), 1e-14);
    EXPECT_LE(std::abs(s.a() * s.a() + s.b() * s.b() - 1.0), 1e-14);
    EXPECT_LE(std::abs(s.c() * s.c() + s.d() * s.d() - 1.0), 1e-14);
    EXPECT_LE(std::abs(s.a() * s.c() + s.b() * s.d()), 1e-14);
  }
}

TEST(IsoParams, MomentsKeepBasisVariances) {
  for (double alpha : {0.4, 1.9, -2.6}) {
    for (int n : {0, 3}) {
      const PhaseSpaceState st(n, 0.6, -0.4, 0.8);
      const auto m = lct::transform_moments(iso_params(alpha, 0.8), phasespace::basis_moments(st));
      const double k = 2.0 * n + 1.0;
      EXPECT_NEAR(m.var_x, k * st.delta_x() * st.delta_x(), 1e-14);
      EXPECT_NEAR(m.var_p, k * st.delta_p() * st.delta_p(), 1e-14);
    }
  }
}

// ---------------------------------------------------------------------------
// Fractional Fourier transform

TEST(Frft, QuarterTurnIsUnitaryDft) {
  const PhaseSpaceState st(2, 0.8, -0.6, kRootHalf);
  const auto w = phasespace::eval_basis_x(st, UniformGrid::centered(0.0, 20.0, 0.05, 256));
  const auto spec = numerics::dft_unitary(w, st.units(), 0.0);
  // The full DFT band sits on the chirp limit; compare on a central window.
  const auto [lo, count] = window_range(spec.grid(), 0.0, 15.0);
  const auto ref = window(spec, lo, count, Representation::coordinate);
  const auto got = frft(0.5 * kPi, w, ref.grid(), kRootHalf);
  EXPECT_GE(numerics::fidelity(got, ref), 1.0 - 1e-8);
  // epsilon vanishes at a quarter turn, so the phase agrees too.
  double worst = 0.0;
  for (std::size_t j = 0; j < count; ++j) worst = std::max(worst, std::abs(got[j] - ref[j]));
  EXPECT_LT(worst, 1e-8);
}

TEST(Frft, ZeroAngleIsExactIdentity) {
  const PhaseSpaceState st(3, 0.4, 0.9, kRootHalf);
  const auto w = phasespace::eval_basis_x(st, phasespace::recommended_grid_x(st));
  const auto out = frft(0.0, w, w.grid(), kRootHalf);
  ASSERT_EQ(out.size(), w.size());
  EXPECT_EQ(out.grid().start(), w.grid().start());
  for (std::size_t j = 0; j < w.size(); ++j) EXPECT_NEAR(std::abs(out[j] - w[j]), 0.0, 1e-15);
}

TEST(Frft, HalfTurnIsParity) {
  const PhaseSpaceState st(2, 0.5, 0.3, kRootHalf);
  const auto w = phasespace::eval_basis_x(st, UniformGrid::centered(0.0, 12.0, 0.02, 2));
  const auto out = frft(kPi, w, w.grid(), kRootHalf);
  ASSERT_EQ(out.size(), w.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double y = out.grid().point(j);
    const cplx want = phasespace::basis_value_x(st, -y);
    EXPECT_NEAR(std::abs(out[j] - want), 0.0, 1e-12);
  }
}

TEST(Frft, SmallAngleStaysCloseToInput) {
  const double alpha = 1e-3;
  const PhaseSpaceState st(1, 0.3, 0.2, kRootHalf);
  const auto s = iso_params(alpha, kRootHalf);
  const auto out = UniformGrid::centered(0.3, 7.0, 0.05, 2);
  const double step = 0.5 * lct::required_step_x(s, 8.0, out.max_abs());
  const auto w = phasespace::eval_basis_x(st, UniformGrid::centered(0.3, 7.5, step, 2));
  const auto got = frft(alpha, w, out, kRootHalf);
  EXPECT_GE(numerics::fidelity(got, phasespace::eval_basis_x(st, out)), 1.0 - 1e-4);
}

TEST(Frft, AdditiveAndNormPreserving) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const PhaseSpaceState st(1, 0.5, -0.4, kRootHalf);
  int tried = 0;
  while (tried < 6) {
    const double a1 = angle(rng), a2 = angle(rng);
    if (std::abs(std::sin(a1)) < 0.2 || std::abs(std::sin(a2)) < 0.2 ||
        std::abs(std::sin(a1 + a2)) < 0.2) {
      continue;
    }
    ++tried;
    const auto s1 = iso_params(a1, kRootHalf), s2 = iso_params(a2, kRootHalf);
    const auto s12 = iso_params(a1 + a2, kRootHalf);
    const auto mid_state = transform_basis_state(a1, st).target;
    const auto out = lct::image_grid_x(s12, st);
    const double half = 10.0;
    const double mid_step =
        0.5 * lct::required_step_x(s2, std::abs(mid_state.X()) + half, out.max_abs());
    const auto mid = UniformGrid::centered(mid_state.X(), half, std::min(0.05, mid_step), 2);
    const double in_step = 0.5 * std::min(lct::required_step_x(s1, 0.5 + half, mid.max_abs()),
                                          lct::required_step_x(s12, 0.5 + half, out.max_abs()));
    const auto w = phasespace::eval_basis_x(st, UniformGrid::centered(0.5, half, in_step, 2));

    const auto direct = frft(a1 + a2, w, out, kRootHalf);
    const auto first = frft(a1, w, mid, kRootHalf);
    const auto twice = frft(a2, first, out, kRootHalf);
    EXPECT_GE(numerics::fidelity(direct, twice), 1.0 - 1e-5) << a1 << " " << a2;
    EXPECT_NEAR(numerics::norm(first), 1.0, 1e-7);
    EXPECT_NEAR(numerics::norm(direct), 1.0, 1e-7);
  }
}

TEST(Frft, MatchesRotationThroughGeneralTransform) {
  const double alpha = 0.8;
  const PhaseSpaceState st(2, -0.3, 0.6, 0.5);
  const auto s = lct::make_params(std::cos(alpha), std::sin(alpha), -std::sin(alpha),
                                  std::cos(alpha), 0.5, 0.5 * (alpha - 0.5 * kPi));
  const auto out = lct::image_grid_x(s, st);
  const auto w = phasespace::eval_basis_x(st, lct::source_grid_x(s, st, out));
  const auto got = frft(alpha, w, out, 0.5);
  const auto ref = lct::apply_lct_x(s, w, out);
  for (std::size_t j = 0; j < out.count(); ++j) EXPECT_EQ(got[j], ref[j]);
}

// ---------------------------------------------------------------------------
// Basis-state law

class Eigenfunction : public ::testing::TestWithParam<std::tuple<double, int>> {};

INSTANTIATE_TEST_SUITE_P(AnglesAndOrders, Eigenfunction,
                         ::testing::Combine(::testing::Values(0.3, 1.0, 2.5),
                                            ::testing::Range(0, 6)));

// Centered basis states are FrFT eigenfunctions with eigenvalue e^{-i n alpha}.
TEST_P(Eigenfunction, RecoversEigenphase) {
  const auto [alpha, n] = GetParam();
  const PhaseSpaceState st(n, 0.0, 0.0, 0.5);
  const auto grid = eigen_grid(alpha, st);
  const auto psi = phasespace::eval_basis_x(st, grid);
  const auto out = frft(alpha, psi, grid, 0.5);
  EXPECT_GE(numerics::fidelity(out, psi), 1.0 - 1e-6);
  const cplx overlap = numerics::trapezoid_inner(psi, out);
  EXPECT_LT(phase_distance(overlap, std::polar(1.0, -n * alpha)), 1e-5);

  const auto image = transform_basis_state(alpha, st);
  EXPECT_LT(phase_distance(image.phase, std::polar(1.0, -n * alpha)), 1e-12);
  EXPECT_NEAR(image.target.X(), 0.0, 1e-15);
  EXPECT_NEAR(image.target.P(), 0.0, 1e-15);
}

TEST(TransformBasisState, EigenphaseOnLowerHalfTurn) {
  // sin alpha < 0: the principal root of the normalization flips the sign.
  for (double alpha : {-1.0, 4.0}) {
    for (int n = 0; n <= 3; ++n) {
      const PhaseSpaceState st(n, 0.0, 0.0, 0.5);
      const auto grid = eigen_grid(alpha, st);
      const auto psi = phasespace::eval_basis_x(st, grid);
      const cplx overlap = numerics::trapezoid_inner(psi, frft(alpha, psi, grid, 0.5));
      const cplx predicted = transform_basis_state(alpha, st).phase;
      EXPECT_LT(phase_distance(overlap, predicted), 1e-5) << alpha << " " << n;
      EXPECT_LT(std::min(phase_distance(predicted, std::polar(1.0, -n * alpha)),
                         phase_distance(predicted, -std::polar(1.0, -n * alpha))),
                1e-12);
    }
  }
}

TEST(TransformBasisState, ZeroAngleIsIdentity) {
  const PhaseSpaceState st(4, 1.2, -0.7, 0.6);
  const auto image = transform_basis_state(0.0, st);
  EXPECT_EQ(image.target.n(), 4);
  EXPECT_EQ(image.target.X(), 1.2);
  EXPECT_EQ(image.target.P(), -0.7);
  EXPECT_EQ(image.target.delta_p(), 0.6);
  EXPECT_NEAR(std::abs(image.phase - 1.0), 0.0, 1e-15);
  // Continuous with small positive angles.
  EXPECT_LT(phase_distance(transform_basis_state(1e-7, st).phase, image.phase), 1e-5);
}

TEST(TransformBasisState, TargetRotatesCenterAndKeepsWidth) {
  const PhaseSpaceState st(1, 0.9, -0.2, kRootHalf);  // dx = dp: a plain rotation
  const double alpha = 0.6;
  const auto image = transform_basis_state(alpha, st);
  EXPECT_NEAR(image.target.X(), std::cos(alpha) * 0.9 + std::sin(alpha) * -0.2, 1e-15);
  EXPECT_NEAR(image.target.P(), -std::sin(alpha) * 0.9 + std::cos(alpha) * -0.2, 1e-15);
  EXPECT_EQ(image.target.delta_p(), st.delta_p());
}

class BasisStateImage : public ::testing::TestWithParam<std::tuple<double, int>> {};

INSTANTIATE_TEST_SUITE_P(AnglesAndOrders, BasisStateImage,
                         ::testing::Combine(::testing::Values(0.7, 2.2, -1.3, 3.6),
                                            ::testing::Range(0, 6)));

TEST_P(BasisStateImage, ClosedFormMatchesIntegral) {
  const auto [alpha, n] = GetParam();
  const PhaseSpaceState st(n, 0.8, -0.5, 0.6);
  const auto s = iso_params(alpha, 0.6);
  const auto image = transform_basis_state(alpha, st);
  EXPECT_NEAR(std::abs(image.phase), 1.0, 1e-15);
  const auto out = lct::image_grid_x(s, st);
  const auto got = frft(alpha, phasespace::eval_basis_x(st, lct::source_grid_x(s, st, out)), out, 0.6);
  auto want = phasespace::eval_basis_x(image.target, out);
  for (std::size_t j = 0; j < want.size(); ++j) want[j] *= image.phase;
  EXPECT_GE(numerics::fidelity(got, want), 1.0 - 1e-6);
  EXPECT_LT(phase_distance(numerics::trapezoid_inner(want, got), 1.0), 1e-5);
}

// ---------------------------------------------------------------------------
// Invariance report

class Invariance : public ::testing::TestWithParam<std::tuple<double, int>> {};

INSTANTIATE_TEST_SUITE_P(AnglesAndOrders, Invariance,
                         ::testing::Combine(::testing::Values(0.7, -2.1, 0.0, kPi),
                                            ::testing::Values(0, 2, 5)));

TEST_P(Invariance, AllChecksPass) {
  const auto [alpha, n] = GetParam();
  const auto report = check_isodispersion_invariance(alpha, PhaseSpaceState(n, 0.4, -0.6, 0.5));
  ASSERT_EQ(report.checks.size(), 6u);
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.passed) << c.name << " residual " << c.residual;
    EXPECT_LE(c.residual, c.tolerance);
  }
  EXPECT_TRUE(report.passed());
}

TEST(Invariance, SecondOrderVarianceExample) {
  const PhaseSpaceState st(2, 0.0, 0.0, 0.5);
  const auto s = iso_params(0.7, 0.5);
  const auto out = lct::image_grid_x(s, st);
  const auto img = frft(0.7, phasespace::eval_basis_x(st, lct::source_grid_x(s, st, out)), out, 0.5);
  const auto m = phasespace::moments(img, st.units());
  EXPECT_NEAR(m.var_x, 5.0 * st.delta_x() * st.delta_x(), 1e-6);
  EXPECT_NEAR(m.var_p, 5.0 * st.delta_p() * st.delta_p(), 1e-6);
}

TEST(Invariance, ReportFlagsFailures) {
  InvarianceReport r;
  r.checks.push_back({"ok", 0.0, 1.0, true});
  EXPECT_TRUE(r.passed());
  r.checks.push_back({"bad", 2.0, 1.0, false});
  EXPECT_FALSE(r.passed());
}

}  // namespace
