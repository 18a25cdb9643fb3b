#ifndef LCTKIT_HERMITE_HPP
#define LCTKIT_HERMITE_HPP

#include <Eigen/Eigenvalues>

#include <cmath>
#include <span>
#include <vector>

#include "lctkit/errors.hpp"
#include "lctkit/grid.hpp"

namespace lctkit::numerics {

inline constexpr int kDefaultMaxHermiteOrder = 64;
inline constexpr int kMaxGaussHermiteCount = 512;

/// Physicists' Hermite polynomial H_n(t) by the three-term recurrence.
inline double hermite(int n, double t, int max_order = kDefaultMaxHermiteOrder) {
  if (n < 0) throw RangeError("Hermite order must be nonnegative");
  if (n > max_order) throw OrderOverflowError(n, max_order);
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * t;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * t * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace detail {

// Runs the recurrence for q_k(t) = H_k(t) / sqrt(2^k k!) with rescaling so that
// large orders neither overflow nor underflow. True q_k = mantissa * e^scale.
struct ScaledHermite {
  double q_n = 1.0;       // mantissa of q_n
  double q_nm1 = 0.0;     // mantissa of q_{n-1}
  double sum_sq = 1.0;    // mantissa of sum_{k<=n} q_k^2, scale 2*log_scale
  double log_scale = 0.0;
};

inline ScaledHermite scaled_hermite(int n, double t) {
  constexpr double kBig = 1e100;
  constexpr double kLogBig = 230.25850929940458;  // ln(1e100)
  ScaledHermite s;
  double prev = 0.0;
  double cur = 1.0;
  double sum = 1.0;
  double scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * t * cur -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    sum += cur * cur;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      sum /= kBig * kBig;
      scale += kLogBig;
    }
  }
  s.q_n = cur;
  s.q_nm1 = prev;
  s.sum_sq = sum;
  s.log_scale = scale;
  return s;
}

}  // namespace detail

/// H_n(t) e^{-t^2/2} / sqrt(2^n n!), evaluated without forming H_n or n!.
/// Valid for any order; underflows to zero far outside the oscillatory region.
inline double hermite_weighted(int n, double t) {
  if (n < 0) throw RangeError("Hermite order must be nonnegative");
  const auto s = detail::scaled_hermite(n, t);
  if (s.q_n == 0.0) return 0.0;
  const double log_mag = std::log(std::abs(s.q_n)) + s.log_scale - 0.5 * t * t;
  return std::copysign(std::exp(log_mag), s.q_n);
}

/// Fills out[k] = hermite_weighted(k, t) for k = 0..out.size()-1.
inline void hermite_weighted_all(double t, std::span<double> out) {
  if (out.empty()) return;
  constexpr double kBig = 1e100;
  constexpr double kLogBig = 230.25850929940458;
  double prev = 0.0;
  double cur = 1.0;
  double scale = -0.5 * t * t;
  auto emit = [&](std::size_t k) {
    out[k] = cur == 0.0 ? 0.0
                        : std::copysign(std::exp(std::log(std::abs(cur)) + scale), cur);
  };
  emit(0);
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double next =
        std::sqrt(2.0 / (kk + 1)) * t * cur - std::sqrt(kk / (kk + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      scale += kLogBig;
    }
    emit(k + 1);
  }
}

struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight e^{-t^2}. Nodes start from the
/// Golub-Welsch eigenvalues and are polished by Newton iteration; weights use
/// the Christoffel sum so that tail weights keep full relative accuracy.
inline GaussHermiteRule gauss_hermite_nodes(int count) {
  if (count < 1 || count > kMaxGaussHermiteCount) {
    throw RangeError("Gauss-Hermite count must lie in [1, 512]");
  }
  GaussHermiteRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  if (count == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = std::sqrt(kPi);
    return rule;
  }

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(count);
  Eigen::VectorXd sub(count - 1);
  for (int k = 1; k < count; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& guess = solver.eigenvalues();

  const double sqrt_pi = std::sqrt(kPi);
  for (int i = 0; i < count; ++i) {
    double x = guess[i];
    for (int iter = 0; iter < 8; ++iter) {
      const auto s = detail::scaled_hermite(count, x);
      const double deriv = std::sqrt(2.0 * count) * s.q_nm1 - x * s.q_n;
      const double dx = s.q_n / deriv;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    // Christoffel weight sqrt(pi) / sum_{k<n} q_k(x)^2.
    const auto s = detail::scaled_hermite(count - 1, x);
    const double log_w =
        std::log(sqrt_pi) - std::log(s.sum_sq) - 2.0 * s.log_scale;
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_w);
  }
  // Enforce exact antisymmetry of the nodes.
  for (int i = 0; i < count / 2; ++i) {
    const double x = 0.5 * (rule.nodes[count - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[count - 1 - i]);
    rule.nodes[i] = -x;
    rule.nodes[count - 1 - i] = x;
    rule.weights[i] = rule.weights[count - 1 - i] = w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

}  // namespace lctkit::numerics

#endif  // LCTKIT_HERMITE_HPP
