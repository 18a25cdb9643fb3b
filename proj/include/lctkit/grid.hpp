#ifndef LCTKIT_GRID_HPP
#define LCTKIT_GRID_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lctkit/errors.hpp"

namespace lctkit {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Physical unit system. Only the reduced Planck constant is configurable.
class Units {
 public:
  constexpr Units() = default;
  explicit Units(double hbar) : hbar_(hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
      throw RangeError("hbar must be positive and finite");
    }
  }
  constexpr double hbar() const noexcept { return hbar_; }
  friend bool operator==(const Units&, const Units&) = default;

 private:
  double hbar_ = 1.0;
};

/// Uniform lattice start + i*step, i in [0, count).
class UniformGrid {
 public:
  UniformGrid(double start, double step, std::size_t count)
      : start_(start), step_(step), count_(count) {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start)) {
      throw RangeError("grid step must be positive and finite");
    }
    if (count < 2) throw RangeError("grid needs at least two points");
  }

  /// Grid from an inclusive start and an end that is snapped down onto the
  /// lattice (the `start:step:end` syntax of the command-line tool).
  static UniformGrid from_range(double start, double step, double end) {
    if (!(step > 0.0)) throw RangeError("grid step must be positive");
    if (!(end > start)) throw RangeError("grid end must exceed start");
    const double span = (end - start) / step;
    const auto intervals = static_cast<std::size_t>(std::floor(span + 1e-9));
    return UniformGrid(start, step, intervals + 1);
  }

  /// Smallest grid centred on `center` with half-width at least `half_width`
  /// and spacing at most `max_step`. An even point count keeps the centre
  /// between samples symmetric about `center`.
  static UniformGrid centered(double center, double half_width,
                              double max_step, std::size_t min_count = 2) {
    if (!(half_width > 0.0) || !(max_step > 0.0)) {
      throw RangeError("centered grid needs positive half-width and step");
    }
    auto intervals =
        static_cast<std::size_t>(std::ceil(2.0 * half_width / max_step));
    intervals = std::max(intervals, min_count > 0 ? min_count - 1 : 1);
    if (intervals % 2 == 0) ++intervals;  // even number of points
    const double step = 2.0 * half_width / static_cast<double>(intervals);
    return UniformGrid(center - half_width, step, intervals + 1);
  }

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }
  double point(std::size_t i) const noexcept {
    return start_ + static_cast<double>(i) * step_;
  }
  double end() const noexcept { return point(count_ - 1); }
  double max_abs() const noexcept {
    return std::max(std::abs(start_), std::abs(end()));
  }

  friend bool operator==(const UniformGrid&, const UniformGrid&) = default;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

enum class Representation { coordinate, momentum };

inline const char* to_string(Representation r) {
  return r == Representation::coordinate ? "coordinate" : "momentum";
}

/// Diagnostics attached to computed results instead of failing hard.
struct WaveMeta {
  bool normalized = false;
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

/// Complex samples of a wave function on a uniform grid.
class SampledWave {
 public:
  SampledWave(UniformGrid grid, std::vector<cplx> values, Representation rep)
      : grid_(grid), values_(std::move(values)), rep_(rep) {
    if (values_.size() != grid_.count()) {
      throw GridMismatchError("sample count does not match grid count");
    }
  }

  static SampledWave zeros(UniformGrid grid, Representation rep) {
    return SampledWave(grid, std::vector<cplx>(grid.count()), rep);
  }

  const UniformGrid& grid() const noexcept { return grid_; }
  Representation representation() const noexcept { return rep_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  cplx operator[](std::size_t i) const noexcept { return values_[i]; }
  cplx& operator[](std::size_t i) noexcept { return values_[i]; }

  WaveMeta& meta() noexcept { return meta_; }
  const WaveMeta& meta() const noexcept { return meta_; }

 private:
  UniformGrid grid_;
  std::vector<cplx> values_;
  Representation rep_;
  WaveMeta meta_;
};

}  // namespace lctkit

#endif  // LCTKIT_GRID_HPP
