#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "zirho/margins.hpp"

namespace zirho {

enum class CopulaFamily {
  independence,
  frechet,          // (1 - alpha) * uv + alpha * min(u, v)
  comonotone,       // M(u, v) = min(u, v)
  countermonotone,  // W(u, v) = max(u + v - 1, 0)
};

struct CopulaSpec {
  CopulaFamily family = CopulaFamily::independence;
  double alpha = 0.0;  // Frechet mixing weight

  static CopulaSpec independence() { return {CopulaFamily::independence, 0.0}; }
  static CopulaSpec frechet(double alpha);
  static CopulaSpec m() { return {CopulaFamily::comonotone, 1.0}; }
  static CopulaSpec w() { return {CopulaFamily::countermonotone, 0.0}; }
};

/// C(u, v) for u, v in [0, 1]. Frechet(0) evaluates bit-identically to
/// independence and Frechet(1) to the comonotone copula.
double copula_cdf(const CopulaSpec& c, double u, double v);

/// Finite bivariate pmf on a nonnegative-integer grid with cached margins.
///
/// The constructor clamps entries in [-1e-12, 0) to zero (floating-point
/// noise from copula rectangle sums), rejects anything more negative as an
/// internal inconsistency, and renormalizes the grid by its total mass.
class JointPmf {
 public:
  JointPmf(std::vector<std::int64_t> x_support,
           std::vector<std::int64_t> y_support, std::vector<double> mass);

  std::size_t nx() const noexcept { return x_support_.size(); }
  std::size_t ny() const noexcept { return y_support_.size(); }
  const std::vector<std::int64_t>& x_support() const noexcept { return x_support_; }
  const std::vector<std::int64_t>& y_support() const noexcept { return y_support_; }
  double mass(std::size_t i, std::size_t j) const noexcept {
    return mass_[i * y_support_.size() + j];
  }

  // Margin cdfs aligned with the grid: x_cum(i) = F(x_support[i]) and
  // x_cum_before(i) = F(x_support[i] - 1).
  double x_cum(std::size_t i) const noexcept { return x_cum_[i]; }
  double x_cum_before(std::size_t i) const noexcept {
    return i == 0 ? 0.0 : x_cum_[i - 1];
  }
  double y_cum(std::size_t j) const noexcept { return y_cum_[j]; }
  double y_cum_before(std::size_t j) const noexcept {
    return j == 0 ? 0.0 : y_cum_[j - 1];
  }

  /// Margins as distributions (zero-mass grid points dropped).
  const DiscretePmf& margin_x() const noexcept { return margin_x_; }
  const DiscretePmf& margin_y() const noexcept { return margin_y_; }

 private:
  std::vector<std::int64_t> x_support_;
  std::vector<std::int64_t> y_support_;
  std::vector<double> mass_;  // row-major, nx * ny
  std::vector<double> x_cum_;
  std::vector<double> y_cum_;
  DiscretePmf margin_x_;
  DiscretePmf margin_y_;
};

/// Couples two margins through a copula by Sklar's theorem: the mass of the
/// cell (x, y) is the copula volume of the rectangle (F(x-1), F(x)] x
/// (G(y-1), G(y)].
JointPmf joint_pmf(const DiscretePmf& f, const DiscretePmf& g,
                   const CopulaSpec& c);

/// Observed nonnegative integer pairs.
struct PairedSample {
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> y;

  std::size_t size() const noexcept { return x.size(); }
};

/// Draws n independent pairs from the Frechet copula C_alpha of (f, g).
///
/// Each pair uses its own counter-derived stream from (seed, pair index),
/// so the result does not depend on evaluation order. The mechanism is the
/// mixture representation of C_alpha: with probability alpha one shared
/// uniform drives both quantiles, otherwise two independent uniforms do.
PairedSample sample_pairs(const DiscretePmf& f, const DiscretePmf& g,
                          double alpha, std::size_t n, std::uint64_t seed);

}  // namespace zirho
