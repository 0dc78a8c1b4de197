#pragma once

#include <cstdint>
#include <cstddef>
#include <variant>
#include <vector>

namespace zirho {

/// Finite probability mass function on nonnegative integers.
///
/// The support is strictly increasing and probabilities sum to one; the
/// constructor pins the final cumulative value to exactly 1 so that
/// survival probabilities past the support are exactly zero. Distributions
/// truncated from an infinite tail lump the residual mass onto the last
/// support point instead of renormalizing, which keeps cdf values below
/// the truncation point exact. Instances are immutable after construction
/// and safe to share across threads.
class DiscretePmf {
 public:
  /// Empty pmf; stands in for conditional laws of zero-probability events.
  DiscretePmf() = default;

  DiscretePmf(std::vector<std::int64_t> support, std::vector<double> probs,
              double tail_eps = 0.0);

  bool empty() const noexcept { return support_.empty(); }
  std::size_t size() const noexcept { return support_.size(); }
  const std::vector<std::int64_t>& support() const noexcept { return support_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  double tail_eps() const noexcept { return tail_eps_; }

  /// F(x) with the convention F(x) = 0 for x below the support.
  double cdf(std::int64_t x) const noexcept;
  /// 1 - F(x); exactly 0 at and past the last support point.
  double survival(std::int64_t x) const noexcept { return 1.0 - cdf(x); }
  double mass_at(std::int64_t x) const noexcept;

  /// Smallest support value x with F(x) >= u; quantile(0) is the first
  /// support point. Requires u in [0, 1] and a nonempty pmf.
  std::int64_t quantile(double u) const;

  // Cumulative value at support index i; cum_before(i) = F(support[i] - 1).
  double cum(std::size_t i) const noexcept { return cum_[i]; }
  double cum_before(std::size_t i) const noexcept {
    return i == 0 ? 0.0 : cum_[i - 1];
  }

  /// First index i with cum(i) > t, or size() when none.
  std::size_t first_cum_above(double t) const noexcept;
  /// First index i with cum(i) >= t, or size() when none.
  std::size_t first_cum_at_least(double t) const noexcept;

 private:
  std::vector<std::int64_t> support_;
  std::vector<double> probs_;
  std::vector<double> cum_;
  double tail_eps_ = 0.0;
};

struct PoissonSpec {
  double lambda = 1.0;
};

/// Zero-inflated margin: extra probability mass `inflation` at zero on top
/// of a base distribution. The total mass at zero can exceed `inflation`
/// when the base itself has an atom at zero.
struct ZeroInflatedMarginSpec {
  double inflation = 0.0;
  std::variant<PoissonSpec, DiscretePmf> base;
};

/// Builds the pmf of inflation * delta_0 + (1 - inflation) * base, truncated
/// at the smallest point where the base survival falls to eps or below; the
/// residual tail mass is lumped onto that point. Requires 0 < eps < 1e-6.
DiscretePmf build_margin(const ZeroInflatedMarginSpec& spec, double eps = 1e-12);

}  // namespace zirho
