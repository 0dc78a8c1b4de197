#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "zirho/exact.hpp"

namespace zirho {

/// Average (mid) ranks of a sequence, 1-based; each tie group receives the
/// mean of the positions it occupies, so the ranks sum to n(n+1)/2.
std::vector<double> mid_ranks(std::span<const std::int64_t> values);

/// Empirical pmf of observed nonnegative values (count / n per atom).
DiscretePmf empirical_margin(std::span<const std::int64_t> values);

/// Classical tie-aware Spearman's rho: the Pearson correlation of the two
/// mid-rank sequences. Throws std::runtime_error when either coordinate is
/// constant (degenerate statistic; the caller decides policy).
double spearman_midrank(const PairedSample& s);

/// Partition of sample indices by the zero pattern of the coordinates.
struct ZeroSplit {
  std::vector<std::size_t> a11;  // x > 0, y > 0
  std::vector<std::size_t> b10;  // x > 0, y = 0
  std::vector<std::size_t> b01;  // x = 0, y > 0
  std::vector<std::size_t> z00;  // x = 0, y = 0
};

ZeroSplit split_by_zero(const PairedSample& s);

struct PStarDagger {
  double p1_star = 0.0, p1_dagger = 0.0;
  double p2_star = 0.0, p2_dagger = 0.0;
  std::set<std::string> degenerate;
};

/// Empirical order/tie probabilities between the conditional subsamples:
/// p1* compares x over B10 x A11 (strict >), p1+ the analogous ties;
/// p2*, p2+ use y over B01 x A11. Empty factor sets give 0 with a flag.
PStarDagger estimate_p_star_dagger(const PairedSample& s);

struct RhoAb {
  double rho_s11 = 0.0, rho_s10 = 0.0, rho_s01 = 0.0, rho_s00 = 0.0;
  std::set<std::string> degenerate;
};

/// Conditional Spearman estimates. rho_s11 is the mid-rank Spearman of the
/// A11 subsample. The off-diagonal statistics are three-index sign
/// U-statistics 3 * mean sign((x_i - x_j)(y_i - y_k)) with i in A11, the
/// j index ranging over B10 or A11\{i} and k over B01 or A11\{i} according
/// to which conditional margin fills the comparison slot. Computed by
/// O(n log n) signed rank counting; equals the literal triple enumeration
/// exactly.
RhoAb estimate_rho_ab(const PairedSample& s);

/// The decomposition plug-in estimator: every term of the identity replaced
/// by its empirical counterpart. Invariant under reordering of the sample.
struct EstimateResult {
  double rho_a = 0.0;
  DecompositionSummary components;  // empirical counterparts, incl. flags
  std::size_t n = 0, n11 = 0, n10 = 0, n01 = 0, n00 = 0;
};

EstimateResult estimate_rho_a(const PairedSample& s);

}  // namespace zirho
