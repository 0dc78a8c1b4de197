#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zirho/estimator.hpp"

namespace zirho {

/// Attainable range of Spearman's rho for a pair of zero-inflated discrete
/// margins, together with the intermediate quantities needed to audit the
/// closed-form evaluation.
///
/// p1 and p2 are the total probability masses at zero of the two margins
/// actually consumed by the formulas (for a zero-inflated margin this is
/// inflation + (1 - inflation) * base(0), not the inflation alone).
struct BoundsResult {
  double rho_min = 0.0;
  double rho_max = 0.0;
  double rho_s11_max = 0.0;
  double rho_s11_min = 0.0;
  std::map<std::string, std::int64_t> located_points;
  std::vector<std::string> case_tags;
  std::optional<double> i1, i2;
  std::string method;  // "closed_form" | "oracle" | "empirical"
  double p1 = 0.0, p2 = 0.0;
  std::set<std::string> degenerate;
  // Extra-inflation estimates and provenance note, filled by the empirical
  // path when base information (or an override) is supplied.
  std::optional<double> p1_inflation_hat, p2_inflation_hat;
  std::optional<std::string> caveat;
};

/// Solves the crossing-point systems of the bound formulas on the margin
/// cdfs. p1 and p2 are the zero-mass thresholds the systems are stated in.
/// Upper points: for p1 <= p2 the pair (s~, u~) with
///   F(s~-1) <= p2 < F(s~),  G(u~-1) < F(s~) <= G(u~),
/// for p1 > p2 the mirrored pair (t~, v~) in G, p1. Lower points (present
/// only when p1 + p2 < 1): s~', u~', t~', v~' with
///   F(s~'-1) <= 1-p2 < F(s~'),  G(u~'-1) <= 1-F(s~'-1) < G(u~'),
///   G(t~'-1) <= 1-p1 < G(t~'),  F(v~'-1) <= 1-G(t~'-1) < F(v~').
/// A point whose system runs past the truncated support is omitted.
std::map<std::string, std::int64_t> locate_points(const DiscretePmf& f,
                                                  const DiscretePmf& g,
                                                  double p1, double p2);

/// Extremes of the conditional Spearman's rho on the positive quadrant,
/// attained under the comonotone (max) and countermonotone (min) couplings.
/// A coupling whose positive quadrant is empty reports 0 with a flag; its
/// weight in the bound is zero in that case.
struct Rho11Extremes {
  double max_value = 0.0;
  double min_value = 0.0;
  bool max_degenerate = false;
  bool min_degenerate = false;
};

Rho11Extremes rho11_extremes(const DiscretePmf& f, const DiscretePmf& g);

/// Closed-form sharp bounds evaluated from the margin cdfs at the located
/// crossing points. Must agree with bounds_oracle to within accumulated
/// rounding; the oracle is the normative implementation.
BoundsResult bounds_closed_form(const DiscretePmf& f, const DiscretePmf& g);

/// Normative bounds: Spearman's rho of the comonotone and countermonotone
/// couplings of the margins, evaluated exactly.
BoundsResult bounds_oracle(const DiscretePmf& f, const DiscretePmf& g);

/// Optional knowledge about the un-inflated bases, used to report
/// extra-inflation estimates alongside empirical bounds.
struct InflationHint {
  std::optional<double> base_zero_x, base_zero_y;  // base pmf mass at 0
  std::optional<double> p1_override, p2_override;  // explicit extra inflation
};

/// Plug-in bounds: evaluates the closed forms on the empirical margins of
/// the sample coordinates, with the conditional extremes at their
/// continuous limits +/-1 (estimating the discrete extremes from observed
/// atoms would shrink the interval by the sample's spurious ties). The
/// hint determines the reported inflation estimates
/// (p_hat = (zero-mass-hat - base0) / (1 - base0), clipped to [0, 1]);
/// without one the total empirical zero mass is reported with a caveat.
BoundsResult empirical_bounds(const PairedSample& s,
                              const InflationHint& hint = {});

}  // namespace zirho
