#pragma once

#include <set>
#include <string>

#include "zirho/copulas.hpp"

namespace zirho {

// Conditioning events with less mass than this are treated as degenerate:
// the affected statistic is reported as 0 with a flag instead of failing,
// because its weight in the decomposition identity is the same tiny mass.
inline constexpr double kDegenerateMass = 1e-14;

/// All ingredients of the zero-inflation decomposition of Spearman's rho
/// for one joint distribution (or, in the estimator, one sample).
///
/// p_ab are the quadrant masses of (1(X>0), 1(Y>0)); x10/x11/y01/y11 the
/// conditional positive-part margins (empty when the conditioning event has
/// no mass); p*_k / p-dagger_k the cross-conditional strict-order and tie
/// probabilities; rho_s_ab the conditional Spearman coefficients. Statistics
/// of zero-probability events are 0 and listed in `degenerate`.
struct DecompositionSummary {
  double p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;
  DiscretePmf x10, x11, y01, y11;
  double p1_star = 0.0, p1_dagger = 0.0;
  double p2_star = 0.0, p2_dagger = 0.0;
  double rho_s11 = 0.0, rho_s10 = 0.0, rho_s01 = 0.0, rho_s00 = 0.0;
  double rho_s_star = 0.0;  // p11^2 rho_s11 + p11 p10 rho_s10
                            // + p11 p01 rho_s01 + p01 p10 rho_s00
  std::set<std::string> degenerate;
};

/// Spearman's rho of a finite joint pmf from the concordance definition,
/// evaluated as the closed double sum
///   3 * sum_{x,y} h(x,y) * [F(x-1)G(y-1) + (1-F(x))(1-G(y))
///                           - F(x-1)(1-G(y)) - (1-F(x))G(y-1)]
/// where F, G are the margins of J and F(-1) = G(-1) = 0.
double spearman_exact(const JointPmf& j);

/// The subgrid x >= 1, y >= 1 renormalized by its mass. Throws when that
/// mass is degenerate (p11 = 0).
JointPmf condition_positive(const JointPmf& j);

/// Exact population decomposition of J at zero: quadrant masses,
/// conditional margins, tie/order probabilities, and conditional rhos.
DecompositionSummary decompose(const JointPmf& j);

/// Evaluates the decomposition identity
///   rho_S = p11 rho_S* + 3 p11 (p10 (1 - 2 p1* - p1+) + p01 (1 - 2 p2* - p2+))
///           + 3 (p00 p11 - p01 p10).
double decomposition_identity(const DecompositionSummary& d);

/// Spearman's rho of the positive-quadrant conditional law against
/// independent comparison margins x2 and y3; shared by the decomposition
/// and the bounds module. Returns 3 (P_c - P_d).
double conditional_rho(const JointPmf& j11, const DiscretePmf& x2,
                       const DiscretePmf& y3);

}  // namespace zirho
