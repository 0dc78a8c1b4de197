// Independent reference implementations used only by the test suites.
//
// Everything here is deliberately written by literal enumeration of the
// defining probabilities or sample index sets, without the cdf double-sum
// and counting shortcuts of the library, so that agreement between the two
// is meaningful evidence of correctness.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zirho/bounds.hpp"
#include "zirho/estimator.hpp"

namespace zirho::testing {

// Spearman's rho by literal enumeration over three independent copies of
// the pair: 3 P((X1-X2)(Y1-Y3) > 0) - 3 P((X1-X2)(Y1-Y3) < 0).
double brute_spearman(const JointPmf& j);

// Every decomposition ingredient by direct enumeration over the grid.
DecompositionSummary brute_decompose(const JointPmf& j);

// Sample statistics by literal loops: counting mid-ranks, O(n^2) order/tie
// probabilities, O(n^3) sign triple sums.
double naive_spearman_midrank(const PairedSample& s);
PStarDagger naive_p_star_dagger(const PairedSample& s);
RhoAb naive_rho_ab(const PairedSample& s);

// Conditional positive-part margins of the comonotone coupling (requires
// F(0) <= G(0)) and of the countermonotone coupling (requires
// F(0) + G(0) < 1), from the crossing-point piecewise closed forms.
struct ConditionalMargins {
  DiscretePmf x10, x11, y01, y11;  // empty when the event has no mass
};
ConditionalMargins comonotone_conditionals(const DiscretePmf& f,
                                           const DiscretePmf& g);
ConditionalMargins countermonotone_conditionals(const DiscretePmf& f,
                                                const DiscretePmf& g);

// Deterministic random inputs for the property suites.
JointPmf random_joint(std::mt19937_64& rng, int max_support);
DiscretePmf random_margin(std::mt19937_64& rng);
PairedSample random_sample(std::mt19937_64& rng, std::size_t max_n);

}  // namespace zirho::testing
