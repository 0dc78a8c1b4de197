#include "zirho/margins.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zirho {

DiscretePmf::DiscretePmf(std::vector<std::int64_t> support,
                         std::vector<double> probs, double tail_eps)
    : support_(std::move(support)),
      probs_(std::move(probs)),
      tail_eps_(tail_eps) {
  if (support_.size() != probs_.size()) {
    throw std::invalid_argument("DiscretePmf: support/probs length mismatch");
  }
  if (support_.empty()) return;
  if (support_.front() < 0) {
    throw std::invalid_argument("DiscretePmf: negative support value");
  }
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (support_[i] <= support_[i - 1]) {
      throw std::invalid_argument(
          "DiscretePmf: support must be strictly increasing");
    }
  }
  cum_.resize(probs_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= 0.0)) {
      throw std::invalid_argument("DiscretePmf: negative probability at index " +
                                  std::to_string(i));
    }
    total += probs_[i];
    cum_[i] = total;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("DiscretePmf: probabilities sum to " +
                                std::to_string(total));
  }
  cum_.back() = 1.0;
}

double DiscretePmf::cdf(std::int64_t x) const noexcept {
  if (support_.empty() || x < support_.front()) return 0.0;
  // Largest support index with value <= x.
  auto it = std::upper_bound(support_.begin(), support_.end(), x);
  return cum_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double DiscretePmf::mass_at(std::int64_t x) const noexcept {
  auto it = std::lower_bound(support_.begin(), support_.end(), x);
  if (it == support_.end() || *it != x) return 0.0;
  return probs_[static_cast<std::size_t>(it - support_.begin())];
}

std::int64_t DiscretePmf::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("quantile: u must be in [0, 1]");
  }
  if (support_.empty()) {
    throw std::logic_error("quantile: empty pmf");
  }
  auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
  // cum_.back() == 1.0, so the search always lands inside the support.
  return support_[static_cast<std::size_t>(it - cum_.begin())];
}

std::size_t DiscretePmf::first_cum_above(double t) const noexcept {
  return static_cast<std::size_t>(
      std::upper_bound(cum_.begin(), cum_.end(), t) - cum_.begin());
}

std::size_t DiscretePmf::first_cum_at_least(double t) const noexcept {
  return static_cast<std::size_t>(
      std::lower_bound(cum_.begin(), cum_.end(), t) - cum_.begin());
}

namespace {

struct TruncatedBase {
  std::vector<std::int64_t> values;
  std::vector<double> probs;  // sums to exactly 1 after lumping
  double lumped = 0.0;
};

TruncatedBase truncate_poisson(double lambda, double eps) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || lambda > 700.0) {
    throw std::invalid_argument(
        "build_margin: Poisson lambda must be in (0, 700]");
  }
  TruncatedBase out;
  // Stable forward recurrence p(k+1) = p(k) * lambda / (k+1) from exp(-lambda).
  double term = std::exp(-lambda);
  double csum = term;
  std::int64_t k = 0;
  out.values.push_back(0);
  out.probs.push_back(term);
  while (1.0 - csum > eps) {
    ++k;
    if (k > 200000) {
      throw std::runtime_error("build_margin: Poisson truncation did not converge");
    }
    term *= lambda / static_cast<double>(k);
    csum += term;
    out.values.push_back(k);
    out.probs.push_back(term);
  }
  out.lumped = 1.0 - csum;
  out.probs.back() += out.lumped;
  return out;
}

TruncatedBase truncate_explicit(const DiscretePmf& base, double eps) {
  if (base.empty()) {
    throw std::invalid_argument("build_margin: empty base pmf");
  }
  TruncatedBase out;
  std::size_t cut = base.first_cum_at_least(1.0 - eps);
  out.values.assign(base.support().begin(),
                    base.support().begin() + static_cast<std::ptrdiff_t>(cut) + 1);
  out.probs.assign(base.probs().begin(),
                   base.probs().begin() + static_cast<std::ptrdiff_t>(cut) + 1);
  out.lumped = 1.0 - base.cum(cut);
  out.probs.back() += out.lumped;
  return out;
}

}  // namespace

DiscretePmf build_margin(const ZeroInflatedMarginSpec& spec, double eps) {
  if (!(eps > 0.0 && eps < 1e-6)) {
    throw std::invalid_argument("build_margin: eps must be in (0, 1e-6)");
  }
  const double p = spec.inflation;
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("build_margin: inflation must be in [0, 1]");
  }
  if (p == 1.0) {
    return DiscretePmf({0}, {1.0}, 0.0);
  }

  TruncatedBase base =
      std::holds_alternative<PoissonSpec>(spec.base)
          ? truncate_poisson(std::get<PoissonSpec>(spec.base).lambda, eps)
          : truncate_explicit(std::get<DiscretePmf>(spec.base), eps);

  std::vector<std::int64_t> values;
  std::vector<double> probs;
  values.reserve(base.values.size() + 1);
  probs.reserve(base.values.size() + 1);
  if (p > 0.0 && base.values.front() != 0) {
    values.push_back(0);
    probs.push_back(p);
  }
  for (std::size_t i = 0; i < base.values.size(); ++i) {
    double q = (1.0 - p) * base.probs[i];
    if (base.values[i] == 0) q += p;
    if (q > 0.0) {
      values.push_back(base.values[i]);
      probs.push_back(q);
    }
  }
  // Fold the floating-point residue of the mixture into the lump point so
  // the stored probabilities sum to one within a final rounding.
  double total = 0.0;
  for (double q : probs) total += q;
  probs.back() += 1.0 - total;

  return DiscretePmf(std::move(values), std::move(probs),
                     std::max(0.0, (1.0 - p) * base.lumped));
}

}  // namespace zirho
