#include "zirho/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace zirho {

namespace {

void validate_sample(const PairedSample& s) {
  if (s.x.size() != s.y.size()) {
    throw std::invalid_argument("PairedSample: coordinate length mismatch");
  }
  if (s.x.empty()) {
    throw std::invalid_argument("PairedSample: empty sample");
  }
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (s.x[i] < 0 || s.y[i] < 0) {
      throw std::invalid_argument("PairedSample: negative entry");
    }
  }
}

// #\{s < v\} - #\{s > v\} over a sorted vector.
std::int64_t signed_count(const std::vector<std::int64_t>& sorted,
                          std::int64_t v) {
  const auto lo = std::lower_bound(sorted.begin(), sorted.end(), v);
  const auto hi = std::upper_bound(lo, sorted.end(), v);
  const std::int64_t less = lo - sorted.begin();
  const std::int64_t greater = sorted.end() - hi;
  return less - greater;
}

struct SortedSplit {
  // A11 subsample sorted lexicographically by (x, y); gives every
  // downstream accumulation a canonical order, so results do not depend on
  // how the input sample was ordered.
  std::vector<std::pair<std::int64_t, std::int64_t>> a11;
  std::vector<std::int64_t> a11_x_sorted, a11_y_sorted;
  std::vector<std::int64_t> b10_x, b01_y;  // sorted
  std::size_t n00 = 0;
};

SortedSplit sorted_split(const PairedSample& s) {
  SortedSplit out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool px = s.x[i] > 0, py = s.y[i] > 0;
    if (px && py) {
      out.a11.emplace_back(s.x[i], s.y[i]);
    } else if (px) {
      out.b10_x.push_back(s.x[i]);
    } else if (py) {
      out.b01_y.push_back(s.y[i]);
    } else {
      ++out.n00;
    }
  }
  std::sort(out.a11.begin(), out.a11.end());
  std::sort(out.b10_x.begin(), out.b10_x.end());
  std::sort(out.b01_y.begin(), out.b01_y.end());
  out.a11_x_sorted.reserve(out.a11.size());
  out.a11_y_sorted.reserve(out.a11.size());
  for (const auto& [x, y] : out.a11) out.a11_x_sorted.push_back(x);
  std::sort(out.a11_x_sorted.begin(), out.a11_x_sorted.end());
  for (const auto& [x, y] : out.a11) out.a11_y_sorted.push_back(y);
  std::sort(out.a11_y_sorted.begin(), out.a11_y_sorted.end());
  return out;
}

DiscretePmf empirical_pmf(std::vector<std::int64_t> sorted_values) {
  if (sorted_values.empty()) return DiscretePmf{};
  const double n = static_cast<double>(sorted_values.size());
  std::vector<std::int64_t> values;
  std::vector<double> probs;
  std::size_t i = 0;
  while (i < sorted_values.size()) {
    std::size_t j = i;
    while (j < sorted_values.size() && sorted_values[j] == sorted_values[i]) ++j;
    values.push_back(sorted_values[i]);
    probs.push_back(static_cast<double>(j - i) / n);
    i = j;
  }
  return DiscretePmf(std::move(values), std::move(probs));
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw std::runtime_error("spearman_midrank: constant coordinate");
  }
  return sab / std::sqrt(saa * sbb);
}

double midrank_spearman_of_pairs(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
  std::vector<std::int64_t> xs, ys;
  xs.reserve(pairs.size());
  ys.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return pearson(mid_ranks(xs), mid_ranks(ys));
}

}  // namespace

DiscretePmf empirical_margin(std::span<const std::int64_t> values) {
  if (values.empty()) {
    throw std::invalid_argument("empirical_margin: empty sequence");
  }
  std::vector<std::int64_t> sorted(values.begin(), values.end());
  for (const std::int64_t v : sorted) {
    if (v < 0) throw std::invalid_argument("empirical_margin: negative value");
  }
  std::sort(sorted.begin(), sorted.end());
  return empirical_pmf(std::move(sorted));
}

std::vector<double> mid_ranks(std::span<const std::int64_t> values) {
  const std::size_t n = values.size();
  if (n == 0) {
    throw std::invalid_argument("mid_ranks: empty sequence");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double avg = static_cast<double>(i + 1 + j) / 2.0;  // ranks i+1 .. j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

double spearman_midrank(const PairedSample& s) {
  validate_sample(s);
  if (s.size() < 2) {
    throw std::invalid_argument("spearman_midrank: need at least 2 pairs");
  }
  return pearson(mid_ranks(s.x), mid_ranks(s.y));
}

ZeroSplit split_by_zero(const PairedSample& s) {
  validate_sample(s);
  ZeroSplit out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool px = s.x[i] > 0, py = s.y[i] > 0;
    if (px && py) {
      out.a11.push_back(i);
    } else if (px) {
      out.b10.push_back(i);
    } else if (py) {
      out.b01.push_back(i);
    } else {
      out.z00.push_back(i);
    }
  }
  return out;
}

PStarDagger estimate_p_star_dagger(const PairedSample& s) {
  validate_sample(s);
  const SortedSplit sp = sorted_split(s);
  PStarDagger out;
  const std::size_t na = sp.a11.size();
  if (na > 0 && !sp.b10_x.empty()) {
    std::int64_t greater = 0, equal = 0;
    for (const std::int64_t xb : sp.b10_x) {
      const auto lo = std::lower_bound(sp.a11_x_sorted.begin(),
                                       sp.a11_x_sorted.end(), xb);
      const auto hi = std::upper_bound(lo, sp.a11_x_sorted.end(), xb);
      greater += lo - sp.a11_x_sorted.begin();
      equal += hi - lo;
    }
    const double denom =
        static_cast<double>(sp.b10_x.size()) * static_cast<double>(na);
    out.p1_star = static_cast<double>(greater) / denom;
    out.p1_dagger = static_cast<double>(equal) / denom;
  } else {
    out.degenerate.insert("p1_star");
    out.degenerate.insert("p1_dagger");
  }
  if (na > 0 && !sp.b01_y.empty()) {
    std::int64_t greater = 0, equal = 0;
    for (const std::int64_t yb : sp.b01_y) {
      const auto lo = std::lower_bound(sp.a11_y_sorted.begin(),
                                       sp.a11_y_sorted.end(), yb);
      const auto hi = std::upper_bound(lo, sp.a11_y_sorted.end(), yb);
      greater += lo - sp.a11_y_sorted.begin();
      equal += hi - lo;
    }
    const double denom =
        static_cast<double>(sp.b01_y.size()) * static_cast<double>(na);
    out.p2_star = static_cast<double>(greater) / denom;
    out.p2_dagger = static_cast<double>(equal) / denom;
  } else {
    out.degenerate.insert("p2_star");
    out.degenerate.insert("p2_dagger");
  }
  return out;
}

RhoAb estimate_rho_ab(const PairedSample& s) {
  validate_sample(s);
  const SortedSplit sp = sorted_split(s);
  RhoAb out;
  const std::size_t na = sp.a11.size();
  const std::size_t nb10 = sp.b10_x.size();
  const std::size_t nb01 = sp.b01_y.size();

  if (na >= 2) {
    try {
      out.rho_s11 = midrank_spearman_of_pairs(sp.a11);
    } catch (const std::runtime_error&) {
      out.degenerate.insert("rho_s11");
    }
  } else {
    out.degenerate.insert("rho_s11");
  }

  // Per-observation signed comparison counts; the i = k term of the inner
  // A11 sums is sign(0) = 0, so no explicit exclusion is needed.
  std::vector<std::int64_t> sxb(na), syb(na), sxa(na), sya(na);
  for (std::size_t i = 0; i < na; ++i) {
    const auto [xi, yi] = sp.a11[i];
    sxb[i] = signed_count(sp.b10_x, xi);
    syb[i] = signed_count(sp.b01_y, yi);
    sxa[i] = signed_count(sp.a11_x_sorted, xi);
    sya[i] = signed_count(sp.a11_y_sorted, yi);
  }

  if (na >= 2 && nb10 >= 1) {
    std::int64_t num = 0;
    for (std::size_t i = 0; i < na; ++i) num += sxb[i] * sya[i];
    out.rho_s10 = 3.0 * static_cast<double>(num) /
                  (static_cast<double>(na) * static_cast<double>(nb10) *
                   static_cast<double>(na - 1));
  } else {
    out.degenerate.insert("rho_s10");
  }
  if (na >= 2 && nb01 >= 1) {
    std::int64_t num = 0;
    for (std::size_t i = 0; i < na; ++i) num += sxa[i] * syb[i];
    out.rho_s01 = 3.0 * static_cast<double>(num) /
                  (static_cast<double>(na) * static_cast<double>(na - 1) *
                   static_cast<double>(nb01));
  } else {
    out.degenerate.insert("rho_s01");
  }
  if (na >= 1 && nb10 >= 1 && nb01 >= 1) {
    std::int64_t num = 0;
    for (std::size_t i = 0; i < na; ++i) num += sxb[i] * syb[i];
    out.rho_s00 = 3.0 * static_cast<double>(num) /
                  (static_cast<double>(na) * static_cast<double>(nb10) *
                   static_cast<double>(nb01));
  } else {
    out.degenerate.insert("rho_s00");
  }
  return out;
}

EstimateResult estimate_rho_a(const PairedSample& s) {
  validate_sample(s);
  if (s.size() < 2) {
    throw std::invalid_argument("estimate_rho_a: need at least 2 pairs");
  }
  const SortedSplit sp = sorted_split(s);
  EstimateResult out;
  out.n = s.size();
  out.n11 = sp.a11.size();
  out.n10 = sp.b10_x.size();
  out.n01 = sp.b01_y.size();
  out.n00 = sp.n00;

  DecompositionSummary& d = out.components;
  const double n = static_cast<double>(out.n);
  d.p11 = static_cast<double>(out.n11) / n;
  d.p10 = static_cast<double>(out.n10) / n;
  d.p01 = static_cast<double>(out.n01) / n;
  d.p00 = static_cast<double>(out.n00) / n;

  d.x10 = empirical_pmf(sp.b10_x);
  d.x11 = empirical_pmf(sp.a11_x_sorted);
  d.y01 = empirical_pmf(sp.b01_y);
  d.y11 = empirical_pmf(sp.a11_y_sorted);

  const PStarDagger ps = estimate_p_star_dagger(s);
  d.p1_star = ps.p1_star;
  d.p1_dagger = ps.p1_dagger;
  d.p2_star = ps.p2_star;
  d.p2_dagger = ps.p2_dagger;

  const RhoAb rab = estimate_rho_ab(s);
  d.rho_s11 = rab.rho_s11;
  d.rho_s10 = rab.rho_s10;
  d.rho_s01 = rab.rho_s01;
  d.rho_s00 = rab.rho_s00;

  d.degenerate = ps.degenerate;
  d.degenerate.insert(rab.degenerate.begin(), rab.degenerate.end());

  d.rho_s_star = d.p11 * d.p11 * d.rho_s11 + d.p11 * d.p10 * d.rho_s10 +
                 d.p11 * d.p01 * d.rho_s01 + d.p01 * d.p10 * d.rho_s00;
  out.rho_a = decomposition_identity(d);
  return out;
}

}  // namespace zirho
