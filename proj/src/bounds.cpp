#include "zirho/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zirho {

namespace {

// Index-based crossing points; size() marks a system that runs past the
// truncated support (possible only for zero-mass corner cases, where the
// affected terms carry an exact factor of zero).
struct UpperPoints {
  std::size_t first = 0;   // crossing of the larger zero mass
  std::size_t second = 0;  // matching point on the other margin
};

UpperPoints upper_points(const DiscretePmf& a, const DiscretePmf& b,
                         double pmax) {
  UpperPoints out;
  out.first = a.first_cum_above(pmax);
  if (out.first >= a.size()) {
    throw std::runtime_error(
        "locate_points: upper crossing not found; margin truncation too "
        "coarse");
  }
  out.second = b.first_cum_at_least(a.cum(out.first));
  if (out.second >= b.size()) {
    throw std::runtime_error(
        "locate_points: upper matching point not found; margin truncation "
        "too coarse");
  }
  return out;
}

struct LowerPoints {
  std::size_t is = 0, iu = 0, it = 0, iv = 0;  // s~', u~', t~', v~'
  bool x_side = false, y_side = false;         // zero-mass side present
};

LowerPoints lower_points(const DiscretePmf& f, const DiscretePmf& g, double zf,
                         double zg) {
  LowerPoints out;
  out.x_side = zg > 0.0;
  out.y_side = zf > 0.0;
  if (out.x_side) {
    out.is = f.first_cum_above(1.0 - zg);
    if (out.is >= f.size()) {
      throw std::runtime_error(
          "locate_points: lower crossing s~' not found; margin truncation "
          "too coarse");
    }
    out.iu = g.first_cum_above(1.0 - f.cum_before(out.is));
  }
  if (out.y_side) {
    out.it = g.first_cum_above(1.0 - zf);
    if (out.it >= g.size()) {
      throw std::runtime_error(
          "locate_points: lower crossing t~' not found; margin truncation "
          "too coarse");
    }
    out.iv = f.first_cum_above(1.0 - g.cum_before(out.it));
  }
  return out;
}

double zero_mass(const DiscretePmf& m) { return m.cdf(0); }

std::vector<std::string> make_case_tags(double zf, double zg) {
  std::vector<std::string> tags;
  tags.push_back(zf <= zg ? "p1<=p2" : "p1>p2");
  tags.push_back(zf + zg >= 1.0 ? "p1+p2>=1" : "p1+p2<1");
  return tags;
}

}  // namespace

std::map<std::string, std::int64_t> locate_points(const DiscretePmf& f,
                                                  const DiscretePmf& g,
                                                  double p1, double p2) {
  if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0)) {
    throw std::invalid_argument("locate_points: p1, p2 must be in [0, 1]");
  }
  std::map<std::string, std::int64_t> pts;
  if (p1 <= p2) {
    const UpperPoints up = upper_points(f, g, p2);
    pts["s_tilde"] = f.support()[up.first];
    pts["u_tilde"] = g.support()[up.second];
  } else {
    const UpperPoints up = upper_points(g, f, p1);
    pts["t_tilde"] = g.support()[up.first];
    pts["v_tilde"] = f.support()[up.second];
  }
  if (p1 + p2 < 1.0) {
    const LowerPoints lp = lower_points(f, g, p1, p2);
    if (lp.x_side) {
      pts["s_tilde_prime"] = f.support()[lp.is];
      if (lp.iu < g.size()) pts["u_tilde_prime"] = g.support()[lp.iu];
    }
    if (lp.y_side) {
      pts["t_tilde_prime"] = g.support()[lp.it];
      if (lp.iv < f.size()) pts["v_tilde_prime"] = f.support()[lp.iv];
    }
  }
  return pts;
}

Rho11Extremes rho11_extremes(const DiscretePmf& f, const DiscretePmf& g) {
  Rho11Extremes out;
  try {
    out.max_value = spearman_exact(condition_positive(joint_pmf(f, g, CopulaSpec::m())));
  } catch (const std::runtime_error&) {
    out.max_degenerate = true;
  }
  try {
    out.min_value = spearman_exact(condition_positive(joint_pmf(f, g, CopulaSpec::w())));
  } catch (const std::runtime_error&) {
    out.min_degenerate = true;
  }
  return out;
}

namespace {

// Upper bound for the branch where `a` is the margin whose zero mass pmax
// dominates:
//   (1-pmax)^3 rho11max + 3 pmax (1-pmax)
//   + 3 (pmax - A(s-1)) [A(s) (pmax - B(u) - B(u-1)) + B(u) B(u-1)].
double upper_value(const DiscretePmf& a, const DiscretePmf& b, double pmax,
                   double rho11_max, const UpperPoints& up) {
  const double as = a.cum(up.first);
  const double as1 = a.cum_before(up.first);
  const double bu = b.cum(up.second);
  const double bu1 = b.cum_before(up.second);
  const double q = 1.0 - pmax;
  return q * q * q * rho11_max + 3.0 * pmax * q +
         3.0 * (pmax - as1) * (as * (pmax - bu - bu1) + bu * bu1);
}

BoundsResult closed_form_at_extremes(const DiscretePmf& f, const DiscretePmf& g,
                                     const Rho11Extremes& ex) {
  BoundsResult r;
  r.method = "closed_form";
  const double zf = zero_mass(f);
  const double zg = zero_mass(g);
  r.p1 = zf;
  r.p2 = zg;
  r.case_tags = make_case_tags(zf, zg);

  if (zf >= 1.0 || zg >= 1.0) {
    // One coordinate is almost surely zero; every comparison ties.
    r.case_tags.push_back("degenerate_margin");
    r.degenerate = {"rho_s11_max", "rho_s11_min"};
    return r;
  }

  r.rho_s11_max = ex.max_value;
  r.rho_s11_min = ex.min_value;
  if (ex.max_degenerate) r.degenerate.insert("rho_s11_max");
  if (ex.min_degenerate) r.degenerate.insert("rho_s11_min");

  if (zf <= zg) {
    const UpperPoints up = upper_points(f, g, zg);
    r.located_points["s_tilde"] = f.support()[up.first];
    r.located_points["u_tilde"] = g.support()[up.second];
    r.rho_max = upper_value(f, g, zg, ex.max_value, up);
  } else {
    const UpperPoints up = upper_points(g, f, zf);
    r.located_points["t_tilde"] = g.support()[up.first];
    r.located_points["v_tilde"] = f.support()[up.second];
    r.rho_max = upper_value(g, f, zf, ex.max_value, up);
  }

  if (zf + zg >= 1.0) {
    // Countermonotone coupling empties the positive quadrant.
    r.rho_min = -3.0 * (1.0 - zf) * (1.0 - zg);
    return r;
  }

  const LowerPoints lp = lower_points(f, g, zf, zg);
  const double w00 = 1.0 - zf - zg;
  double rho_min =
      w00 * w00 * w00 * ex.min_value + 3.0 * w00 * (zf * zg - zf - zg) -
      3.0 * zf * zg;

  // Sentinel indices denote points past the truncated support, where the
  // corresponding cdf values are exactly 1.
  const auto cum_at = [](const DiscretePmf& m, std::size_t i) {
    return i < m.size() ? m.cum(i) : 1.0;
  };
  const auto cum_bef = [](const DiscretePmf& m, std::size_t i) {
    return i < m.size() ? m.cum_before(i) : 1.0;
  };

  double ws = 0.0, wsu = 0.0;  // w(s~', 0), w(s~'-1, u~'-1)
  if (lp.x_side) {
    const double fs = f.cum(lp.is);
    const double fs1 = f.cum_before(lp.is);
    const double gu = cum_at(g, lp.iu);
    const double gu1 = cum_bef(g, lp.iu);
    ws = 1.0 - fs - zg;
    const double ws1 = 1.0 - fs1 - zg;
    wsu = 1.0 - fs1 - gu1;
    const double i2 = std::min(1.0 - zf, gu);
    r.i2 = i2;
    rho_min -= 3.0 * ws *
               (zg * ws1 + (gu1 - zg) * (gu1 - zg) + wsu * (i2 - 2.0 * zg + gu1));
    r.located_points["s_tilde_prime"] = f.support()[lp.is];
    if (lp.iu < g.size()) r.located_points["u_tilde_prime"] = g.support()[lp.iu];
  }
  double wt = 0.0;  // w(0, t~')
  if (lp.y_side) {
    const double gt = g.cum(lp.it);
    const double gt1 = g.cum_before(lp.it);
    const double fv = cum_at(f, lp.iv);
    const double fv1 = cum_bef(f, lp.iv);
    wt = 1.0 - zf - gt;
    const double wt1 = 1.0 - zf - gt1;
    const double wvt = 1.0 - fv1 - gt1;
    const double i1 = std::min(1.0 - zg, fv);
    r.i1 = i1;
    rho_min -= 3.0 * wt *
               (zf * wt1 + (fv1 - zf) * (fv1 - zf) + wvt * (i1 - 2.0 * zf + fv1));
    r.located_points["t_tilde_prime"] = g.support()[lp.it];
    if (lp.iv < f.size()) r.located_points["v_tilde_prime"] = f.support()[lp.iv];
  }
  if (lp.x_side && lp.y_side && lp.iv < f.size() && lp.is == lp.iv) {
    rho_min += 3.0 * wsu * ws * wt;
  }

  r.rho_min = rho_min;
  return r;
}

}  // namespace

BoundsResult bounds_closed_form(const DiscretePmf& f, const DiscretePmf& g) {
  if (f.empty() || g.empty()) {
    throw std::invalid_argument("bounds_closed_form: empty margin");
  }
  return closed_form_at_extremes(f, g, rho11_extremes(f, g));
}

BoundsResult bounds_oracle(const DiscretePmf& f, const DiscretePmf& g) {
  if (f.empty() || g.empty()) {
    throw std::invalid_argument("bounds_oracle: empty margin");
  }
  BoundsResult r;
  r.method = "oracle";
  const double zf = zero_mass(f);
  const double zg = zero_mass(g);
  r.p1 = zf;
  r.p2 = zg;
  r.case_tags = make_case_tags(zf, zg);
  r.rho_max = spearman_exact(joint_pmf(f, g, CopulaSpec::m()));
  r.rho_min = spearman_exact(joint_pmf(f, g, CopulaSpec::w()));
  const Rho11Extremes ex = rho11_extremes(f, g);
  r.rho_s11_max = ex.max_value;
  r.rho_s11_min = ex.min_value;
  if (ex.max_degenerate) r.degenerate.insert("rho_s11_max");
  if (ex.min_degenerate) r.degenerate.insert("rho_s11_min");
  return r;
}

BoundsResult empirical_bounds(const PairedSample& s, const InflationHint& hint) {
  if (s.x.size() != s.y.size()) {
    throw std::invalid_argument("empirical_bounds: coordinate length mismatch");
  }
  if (s.size() < 2) {
    throw std::invalid_argument("empirical_bounds: need at least 2 pairs");
  }
  const DiscretePmf fhat = empirical_margin(s.x);
  const DiscretePmf ghat = empirical_margin(s.y);
  // Plug-in evaluation of the closed forms on the empirical margins, with
  // the conditional extremes at their continuous limits +/-1. Estimating
  // the discrete extremes from the observed support would shrink the
  // interval by the sample's spurious ties; the continuous plug-in keeps
  // the estimated range conservative and matches the reference results.
  Rho11Extremes continuous;
  continuous.max_value = 1.0;
  continuous.min_value = -1.0;
  BoundsResult r = closed_form_at_extremes(fhat, ghat, continuous);
  r.method = "empirical";

  const auto inflation = [](double zero_hat, double base0) {
    if (!(base0 >= 0.0 && base0 < 1.0)) {
      throw std::invalid_argument(
          "empirical_bounds: base mass at zero must be in [0, 1)");
    }
    return std::clamp((zero_hat - base0) / (1.0 - base0), 0.0, 1.0);
  };
  bool fallback = false;
  if (hint.p1_override) {
    r.p1_inflation_hat = *hint.p1_override;
  } else if (hint.base_zero_x) {
    r.p1_inflation_hat = inflation(r.p1, *hint.base_zero_x);
  } else {
    r.p1_inflation_hat = r.p1;
    fallback = true;
  }
  if (hint.p2_override) {
    r.p2_inflation_hat = *hint.p2_override;
  } else if (hint.base_zero_y) {
    r.p2_inflation_hat = inflation(r.p2, *hint.base_zero_y);
  } else {
    r.p2_inflation_hat = r.p2;
    fallback = true;
  }
  if (fallback) {
    r.caveat =
        "inflation estimate equals the total empirical mass at zero; pass "
        "the base distribution or an explicit inflation to separate them";
  }
  return r;
}

}  // namespace zirho
