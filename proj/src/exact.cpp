#include "zirho/exact.hpp"

#include <stdexcept>
#include <vector>

namespace zirho {

double spearman_exact(const JointPmf& j) {
  double pc = 0.0, pd = 0.0;
  const std::size_t nx = j.nx(), ny = j.ny();
  for (std::size_t a = 0; a < nx; ++a) {
    const double fl = j.x_cum_before(a);
    const double fs = 1.0 - j.x_cum(a);
    for (std::size_t b = 0; b < ny; ++b) {
      const double h = j.mass(a, b);
      if (h == 0.0) continue;
      const double gl = j.y_cum_before(b);
      const double gs = 1.0 - j.y_cum(b);
      pc += h * (fl * gl + fs * gs);
      pd += h * (fl * gs + fs * gl);
    }
  }
  return 3.0 * (pc - pd);
}

namespace {

DiscretePmf normalized_pmf(const std::vector<std::int64_t>& values,
                           const std::vector<double>& weights, double total) {
  std::vector<std::int64_t> v;
  std::vector<double> p;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] > 0.0) {
      v.push_back(values[i]);
      p.push_back(weights[i] / total);
    }
  }
  return DiscretePmf(std::move(v), std::move(p));
}

// P(A > B) and P(A = B) for independent A ~ a, B ~ b by exact double sums.
struct OrderProbs {
  double greater = 0.0;
  double equal = 0.0;
};

OrderProbs order_probs(const DiscretePmf& a, const DiscretePmf& b) {
  OrderProbs out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t v = a.support()[i];
    out.greater += a.probs()[i] * b.cdf(v - 1);
    out.equal += a.probs()[i] * b.mass_at(v);
  }
  return out;
}

}  // namespace

double conditional_rho(const JointPmf& j11, const DiscretePmf& x2,
                       const DiscretePmf& y3) {
  double pc = 0.0, pd = 0.0;
  for (std::size_t a = 0; a < j11.nx(); ++a) {
    const std::int64_t x = j11.x_support()[a];
    const double xl = x2.cdf(x - 1);
    const double xg = x2.survival(x);
    for (std::size_t b = 0; b < j11.ny(); ++b) {
      const double h = j11.mass(a, b);
      if (h == 0.0) continue;
      const std::int64_t y = j11.y_support()[b];
      const double yl = y3.cdf(y - 1);
      const double yg = y3.survival(y);
      pc += h * (xl * yl + xg * yg);
      pd += h * (xl * yg + xg * yl);
    }
  }
  return 3.0 * (pc - pd);
}

JointPmf condition_positive(const JointPmf& j) {
  const std::size_t ix = j.x_support().front() == 0 ? 1 : 0;
  const std::size_t iy = j.y_support().front() == 0 ? 1 : 0;
  if (ix == 0 && iy == 0) return j;
  if (ix >= j.nx() || iy >= j.ny()) {
    throw std::runtime_error("condition_positive: no positive support");
  }
  double p11 = 0.0;
  for (std::size_t a = ix; a < j.nx(); ++a) {
    for (std::size_t b = iy; b < j.ny(); ++b) p11 += j.mass(a, b);
  }
  if (p11 <= kDegenerateMass) {
    throw std::runtime_error(
        "condition_positive: positive quadrant has no mass");
  }
  std::vector<std::int64_t> xs(j.x_support().begin() + static_cast<std::ptrdiff_t>(ix),
                               j.x_support().end());
  std::vector<std::int64_t> ys(j.y_support().begin() + static_cast<std::ptrdiff_t>(iy),
                               j.y_support().end());
  std::vector<double> mass(xs.size() * ys.size());
  for (std::size_t a = ix; a < j.nx(); ++a) {
    for (std::size_t b = iy; b < j.ny(); ++b) {
      mass[(a - ix) * ys.size() + (b - iy)] = j.mass(a, b) / p11;
    }
  }
  return JointPmf(std::move(xs), std::move(ys), std::move(mass));
}

DecompositionSummary decompose(const JointPmf& j) {
  DecompositionSummary d;
  const bool has_x0 = j.x_support().front() == 0;
  const bool has_y0 = j.y_support().front() == 0;
  const std::size_t ix = has_x0 ? 1 : 0;
  const std::size_t iy = has_y0 ? 1 : 0;
  const std::size_t nx = j.nx(), ny = j.ny();

  d.p00 = (has_x0 && has_y0) ? j.mass(0, 0) : 0.0;

  std::vector<double> wx10, wx11, wy01, wy11;
  std::vector<std::int64_t> vx(j.x_support().begin() + static_cast<std::ptrdiff_t>(ix),
                               j.x_support().end());
  std::vector<std::int64_t> vy(j.y_support().begin() + static_cast<std::ptrdiff_t>(iy),
                               j.y_support().end());
  wx10.assign(vx.size(), 0.0);
  wx11.assign(vx.size(), 0.0);
  wy01.assign(vy.size(), 0.0);
  wy11.assign(vy.size(), 0.0);

  for (std::size_t a = ix; a < nx; ++a) {
    if (has_y0) {
      const double m = j.mass(a, 0);
      d.p10 += m;
      wx10[a - ix] += m;
    }
    for (std::size_t b = iy; b < ny; ++b) {
      const double m = j.mass(a, b);
      d.p11 += m;
      wx11[a - ix] += m;
      wy11[b - iy] += m;
    }
  }
  if (has_x0) {
    for (std::size_t b = iy; b < ny; ++b) {
      const double m = j.mass(0, b);
      d.p01 += m;
      wy01[b - iy] += m;
    }
  }

  const bool ok11 = d.p11 > kDegenerateMass;
  const bool ok10 = d.p10 > kDegenerateMass;
  const bool ok01 = d.p01 > kDegenerateMass;

  if (ok10) d.x10 = normalized_pmf(vx, wx10, d.p10);
  if (ok11) d.x11 = normalized_pmf(vx, wx11, d.p11);
  if (ok01) d.y01 = normalized_pmf(vy, wy01, d.p01);
  if (ok11) d.y11 = normalized_pmf(vy, wy11, d.p11);

  if (ok10 && ok11) {
    const OrderProbs ox = order_probs(d.x10, d.x11);
    d.p1_star = ox.greater;
    d.p1_dagger = ox.equal;
  } else {
    d.degenerate.insert("p1_star");
    d.degenerate.insert("p1_dagger");
  }
  if (ok01 && ok11) {
    const OrderProbs oy = order_probs(d.y01, d.y11);
    d.p2_star = oy.greater;
    d.p2_dagger = oy.equal;
  } else {
    d.degenerate.insert("p2_star");
    d.degenerate.insert("p2_dagger");
  }

  if (ok11) {
    const JointPmf j11 = condition_positive(j);
    d.rho_s11 = conditional_rho(j11, d.x11, d.y11);
    if (ok10) {
      d.rho_s10 = conditional_rho(j11, d.x10, d.y11);
    } else {
      d.degenerate.insert("rho_s10");
    }
    if (ok01) {
      d.rho_s01 = conditional_rho(j11, d.x11, d.y01);
    } else {
      d.degenerate.insert("rho_s01");
    }
    if (ok10 && ok01) {
      d.rho_s00 = conditional_rho(j11, d.x10, d.y01);
    } else {
      d.degenerate.insert("rho_s00");
    }
  } else {
    d.degenerate.insert("rho_s11");
    d.degenerate.insert("rho_s10");
    d.degenerate.insert("rho_s01");
    d.degenerate.insert("rho_s00");
  }

  d.rho_s_star = d.p11 * d.p11 * d.rho_s11 + d.p11 * d.p10 * d.rho_s10 +
                 d.p11 * d.p01 * d.rho_s01 + d.p01 * d.p10 * d.rho_s00;
  return d;
}

double decomposition_identity(const DecompositionSummary& d) {
  return d.p11 * d.rho_s_star +
         3.0 * d.p11 *
             (d.p10 * (1.0 - 2.0 * d.p1_star - d.p1_dagger) +
              d.p01 * (1.0 - 2.0 * d.p2_star - d.p2_dagger)) +
         3.0 * (d.p00 * d.p11 - d.p01 * d.p10);
}

}  // namespace zirho
