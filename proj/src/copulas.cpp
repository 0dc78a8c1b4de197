#include "zirho/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "zirho/rng.hpp"

namespace zirho {

CopulaSpec CopulaSpec::frechet(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("CopulaSpec: alpha must be in [0, 1]");
  }
  return {CopulaFamily::frechet, alpha};
}

double copula_cdf(const CopulaSpec& c, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("copula_cdf: arguments must be in [0, 1]");
  }
  switch (c.family) {
    case CopulaFamily::independence:
      return u * v;
    case CopulaFamily::comonotone:
      return std::min(u, v);
    case CopulaFamily::countermonotone:
      return std::max(u + v - 1.0, 0.0);
    case CopulaFamily::frechet:
      return (1.0 - c.alpha) * (u * v) + c.alpha * std::min(u, v);
  }
  return 0.0;  // unreachable
}

namespace {

constexpr double kClampTol = 1e-12;

DiscretePmf filtered_pmf(const std::vector<std::int64_t>& values,
                         const std::vector<double>& probs) {
  std::vector<std::int64_t> v;
  std::vector<double> p;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (probs[i] > 0.0) {
      v.push_back(values[i]);
      p.push_back(probs[i]);
    }
  }
  return DiscretePmf(std::move(v), std::move(p));
}

}  // namespace

JointPmf::JointPmf(std::vector<std::int64_t> x_support,
                   std::vector<std::int64_t> y_support,
                   std::vector<double> mass)
    : x_support_(std::move(x_support)),
      y_support_(std::move(y_support)),
      mass_(std::move(mass)) {
  const std::size_t nx = x_support_.size();
  const std::size_t ny = y_support_.size();
  if (nx == 0 || ny == 0 || mass_.size() != nx * ny) {
    throw std::invalid_argument("JointPmf: support/mass shape mismatch");
  }
  for (std::size_t i = 1; i < nx; ++i) {
    if (x_support_[i] <= x_support_[i - 1]) {
      throw std::invalid_argument("JointPmf: x support not strictly increasing");
    }
  }
  for (std::size_t j = 1; j < ny; ++j) {
    if (y_support_[j] <= y_support_[j - 1]) {
      throw std::invalid_argument("JointPmf: y support not strictly increasing");
    }
  }
  if (x_support_.front() < 0 || y_support_.front() < 0) {
    throw std::invalid_argument("JointPmf: negative support value");
  }

  double total = 0.0;
  for (double& m : mass_) {
    if (m < 0.0) {
      if (m < -kClampTol) {
        throw std::runtime_error(
            "JointPmf: rectangle mass " + std::to_string(m) +
            " below the floating-point clamp tolerance");
      }
      m = 0.0;
    }
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("JointPmf: mass sums to " + std::to_string(total));
  }
  for (double& m : mass_) m /= total;

  std::vector<double> row(nx, 0.0), col(ny, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double m = mass_[i * ny + j];
      row[i] += m;
      col[j] += m;
    }
  }
  x_cum_.resize(nx);
  y_cum_.resize(ny);
  double acc = 0.0;
  for (std::size_t i = 0; i < nx; ++i) x_cum_[i] = (acc += row[i]);
  x_cum_.back() = 1.0;
  acc = 0.0;
  for (std::size_t j = 0; j < ny; ++j) y_cum_[j] = (acc += col[j]);
  y_cum_.back() = 1.0;

  margin_x_ = filtered_pmf(x_support_, row);
  margin_y_ = filtered_pmf(y_support_, col);
}

namespace {

// Rectangle volume of the copula over (fl, fu] x (gl, gu]. Evaluated in the
// overlap form of each family rather than by four-term inclusion-exclusion:
// algebraically identical, but cells outside the singular band of M and W
// come out exactly zero instead of carrying rounding dust.
double rectangle_mass(const CopulaSpec& c, double fl, double fu, double gl,
                      double gu) {
  const auto diagonal = [&] {
    return std::max(0.0, std::min(fu, gu) - std::max(fl, gl));
  };
  switch (c.family) {
    case CopulaFamily::independence:
      return (fu - fl) * (gu - gl);
    case CopulaFamily::comonotone:
      return diagonal();
    case CopulaFamily::countermonotone:
      return std::max(0.0, std::min(fu, 1.0 - gl) - std::max(fl, 1.0 - gu));
    case CopulaFamily::frechet:
      return (1.0 - c.alpha) * ((fu - fl) * (gu - gl)) + c.alpha * diagonal();
  }
  return 0.0;  // unreachable
}

}  // namespace

JointPmf joint_pmf(const DiscretePmf& f, const DiscretePmf& g,
                   const CopulaSpec& c) {
  if (f.empty() || g.empty()) {
    throw std::invalid_argument("joint_pmf: empty margin");
  }
  const std::size_t nx = f.size();
  const std::size_t ny = g.size();
  std::vector<double> mass(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    const double fu = f.cum(i);
    const double fl = f.cum_before(i);
    for (std::size_t j = 0; j < ny; ++j) {
      mass[i * ny + j] = rectangle_mass(c, fl, fu, g.cum_before(j), g.cum(j));
    }
  }
  return JointPmf(f.support(), g.support(), std::move(mass));
}

PairedSample sample_pairs(const DiscretePmf& f, const DiscretePmf& g,
                          double alpha, std::size_t n, std::uint64_t seed) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("sample_pairs: alpha must be in [0, 1]");
  }
  if (n == 0) {
    throw std::invalid_argument("sample_pairs: n must be at least 1");
  }
  if (f.empty() || g.empty()) {
    throw std::invalid_argument("sample_pairs: empty margin");
  }
  PairedSample s;
  s.x.resize(n);
  s.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t key = rng::at(seed, i);
    const bool shared = rng::uniform01(rng::at(key, 0)) < alpha;
    const double u = rng::uniform01(rng::at(key, 1));
    const double v = shared ? u : rng::uniform01(rng::at(key, 2));
    s.x[i] = f.quantile(u);
    s.y[i] = g.quantile(v);
  }
  return s;
}

}  // namespace zirho
