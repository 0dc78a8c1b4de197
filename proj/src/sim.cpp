#include "zirho/sim.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "zirho/io.hpp"
#include "zirho/rng.hpp"

namespace zirho {

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("run_scenario: n must be >= 2");
  if (cfg.reps < 1) throw std::invalid_argument("run_scenario: reps must be >= 1");

  const DiscretePmf f =
      build_margin({cfg.p1, PoissonSpec{cfg.lambda_f}}, cfg.eps);
  const DiscretePmf g =
      build_margin({cfg.p2, PoissonSpec{cfg.lambda_g}}, cfg.eps);
  const JointPmf joint = joint_pmf(f, g, CopulaSpec::frechet(cfg.alpha));

  ScenarioResult out;
  out.true_rho = spearman_exact(joint);
  const BoundsResult closed = bounds_closed_form(f, g);
  out.bounds_true = {closed.rho_min, closed.rho_max};

  InflationHint hint;
  hint.base_zero_x = std::exp(-cfg.lambda_f);
  hint.base_zero_y = std::exp(-cfg.lambda_g);

  const std::size_t reps = static_cast<std::size_t>(cfg.reps);
  out.per_rep_estimates.resize(reps);
  out.per_rep_bound_min.resize(reps);
  out.per_rep_bound_max.resize(reps);
  std::vector<char> degenerate(reps, 0);

  const auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      const std::uint64_t rep_seed = rng::at(cfg.seed, r);
      const PairedSample s = sample_pairs(
          f, g, cfg.alpha, static_cast<std::size_t>(cfg.n), rep_seed);
      const EstimateResult est = estimate_rho_a(s);
      const BoundsResult eb = empirical_bounds(s, hint);
      out.per_rep_estimates[r] = est.rho_a;
      out.per_rep_bound_min[r] = eb.rho_min;
      out.per_rep_bound_max[r] = eb.rho_max;
      degenerate[r] = est.components.degenerate.empty() ? 0 : 1;
    }
  };

  const int threads = std::max(1, cfg.threads);
  if (threads == 1 || reps < 2) {
    worker(0, reps);
  } else {
    std::vector<std::thread> pool;
    const std::size_t t = std::min<std::size_t>(threads, reps);
    for (std::size_t k = 0; k < t; ++k) {
      const std::size_t lo = reps * k / t;
      const std::size_t hi = reps * (k + 1) / t;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // Fixed-order aggregation keeps results identical across thread counts.
  double mean = 0.0, mse = 0.0, bmin = 0.0, bmax = 0.0;
  int deg = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    const double e = out.per_rep_estimates[r];
    mean += e;
    mse += (e - out.true_rho) * (e - out.true_rho);
    bmin += out.per_rep_bound_min[r];
    bmax += out.per_rep_bound_max[r];
    deg += degenerate[r];
  }
  const double dn = static_cast<double>(reps);
  out.est_mean = mean / dn;
  out.mse_times_100 = 100.0 * mse / dn;
  out.bounds_est_mean = {bmin / dn, bmax / dn};
  out.degenerate_reps = deg;
  return out;
}

namespace {

std::vector<ScenarioConfig> table1_grid(std::uint64_t seed, int n, int reps,
                                        int threads) {
  const double lambdas[3][2] = {{2.0, 2.0}, {2.0, 8.0}, {8.0, 8.0}};
  const double ps[2] = {0.2, 0.8};
  const double alphas[3] = {0.2, 0.5, 0.8};
  std::vector<ScenarioConfig> out;
  std::size_t index = 0;
  for (const auto& l : lambdas) {
    for (const double p : ps) {
      for (const double a : alphas) {
        ScenarioConfig c;
        c.lambda_f = l[0];
        c.lambda_g = l[1];
        c.p1 = c.p2 = p;
        c.alpha = a;
        c.n = n;
        c.reps = reps;
        c.seed = rng::at(seed, index++);
        c.threads = threads;
        out.push_back(c);
      }
    }
  }
  return out;
}

std::string scenario_label(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "lf" << format_number(c.lambda_f) << "_lg" << format_number(c.lambda_g)
      << "_p1" << format_number(c.p1) << "_p2" << format_number(c.p2) << "_a"
      << format_number(c.alpha);
  return out.str();
}

}  // namespace

std::vector<ScenarioRow> reproduce_table1(std::uint64_t seed, int n, int reps,
                                          int threads) {
  std::vector<ScenarioRow> rows;
  for (const ScenarioConfig& cfg : table1_grid(seed, n, reps, threads)) {
    rows.push_back({cfg, run_scenario(cfg)});
  }
  return rows;
}

std::vector<Table3Row> reproduce_table3(std::uint64_t seed, int n, int reps,
                                        int threads) {
  const double lambdas[3][2] = {{2.0, 2.0}, {2.0, 8.0}, {8.0, 8.0}};
  const double ps[2] = {0.2, 0.8};
  std::vector<Table3Row> rows;
  std::size_t index = 0;
  for (const auto& l : lambdas) {
    for (const double p : ps) {
      ScenarioConfig c;
      c.lambda_f = l[0];
      c.lambda_g = l[1];
      c.p1 = c.p2 = p;
      c.alpha = 0.5;  // bounds depend on the margins only
      c.n = n;
      c.reps = reps;
      c.seed = rng::at(seed, index++);
      c.threads = threads;
      Table3Row row;
      row.cfg = c;
      row.res = run_scenario(c);
      const DiscretePmf f = build_margin({c.p1, PoissonSpec{c.lambda_f}}, c.eps);
      const DiscretePmf g = build_margin({c.p2, PoissonSpec{c.lambda_g}}, c.eps);
      row.closed = bounds_closed_form(f, g);
      row.oracle = bounds_oracle(f, g);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ScenarioConfig> read_scenarios_csv(std::istream& in,
                                               std::uint64_t seed,
                                               int threads) {
  std::vector<ScenarioConfig> out;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string field;
    std::vector<double> v;
    bool ok = true;
    while (std::getline(row, field, ',')) {
      try {
        v.push_back(std::stod(field));
      } catch (const std::exception&) {
        ok = false;
        break;
      }
    }
    if (!ok || v.size() != 7) {
      if (first && !line.empty()) {
        first = false;  // header
        continue;
      }
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      throw std::invalid_argument("scenario csv: malformed line " +
                                  std::to_string(lineno));
    }
    first = false;
    ScenarioConfig c;
    c.lambda_f = v[0];
    c.lambda_g = v[1];
    c.p1 = v[2];
    c.p2 = v[3];
    c.alpha = v[4];
    c.n = static_cast<int>(v[5]);
    c.reps = static_cast<int>(v[6]);
    c.seed = rng::at(seed, out.size());
    c.threads = threads;
    out.push_back(c);
  }
  if (out.empty()) {
    throw std::invalid_argument("scenario csv: no scenarios");
  }
  return out;
}

void write_table1_csv(const std::vector<ScenarioRow>& rows, std::ostream& out) {
  out << "lambda_f,lambda_g,p1,p2,alpha,n,reps,rho_s,rho_a_mean,rho_a_mse100,"
         "degenerate_reps\n";
  for (const auto& r : rows) {
    out << format_number(r.cfg.lambda_f) << ',' << format_number(r.cfg.lambda_g)
        << ',' << format_number(r.cfg.p1) << ',' << format_number(r.cfg.p2)
        << ',' << format_number(r.cfg.alpha) << ',' << r.cfg.n << ','
        << r.cfg.reps << ',' << format_number(r.res.true_rho) << ','
        << format_number(r.res.est_mean) << ','
        << format_number(r.res.mse_times_100) << ',' << r.res.degenerate_reps
        << '\n';
  }
}

void write_table3_csv(const std::vector<Table3Row>& rows, std::ostream& out) {
  out << "lambda_f,lambda_g,p1,p2,n,reps,bound_min_closed,bound_max_closed,"
         "bound_min_oracle,bound_max_oracle,bound_min_est_mean,"
         "bound_max_est_mean\n";
  for (const auto& r : rows) {
    out << format_number(r.cfg.lambda_f) << ',' << format_number(r.cfg.lambda_g)
        << ',' << format_number(r.cfg.p1) << ',' << format_number(r.cfg.p2)
        << ',' << r.cfg.n << ',' << r.cfg.reps << ','
        << format_number(r.closed.rho_min) << ','
        << format_number(r.closed.rho_max) << ','
        << format_number(r.oracle.rho_min) << ','
        << format_number(r.oracle.rho_max) << ','
        << format_number(r.res.bounds_est_mean.first) << ','
        << format_number(r.res.bounds_est_mean.second) << '\n';
  }
}

void write_boxplot_csv(const std::vector<ScenarioRow>& rows,
                       std::ostream& out) {
  out << "scenario,rep,estimate,true_rho\n";
  for (const auto& r : rows) {
    const std::string label = scenario_label(r.cfg);
    for (std::size_t rep = 0; rep < r.res.per_rep_estimates.size(); ++rep) {
      out << label << ',' << rep << ','
          << format_number(r.res.per_rep_estimates[rep]) << ','
          << format_number(r.res.true_rho) << '\n';
    }
  }
}

void export_boxplot_data(const std::vector<ScenarioRow>& rows,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("export_boxplot_data: cannot open '" + path + "'");
  }
  write_boxplot_csv(rows, out);
  if (!out) {
    throw std::runtime_error("export_boxplot_data: write failed for '" + path +
                             "'");
  }
}

}  // namespace zirho
