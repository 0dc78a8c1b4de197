#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "zirho/bounds.hpp"

namespace zirho {

/// One Monte Carlo configuration: zero-inflated Poisson margins joined by
/// the Frechet copula with weight alpha, sampled `reps` times at size n.
struct ScenarioConfig {
  double lambda_f = 2.0, lambda_g = 2.0;
  double p1 = 0.2, p2 = 0.2;
  double alpha = 0.5;
  int n = 150;
  int reps = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  double eps = 1e-12;  // margin truncation
};

struct ScenarioResult {
  double true_rho = 0.0;      // exact rho of the configured joint
  double est_mean = 0.0;      // mean of the decomposition estimator
  double mse_times_100 = 0.0; // 100 * mean squared error against true_rho
  std::vector<double> per_rep_estimates;
  std::pair<double, double> bounds_true{0.0, 0.0};      // closed form
  std::pair<double, double> bounds_est_mean{0.0, 0.0};  // mean empirical
  std::vector<double> per_rep_bound_min, per_rep_bound_max;
  int degenerate_reps = 0;  // replications with any degenerate component
};

/// Runs one scenario. Replication r uses the counter stream (seed, r), so
/// the result is identical for any thread count and any evaluation order.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

struct ScenarioRow {
  ScenarioConfig cfg;
  ScenarioResult res;
};

/// The 18-scenario grid lambda in {(2,2),(2,8),(8,8)} x p in {0.2,0.8} x
/// alpha in {0.2,0.5,0.8}; scenario i draws from the stream (seed, i).
std::vector<ScenarioRow> reproduce_table1(std::uint64_t seed, int n = 150,
                                          int reps = 1000, int threads = 1);

/// The 6 margin configurations of the bounds study: true bounds (closed
/// form and oracle) plus mean estimated bounds over the replications.
struct Table3Row {
  ScenarioConfig cfg;
  ScenarioResult res;
  BoundsResult closed;
  BoundsResult oracle;
};

std::vector<Table3Row> reproduce_table3(std::uint64_t seed, int n = 150,
                                        int reps = 1000, int threads = 1);

/// Scenario CSV: columns lambda_f,lambda_g,p1,p2,alpha,n,reps (header
/// optional). seed/threads are applied per row as (seed, row index).
std::vector<ScenarioConfig> read_scenarios_csv(std::istream& in,
                                               std::uint64_t seed,
                                               int threads);

void write_table1_csv(const std::vector<ScenarioRow>& rows, std::ostream& out);
void write_table3_csv(const std::vector<Table3Row>& rows, std::ostream& out);

/// Long-format per-replication estimates for external box plotting:
/// scenario,rep,estimate,true_rho.
void export_boxplot_data(const std::vector<ScenarioRow>& rows,
                         const std::string& path);
void write_boxplot_csv(const std::vector<ScenarioRow>& rows, std::ostream& out);

}  // namespace zirho
