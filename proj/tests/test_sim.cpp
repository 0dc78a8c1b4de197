#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "zirho/io.hpp"
#include "zirho/sim.hpp"

using zirho::ScenarioConfig;
using zirho::ScenarioResult;
using zirho::ScenarioRow;
using zirho::run_scenario;

namespace {

ScenarioConfig quick(double lambda, double p, double alpha, int reps,
                     std::uint64_t seed, int threads = 1) {
  ScenarioConfig c;
  c.lambda_f = c.lambda_g = lambda;
  c.p1 = c.p2 = p;
  c.alpha = alpha;
  c.n = 150;
  c.reps = reps;
  c.seed = seed;
  c.threads = threads;
  return c;
}

}  // namespace

TEST_CASE("single-replication determinism") {
  const ScenarioConfig c = quick(2.0, 0.2, 0.5, 1, 99);
  const ScenarioResult a = run_scenario(c);
  const ScenarioResult b = run_scenario(c);
  CHECK(a.true_rho == b.true_rho);
  CHECK(a.per_rep_estimates == b.per_rep_estimates);
  CHECK(a.per_rep_bound_min == b.per_rep_bound_min);
  CHECK(a.per_rep_bound_max == b.per_rep_bound_max);
}

TEST_CASE("thread count does not change the result") {
  const ScenarioResult seq = run_scenario(quick(2.0, 0.8, 0.5, 64, 4711, 1));
  const ScenarioResult par = run_scenario(quick(2.0, 0.8, 0.5, 64, 4711, 4));
  CHECK(seq.per_rep_estimates == par.per_rep_estimates);
  CHECK(seq.est_mean == par.est_mean);
  CHECK(seq.mse_times_100 == par.mse_times_100);
  CHECK(seq.bounds_est_mean == par.bounds_est_mean);
}

TEST_CASE("mse is recomputable from the per-replication estimates") {
  const ScenarioResult r = run_scenario(quick(2.0, 0.2, 0.5, 100, 5));
  double mse = 0.0;
  for (const double e : r.per_rep_estimates) {
    mse += (e - r.true_rho) * (e - r.true_rho);
  }
  mse = 100.0 * mse / static_cast<double>(r.per_rep_estimates.size());
  CHECK(r.mse_times_100 == doctest::Approx(mse).epsilon(1e-12));
}

TEST_CASE("spot check against the published scenario values") {
  const ScenarioResult r = run_scenario(quick(2.0, 0.2, 0.5, 300, 20250810));
  CHECK(r.true_rho == doctest::Approx(0.47).epsilon(0.011));
  CHECK(r.est_mean == doctest::Approx(0.48).epsilon(0.05));
  CHECK(r.bounds_true.first == doctest::Approx(-0.89).epsilon(0.01));
  CHECK(r.bounds_true.second == doctest::Approx(0.95).epsilon(0.01));
}

TEST_CASE("estimates stay essentially inside the estimated bounds") {
  const ScenarioResult r = run_scenario(quick(2.0, 0.8, 0.8, 200, 6));
  double clip_change = 0.0;
  for (std::size_t i = 0; i < r.per_rep_estimates.size(); ++i) {
    const double e = r.per_rep_estimates[i];
    const double clipped = std::min(std::max(e, r.per_rep_bound_min[i]),
                                    r.per_rep_bound_max[i]);
    clip_change += std::abs(clipped - e);
  }
  clip_change /= static_cast<double>(r.per_rep_estimates.size());
  CHECK(clip_change <= 0.05);
}

TEST_CASE("strong-association scenario sits near its upper bound") {
  const ScenarioResult r = run_scenario(quick(2.0, 0.8, 0.8, 300, 7));
  CHECK(r.est_mean / r.bounds_est_mean.second >= 0.8);
}

TEST_CASE("boxplot export shape and round trip") {
  const ScenarioConfig c = quick(2.0, 0.2, 0.5, 50, 8);
  const ScenarioRow row{c, run_scenario(c)};
  std::ostringstream out;
  zirho::write_boxplot_csv({row}, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "scenario,rep,estimate,true_rho");
  int rows = 0;
  double mse = 0.0;
  double true_rho = 0.0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1),
               c3 = line.find(',', c2 + 1);
    const double est = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
    true_rho = std::stod(line.substr(c3 + 1));
    mse += (est - true_rho) * (est - true_rho);
    ++rows;
  }
  CHECK(rows == 50);
  CHECK(true_rho == doctest::Approx(row.res.true_rho).epsilon(1e-11));
  mse = 100.0 * mse / rows;
  CHECK(mse == doctest::Approx(row.res.mse_times_100).epsilon(1e-8));
}

TEST_CASE("halving the replications moves the mean only within noise") {
  const ScenarioResult full = run_scenario(quick(2.0, 0.2, 0.5, 400, 12));
  const ScenarioResult half = run_scenario(quick(2.0, 0.2, 0.5, 200, 12));
  CHECK(std::abs(full.est_mean - half.est_mean) < 0.02);
}

TEST_CASE("scenario csv parsing") {
  std::istringstream in(
      "lambda_f,lambda_g,p1,p2,alpha,n,reps\n"
      "2,8,0.2,0.8,0.5,100,7\n"
      "8,8,0.8,0.8,0.2,50,3\n");
  const auto configs = zirho::read_scenarios_csv(in, 42, 2);
  REQUIRE(configs.size() == 2);
  CHECK(configs[0].lambda_g == 8.0);
  CHECK(configs[0].n == 100);
  CHECK(configs[0].reps == 7);
  CHECK(configs[1].alpha == 0.2);
  CHECK(configs[0].seed != configs[1].seed);

  std::istringstream bad("2,8,0.2\n");
  CHECK_THROWS_AS(zirho::read_scenarios_csv(bad, 1, 1), std::invalid_argument);
}

TEST_CASE("validation") {
  ScenarioConfig c = quick(2.0, 0.2, 0.5, 0, 1);
  CHECK_THROWS_AS(run_scenario(c), std::invalid_argument);
  c.reps = 1;
  c.n = 1;
  CHECK_THROWS_AS(run_scenario(c), std::invalid_argument);
}
