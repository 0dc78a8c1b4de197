// zirho: Spearman's rho for bivariate zero-inflated count data.
//
// Subcommands: exact (population rho of a copula-coupled joint), estimate
// (decomposition estimator from a CSV sample), bounds (attainable range),
// simulate (deterministic Monte Carlo tables).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zirho/bounds.hpp"
#include "zirho/exact.hpp"
#include "zirho/io.hpp"
#include "zirho/sim.hpp"

namespace {

using nlohmann::json;

// All numeric output carries 12 significant digits.
double sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json components_json(const zirho::DecompositionSummary& d) {
  json out;
  out["p00"] = sig12(d.p00);
  out["p01"] = sig12(d.p01);
  out["p10"] = sig12(d.p10);
  out["p11"] = sig12(d.p11);
  out["p1_star"] = sig12(d.p1_star);
  out["p1_dagger"] = sig12(d.p1_dagger);
  out["p2_star"] = sig12(d.p2_star);
  out["p2_dagger"] = sig12(d.p2_dagger);
  out["rho_s11"] = sig12(d.rho_s11);
  out["rho_s10"] = sig12(d.rho_s10);
  out["rho_s01"] = sig12(d.rho_s01);
  out["rho_s00"] = sig12(d.rho_s00);
  out["rho_s_star"] = sig12(d.rho_s_star);
  return out;
}

json bounds_json(const zirho::BoundsResult& b) {
  json out;
  out["method"] = b.method;
  out["rho_min"] = sig12(b.rho_min);
  out["rho_max"] = sig12(b.rho_max);
  out["rho_s11_min"] = sig12(b.rho_s11_min);
  out["rho_s11_max"] = sig12(b.rho_s11_max);
  out["p1"] = sig12(b.p1);
  out["p2"] = sig12(b.p2);
  out["case_tags"] = b.case_tags;
  out["located_points"] = json::object();
  for (const auto& [name, value] : b.located_points) {
    out["located_points"][name] = value;
  }
  if (b.i1) out["i1"] = sig12(*b.i1);
  if (b.i2) out["i2"] = sig12(*b.i2);
  if (!b.degenerate.empty()) out["degenerate"] = b.degenerate;
  if (b.p1_inflation_hat) out["p1_inflation_hat"] = sig12(*b.p1_inflation_hat);
  if (b.p2_inflation_hat) out["p2_inflation_hat"] = sig12(*b.p2_inflation_hat);
  if (b.caveat) out["caveat"] = *b.caveat;
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open '" + path + "'");
  return file;
}

struct ExactArgs {
  std::string margin_x, margin_y, copula = "indep";
  double eps = 1e-12;
  bool decompose = false;
};

int run_exact(const ExactArgs& a) {
  const zirho::DiscretePmf f =
      zirho::build_margin(zirho::parse_margin_spec(a.margin_x), a.eps);
  const zirho::DiscretePmf g =
      zirho::build_margin(zirho::parse_margin_spec(a.margin_y), a.eps);
  const zirho::JointPmf joint =
      zirho::joint_pmf(f, g, zirho::parse_copula_spec(a.copula));
  json out;
  out["rho_s"] = sig12(zirho::spearman_exact(joint));
  if (a.decompose) {
    const zirho::DecompositionSummary d = zirho::decompose(joint);
    out["decomposition"] = components_json(d);
    out["identity_rho_s"] = sig12(zirho::decomposition_identity(d));
    if (!d.degenerate.empty()) out["degenerate"] = d.degenerate;
  }
  emit(out);
  return 0;
}

struct EstimateArgs {
  std::string input;
};

int run_estimate(const EstimateArgs& a) {
  const zirho::PairedSample s = zirho::read_pairs_csv_file(a.input);
  const zirho::EstimateResult r = zirho::estimate_rho_a(s);
  json out;
  out["rho_a"] = sig12(r.rho_a);
  out["n"] = r.n;
  out["counts"] = {
      {"n11", r.n11}, {"n10", r.n10}, {"n01", r.n01}, {"n00", r.n00}};
  out["components"] = components_json(r.components);
  out["degenerate"] = r.components.degenerate;
  emit(out);
  return 0;
}

struct BoundsArgs {
  std::string margin_x, margin_y, input, method = "both";
  std::string base_x, base_y;
  std::optional<double> p1, p2;
  double eps = 1e-12;
};

int run_bounds(const BoundsArgs& a) {
  if (!a.input.empty()) {
    const zirho::PairedSample s = zirho::read_pairs_csv_file(a.input);
    zirho::InflationHint hint;
    if (a.p1) hint.p1_override = *a.p1;
    if (a.p2) hint.p2_override = *a.p2;
    const auto base_zero = [&](const std::string& spec) {
      const zirho::DiscretePmf base =
          zirho::build_margin(zirho::parse_margin_spec(spec), a.eps);
      return base.cdf(0);
    };
    if (!a.base_x.empty()) hint.base_zero_x = base_zero(a.base_x);
    if (!a.base_y.empty()) hint.base_zero_y = base_zero(a.base_y);
    emit(bounds_json(zirho::empirical_bounds(s, hint)));
    return 0;
  }
  const zirho::DiscretePmf f =
      zirho::build_margin(zirho::parse_margin_spec(a.margin_x), a.eps);
  const zirho::DiscretePmf g =
      zirho::build_margin(zirho::parse_margin_spec(a.margin_y), a.eps);
  if (a.method == "closed") {
    emit(bounds_json(zirho::bounds_closed_form(f, g)));
  } else if (a.method == "oracle") {
    emit(bounds_json(zirho::bounds_oracle(f, g)));
  } else if (a.method == "both") {
    const zirho::BoundsResult c = zirho::bounds_closed_form(f, g);
    const zirho::BoundsResult o = zirho::bounds_oracle(f, g);
    json out;
    out["closed_form"] = bounds_json(c);
    out["oracle"] = bounds_json(o);
    out["max_abs_difference"] =
        sig12(std::max(std::abs(c.rho_min - o.rho_min),
                       std::abs(c.rho_max - o.rho_max)));
    emit(out);
  } else {
    throw std::invalid_argument("bounds: --method must be closed, oracle or both");
  }
  return 0;
}

struct SimulateArgs {
  std::uint64_t seed = 0;
  bool table1 = false, table3 = false;
  std::string scenarios;
  int n = 150, reps = 1000, threads = 1;
  std::string out, boxplot;
};

int run_simulate(const SimulateArgs& a) {
  const int modes = int(a.table1) + int(a.table3) + int(!a.scenarios.empty());
  if (modes != 1) {
    throw std::invalid_argument(
        "simulate: choose exactly one of --table1, --table3, --scenarios");
  }
  std::ofstream file;
  std::ostream& out = open_output(file, a.out);
  if (a.table3) {
    const auto rows = zirho::reproduce_table3(a.seed, a.n, a.reps, a.threads);
    zirho::write_table3_csv(rows, out);
    return 0;
  }
  std::vector<zirho::ScenarioRow> rows;
  if (a.table1) {
    rows = zirho::reproduce_table1(a.seed, a.n, a.reps, a.threads);
  } else {
    std::ifstream in(a.scenarios);
    if (!in) throw std::invalid_argument("cannot open '" + a.scenarios + "'");
    for (const auto& cfg : zirho::read_scenarios_csv(in, a.seed, a.threads)) {
      rows.push_back({cfg, zirho::run_scenario(cfg)});
    }
  }
  zirho::write_table1_csv(rows, out);
  if (!a.boxplot.empty()) zirho::export_boxplot_data(rows, a.boxplot);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spearman's rho for bivariate zero-inflated count data"};
  app.require_subcommand(1);

  ExactArgs ea;
  CLI::App* exact = app.add_subcommand(
      "exact", "Population rho of two margins coupled by a copula");
  exact->add_option("--margin-x", ea.margin_x,
                    "x margin (zip:lambda=<f>,p=<f> or pmf:<path>)")
      ->required();
  exact->add_option("--margin-y", ea.margin_y, "y margin")->required();
  exact->add_option("--copula", ea.copula,
                    "copula (frechet:alpha=<f>, m, w, indep)");
  exact->add_option("--eps", ea.eps, "margin truncation tail mass");
  exact->add_flag("--decompose", ea.decompose,
                  "include the full decomposition in the output");

  EstimateArgs sa;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Decomposition estimator of rho from integer pairs");
  estimate->add_option("--input", sa.input, "CSV of integer pairs x,y")
      ->required();

  BoundsArgs ba;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Attainable range of rho for zero-inflated margins");
  bounds->add_option("--margin-x", ba.margin_x, "x margin spec");
  bounds->add_option("--margin-y", ba.margin_y, "y margin spec");
  bounds->add_option("--input", ba.input,
                     "CSV sample for empirical bounds (excludes --margin-*)");
  bounds->add_option("--method", ba.method, "closed | oracle | both");
  bounds->add_option("--p1", ba.p1, "known extra inflation of x (with --input)");
  bounds->add_option("--p2", ba.p2, "known extra inflation of y (with --input)");
  bounds->add_option("--base-x", ba.base_x,
                     "base margin spec of x (with --input)");
  bounds->add_option("--base-y", ba.base_y, "base margin spec of y");
  bounds->add_option("--eps", ba.eps, "margin truncation tail mass");

  SimulateArgs ma;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Deterministic Monte Carlo reproduction harness");
  simulate->add_option("--seed", ma.seed, "master seed (required)")->required();
  simulate->add_flag("--table1", ma.table1, "18-scenario estimator grid");
  simulate->add_flag("--table3", ma.table3, "6-scenario bounds grid");
  simulate->add_option("--scenarios", ma.scenarios,
                       "scenario CSV (lambda_f,lambda_g,p1,p2,alpha,n,reps)");
  simulate->add_option("--n", ma.n, "sample size per replication");
  simulate->add_option("--reps", ma.reps, "replications per scenario");
  simulate->add_option("--threads", ma.threads, "worker threads");
  simulate->add_option("--out", ma.out, "output CSV path (default stdout)");
  simulate->add_option("--boxplot", ma.boxplot,
                       "also write per-replication estimates to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (exact->parsed()) return run_exact(ea);
    if (estimate->parsed()) return run_estimate(sa);
    if (bounds->parsed()) {
      if (ba.input.empty() == (ba.margin_x.empty() || ba.margin_y.empty())) {
        throw std::invalid_argument(
            "bounds: pass either --margin-x/--margin-y or --input");
      }
      return run_bounds(ba);
    }
    if (simulate->parsed()) return run_simulate(ma);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
