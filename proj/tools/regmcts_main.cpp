#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regmcts/aggregate.hpp"
#include "regmcts/plot.hpp"
#include "regmcts/search.hpp"
#include "regmcts/sweep.hpp"
#include "regmcts/synthetic_tree.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App app{"Regularized Monte-Carlo tree search benchmark harness"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Config file with a [sweep] section mirroring the sweep "
                 "flags; command-line flags override it");

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Run the synthetic-tree experiment sweep and write CSVs");
  regmcts::ExperimentConfig cfg;
  std::vector<std::string> algo_labels{"UCT", "MENTS", "RENTS", "TENTS"};
  sweep_cmd->add_option("--k", cfg.k_list, "Branching factors")
      ->delimiter(',');
  sweep_cmd->add_option("--d", cfg.d_list, "Tree depths")->delimiter(',');
  sweep_cmd->add_option("--algo", algo_labels, "Algorithms to run")
      ->delimiter(',');
  sweep_cmd->add_option("--tau", cfg.tau, "Regularization temperature");
  sweep_cmd->add_option("--eps", cfg.epsilon,
                        "E3W exploration (UCT exploration constant)");
  sweep_cmd->add_option("--sigma", cfg.sigma, "Leaf evaluation noise");
  sweep_cmd->add_option("--trees", cfg.trees, "Trees per (k, d)");
  sweep_cmd->add_option("--runs", cfg.runs, "Runs per tree");
  sweep_cmd->add_option("--budget", cfg.budget, "Simulations per run");
  sweep_cmd->add_option("--seed", cfg.master_seed, "Master seed");
  sweep_cmd->add_option("--out", cfg.output_dir, "Output directory");
  sweep_cmd->add_option("--jobs", cfg.jobs,
                        "Worker threads (0 = hardware concurrency)");

  // aggregate
  auto* agg_cmd =
      app.add_subcommand("aggregate", "Aggregate a runs.csv into table files");
  std::string agg_mode = "final-error";
  std::string agg_in;
  std::string agg_out = ".";
  agg_cmd->add_option("--mode", agg_mode,
                      "final-error | final-regret | trace-mean");
  agg_cmd->add_option("--in", agg_in, "Path to runs.csv")->required();
  agg_cmd->add_option("--out", agg_out, "Output directory");

  // plot
  auto* plot_cmd =
      app.add_subcommand("plot", "Render an aggregated table as SVG");
  std::string plot_in;
  std::string plot_out;
  plot_cmd->add_option("--in", plot_in, "Aggregated table CSV")->required();
  plot_cmd->add_option("--out", plot_out, "Output SVG path")->required();

  // dump-tree
  auto* dump_cmd = app.add_subcommand(
      "dump-tree", "Generate a synthetic tree and write its text form");
  int dump_k = 2;
  int dump_d = 1;
  std::uint64_t dump_seed = 0;
  double dump_sigma = 0.05;
  std::string dump_out;
  dump_cmd->add_option("--k", dump_k, "Branching factor")->required();
  dump_cmd->add_option("--d", dump_d, "Depth")->required();
  dump_cmd->add_option("--seed", dump_seed, "Tree seed")->required();
  dump_cmd->add_option("--sigma", dump_sigma, "Leaf evaluation noise");
  dump_cmd->add_option("--out", dump_out, "Output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (sweep_cmd->parsed()) {
    cfg.algorithms.clear();
    for (const std::string& label : algo_labels) {
      cfg.algorithms.push_back(regmcts::algorithm_from_string(label));
    }
    const regmcts::SweepSummary summary = regmcts::run_sweep(cfg);
    std::cout << "sweep: " << summary.run_count << " runs, "
              << summary.record_count << " rows\n"
              << "  " << summary.runs_csv_path << "\n"
              << "  " << summary.final_csv_path << "\n";
    return 0;
  }
  if (agg_cmd->parsed()) {
    const auto written = regmcts::aggregate(
        agg_in, regmcts::aggregate_mode_from_string(agg_mode), agg_out);
    for (const std::string& path : written) {
      std::cout << path << "\n";
    }
    return 0;
  }
  if (plot_cmd->parsed()) {
    regmcts::render_plot(plot_in, plot_out);
    std::cout << plot_out << "\n";
    return 0;
  }
  if (dump_cmd->parsed()) {
    const regmcts::SyntheticTree tree =
        regmcts::SyntheticTree::generate(dump_k, dump_d, dump_seed, dump_sigma);
    std::ofstream out(dump_out, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + dump_out);
    out << tree.serialize();
    if (!out) throw std::runtime_error("failed writing " + dump_out);
    std::cout << dump_out << "\n";
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "regmcts: " << e.what() << "\n";
    return 1;
  }
}
