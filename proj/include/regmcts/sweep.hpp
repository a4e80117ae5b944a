#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regmcts/search.hpp"

namespace regmcts {

// Full description of one experiment sweep. Every run key
// (k, d, tree_index, run_index, algorithm) derives its seeds from
// master_seed alone, so the sweep is a pure function of this struct.
struct ExperimentConfig {
  std::vector<int> k_list{2, 4, 6, 8, 10, 12, 14, 16};
  std::vector<int> d_list{1, 2, 3, 4, 5};
  std::vector<Algorithm> algorithms{Algorithm::UCT, Algorithm::MENTS,
                                    Algorithm::RENTS, Algorithm::TENTS};
  double tau = 0.1;
  double epsilon = 0.1;
  double sigma = 0.05;
  int trees = 5;
  int runs = 5;
  std::int64_t budget = 10000;
  std::uint64_t master_seed = 1;
  std::string output_dir = ".";
  int jobs = 0;  // worker threads; 0 picks the hardware concurrency
};

// Throws std::invalid_argument naming the offending field.
void validate_experiment(const ExperimentConfig& cfg);

struct RunKey {
  int k = 0;
  int d = 0;
  int tree_index = 0;
  int run_index = 0;
  Algorithm algorithm = Algorithm::UCT;
};

// Keys in output order: k, then d, then tree, then run, then algorithm,
// each in the order the config lists them.
std::vector<RunKey> enumerate_run_keys(const ExperimentConfig& cfg);

// Seed derivation (documented contract): fields are folded into the master
// seed with the splitmix64 mixer, one field per step, in the order below.
// The tree seed ignores run and algorithm so all runs share the same trees.
std::uint64_t tree_seed_for(std::uint64_t master_seed, int k, int d,
                            int tree_index);
std::uint64_t run_seed_for(std::uint64_t master_seed, const RunKey& key,
                           int algorithm_index);

struct SweepSummary {
  std::int64_t run_count = 0;     // number of run keys executed
  std::int64_t record_count = 0;  // data rows in runs.csv
  std::string runs_csv_path;
  std::string final_csv_path;
};

// Executes every run key, writing one row per simulation to runs.csv and the
// final simulation's row per key to final.csv under cfg.output_dir. Runs
// execute on a worker pool; rows are committed through an ordered sink in
// run-key order, so the files are byte-identical for a fixed config no
// matter how the pool schedules.
SweepSummary run_sweep(const ExperimentConfig& cfg);

}  // namespace regmcts
