#pragma once

#include <string>
#include <vector>

namespace regmcts {

enum class AggregateMode {
  FinalError,   // mean |eps_omega| at the last simulation, one k-by-d grid
                // per algorithm
  FinalRegret,  // mean cum_regret at the last simulation, same shape
  TraceMean,    // per-simulation mean and standard deviation across
                // (tree, run) pairs, one table per (k, d)
};

AggregateMode aggregate_mode_from_string(const std::string& name);
const char* to_string(AggregateMode mode);

// Reads a runs.csv (streamed, any row order) and writes the aggregated
// tables under out_dir:
//   final-error / final-regret -> <mode>_<ALGORITHM>.csv, header "k,<d>,..."
//                                 one row per k, columns per d
//   trace-mean                 -> trace-mean_k<k>_d<d>.csv, header
//                                 "sim,<ALGO>_mean,<ALGO>_sd,..."
// Standard deviations are population deviations over the (tree, run) pairs.
// Returns the paths written, in a deterministic order.
std::vector<std::string> aggregate(const std::string& runs_csv_path,
                                   AggregateMode mode,
                                   const std::string& out_dir);

}  // namespace regmcts
