#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "regmcts/oracle.hpp"
#include "regmcts/search.hpp"

namespace regmcts {

// One per-simulation snapshot of a run, in the shape written to runs.csv.
struct MetricRecord {
  std::int64_t tree_id = 0;
  std::int64_t run_id = 0;
  std::string algorithm;
  int k = 0;
  int d = 0;
  double tau = 0.0;
  double epsilon = 0.0;
  std::int64_t sim = 0;  // 1-based simulation index
  double v_omega = 0.0;
  double eps_omega = 0.0;  // v_omega - v_star_reg
  double eps_uct = 0.0;    // v_omega - v_star_uct
  double cum_regret = 0.0;
};

// Identifies the run a set of records belongs to.
struct RunMeta {
  std::int64_t tree_id = 0;
  std::int64_t run_id = 0;
  std::string algorithm;
  int k = 0;
  int d = 0;
  double tau = 0.0;
  double epsilon = 0.0;
};

// Cumulative pseudo-regret of a root choice sequence:
//   out[n-1] = n * max(child_values) - sum_{t<n} child_values[choices[t]].
// Non-negative and non-decreasing.
std::vector<double> regret_trace(std::span<const int> choices,
                                 std::span<const double> child_values);

// One record per simulation, combining the run's traces with the oracle
// values. eps_omega for an unregularized run uses v_star_reg = v_star_uct.
std::vector<MetricRecord> compute_metrics(const SearchResult& result,
                                          const OracleValues& oracles,
                                          const RunMeta& meta);

}  // namespace regmcts
