#include "regmcts/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace regmcts {

std::vector<double> regret_trace(std::span<const int> choices,
                                 std::span<const double> child_values) {
  if (choices.empty()) {
    throw std::invalid_argument("choices must be non-empty");
  }
  if (child_values.empty()) {
    throw std::invalid_argument("child_values must be non-empty");
  }
  const double best =
      *std::max_element(child_values.begin(), child_values.end());
  std::vector<double> trace(choices.size());
  double collected = 0.0;
  for (std::size_t t = 0; t < choices.size(); ++t) {
    const int choice = choices[t];
    if (choice < 0 || choice >= static_cast<int>(child_values.size())) {
      throw std::invalid_argument("choice index out of range");
    }
    collected += child_values[choice];
    trace[t] = static_cast<double>(t + 1) * best - collected;
  }
  return trace;
}

std::vector<MetricRecord> compute_metrics(const SearchResult& result,
                                          const OracleValues& oracles,
                                          const RunMeta& meta) {
  const std::size_t budget = result.root_value_trace.size();
  if (result.root_choice_trace.size() != budget || budget == 0) {
    throw std::invalid_argument("result traces are misaligned or empty");
  }
  const std::vector<double> regret =
      regret_trace(result.root_choice_trace, oracles.root_child_values);

  std::vector<MetricRecord> records(budget);
  for (std::size_t i = 0; i < budget; ++i) {
    MetricRecord& rec = records[i];
    rec.tree_id = meta.tree_id;
    rec.run_id = meta.run_id;
    rec.algorithm = meta.algorithm;
    rec.k = meta.k;
    rec.d = meta.d;
    rec.tau = meta.tau;
    rec.epsilon = meta.epsilon;
    rec.sim = static_cast<std::int64_t>(i + 1);
    rec.v_omega = result.root_value_trace[i];
    rec.eps_omega = rec.v_omega - oracles.v_star_reg;
    rec.eps_uct = rec.v_omega - oracles.v_star_uct;
    rec.cum_regret = regret[i];
  }
  return records;
}

}  // namespace regmcts
