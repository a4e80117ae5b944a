#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "regmcts/environment.hpp"
#include "regmcts/regularizer.hpp"
#include "regmcts/rng.hpp"
#include "regmcts/tree.hpp"

namespace regmcts {

enum class Algorithm { UCT, MENTS, RENTS, TENTS };

const char* to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);
bool is_regularized(Algorithm algorithm);
// Regularizer used by MENTS / RENTS / TENTS; throws for UCT.
RegularizerKind regularizer_for(Algorithm algorithm);

struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::UCT;
  double tau = 0.1;
  // E3W exploration epsilon for the regularized algorithms, the exploration
  // constant for UCT.
  double epsilon = 0.1;
  double gamma = 1.0;
  std::int64_t simulation_budget = 1;
};

void validate_config(const AlgorithmConfig& cfg);

// Root-to-leaf path taken by one simulation: (node, action at that node)
// pairs plus the evaluation backing the deepest pair.
struct Trajectory {
  struct Step {
    NodeId node;
    int action;
  };
  std::vector<Step> steps;
  double leaf_evaluation = 0.0;
};

struct SearchResult {
  int recommended_action = 0;
  std::vector<double> root_value_trace;  // V(root) after each simulation
  std::vector<int> root_choice_trace;    // root action of each simulation
  SearchTree final_tree;
};

// Mixing weight of the uniform component in the E3W policy:
// min(1, epsilon * |A| / log(total_visits + 1)); 1 when total_visits = 0.
double e3w_lambda(std::int64_t total_visits, int num_actions, double epsilon);

// Samples from (1 - lambda) * policy(Q) + lambda / |A| by inverse CDF with a
// single uniform draw. For relative entropy, ctx.prior must already be the
// node's stored prior.
int e3w_sample(const TreeNode& node, const RegularizerContext& ctx,
               double epsilon, Rng& rng);

// Q + c * sqrt(log(n_s) / n_sa); +infinity when n_sa = 0 so every action is
// tried once.
double uct_score(double q, std::int64_t n_s, std::int64_t n_sa, double c);

// Regularized backup along a trajectory, deepest pair first:
//   Q(s_T, a_T) = r_T + gamma * rho
//   Q(s_t, a_t) = r_t + gamma * conjugate_value(Q(s_{t+1}))   for t < T
// Visit counts increment at every pair. The relative-entropy conjugate at
// each node uses that node's stored prior as the reference policy; backups
// never rewrite it (uniform unless a caller installed one). ctx supplies the
// kind and temperature; its prior field is ignored in favor of the per-node
// priors. rewards[t] is the reward of the t-th pair and must match steps in
// length.
void backup_trajectory(SearchTree& tree, const Trajectory& traj,
                       const RegularizerContext& ctx, double gamma,
                       std::span<const double> rewards);

// Monte-Carlo running-average backup used by UCT: with G_T = r_T + gamma*rho
// and G_t = r_t + gamma * G_{t+1}, each pair updates Q += (G_t - Q) / N.
void backup_trajectory_uct(SearchTree& tree, const Trajectory& traj,
                           double gamma, std::span<const double> rewards);

// The four-phase loop (select, expand, evaluate, back up) for
// simulation_budget iterations. Selection samples E3W for the regularized
// algorithms and maximizes uct_score for UCT (ties to the lowest index);
// unexpanded children enter the E3W policy with their initialized Q of 0.
// Stochastic evaluations at terminal states are aggregated per node and the
// regularized backup uses the aggregate mean; UCT consumes the fresh draw.
// The traced root value is conjugate_value(Q(root)) for regularized runs and
// max_a Q(root, a) for UCT. The recommended action maximizes policy(Q(root))
// (regularized) or the root visit count (UCT), ties to the lowest index.
SearchResult run_search(const Environment& env, const AlgorithmConfig& cfg,
                        Rng& rng);

}  // namespace regmcts
