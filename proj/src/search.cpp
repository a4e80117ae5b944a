#include "regmcts/search.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace regmcts {

namespace {

// Inverse-CDF draw over an explicit distribution with one uniform sample.
int sample_distribution(std::span<const double> probs, Rng& rng) {
  const double u = rng.next_double();
  double acc = 0.0;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    acc += probs[a];
    if (u < acc) return static_cast<int>(a);
  }
  return static_cast<int>(probs.size()) - 1;
}

// Fills `buf` with the E3W mixture for this node and samples from it.
int e3w_sample_into(std::span<double> buf, const TreeNode& node,
                    const RegularizerContext& ctx, double epsilon, Rng& rng) {
  const int num_actions = static_cast<int>(node.q_values.size());
  const double lambda = e3w_lambda(node.total_visits, num_actions, epsilon);
  policy_into(node.q_values, ctx, buf);
  const double uniform = lambda / static_cast<double>(num_actions);
  double sum = 0.0;
  for (double& p : buf) {
    p = (1.0 - lambda) * p + uniform;
    sum += p;
  }
  assert(std::abs(sum - 1.0) <= 1e-9);
  (void)sum;
  return sample_distribution(buf, rng);
}

// Per-node context: the stored prior is attached for relative entropy, the
// other regularizers carry no prior.
RegularizerContext node_context(RegularizerKind kind, double tau,
                                const TreeNode& node) {
  RegularizerContext ctx{kind, tau, {}};
  if (kind == RegularizerKind::RelativeEntropy) {
    ctx.prior = std::span<const double>(node.prior);
  }
  return ctx;
}

int argmax_lowest(std::span<const double> values) {
  int best = 0;
  for (int a = 1; a < static_cast<int>(values.size()); ++a) {
    if (values[a] > values[best]) best = a;
  }
  return best;
}

}  // namespace

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::UCT:
      return "UCT";
    case Algorithm::MENTS:
      return "MENTS";
    case Algorithm::RENTS:
      return "RENTS";
    case Algorithm::TENTS:
      return "TENTS";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "UCT") return Algorithm::UCT;
  if (name == "MENTS") return Algorithm::MENTS;
  if (name == "RENTS") return Algorithm::RENTS;
  if (name == "TENTS") return Algorithm::TENTS;
  throw std::invalid_argument("unknown algorithm: " + name);
}

bool is_regularized(Algorithm algorithm) {
  return algorithm != Algorithm::UCT;
}

RegularizerKind regularizer_for(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::MENTS:
      return RegularizerKind::MaximumEntropy;
    case Algorithm::RENTS:
      return RegularizerKind::RelativeEntropy;
    case Algorithm::TENTS:
      return RegularizerKind::TsallisEntropy;
    case Algorithm::UCT:
      break;
  }
  throw std::invalid_argument("UCT has no regularizer");
}

void validate_config(const AlgorithmConfig& cfg) {
  if (!(cfg.tau > 0.0) || !std::isfinite(cfg.tau)) {
    throw std::invalid_argument("tau must be positive");
  }
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
  if (cfg.simulation_budget < 1) {
    throw std::invalid_argument("simulation_budget must be at least 1");
  }
}

double e3w_lambda(std::int64_t total_visits, int num_actions, double epsilon) {
  const double denom = std::log(static_cast<double>(total_visits) + 1.0);
  if (denom <= 0.0) return 1.0;
  return std::min(1.0, epsilon * static_cast<double>(num_actions) / denom);
}

int e3w_sample(const TreeNode& node, const RegularizerContext& ctx,
               double epsilon, Rng& rng) {
  std::vector<double> buf(node.q_values.size());
  return e3w_sample_into(buf, node, ctx, epsilon, rng);
}

double uct_score(double q, std::int64_t n_s, std::int64_t n_sa, double c) {
  if (n_s < 1) {
    throw std::invalid_argument("uct_score requires n_s >= 1");
  }
  if (n_sa == 0) {
    return std::numeric_limits<double>::infinity();
  }
  return q + c * std::sqrt(std::log(static_cast<double>(n_s)) /
                           static_cast<double>(n_sa));
}

void backup_trajectory(SearchTree& tree, const Trajectory& traj,
                       const RegularizerContext& ctx, double gamma,
                       std::span<const double> rewards) {
  if (traj.steps.empty()) {
    throw std::invalid_argument("trajectory must be non-empty");
  }
  if (rewards.size() != traj.steps.size()) {
    throw std::invalid_argument("rewards must align with trajectory steps");
  }
  for (std::size_t i = traj.steps.size(); i-- > 0;) {
    const auto [node_id, action] = traj.steps[i];
    double value_below;
    if (i + 1 == traj.steps.size()) {
      value_below = traj.leaf_evaluation;
    } else {
      const NodeId child_id = tree.child(node_id, action);
      if (child_id == kNoNode) {
        throw std::invalid_argument("trajectory steps are not parent-linked");
      }
      const TreeNode& child = tree.node(child_id);
      value_below =
          conjugate_value(child.q_values, node_context(ctx.kind, ctx.tau, child));
    }
    tree.record_visit(node_id, action, rewards[i] + gamma * value_below);
  }
}

void backup_trajectory_uct(SearchTree& tree, const Trajectory& traj,
                           double gamma, std::span<const double> rewards) {
  if (traj.steps.empty()) {
    throw std::invalid_argument("trajectory must be non-empty");
  }
  if (rewards.size() != traj.steps.size()) {
    throw std::invalid_argument("rewards must align with trajectory steps");
  }
  double ret = traj.leaf_evaluation;
  for (std::size_t i = traj.steps.size(); i-- > 0;) {
    ret = rewards[i] + gamma * ret;
    const auto [node_id, action] = traj.steps[i];
    const TreeNode& node = tree.node(node_id);
    const double n = static_cast<double>(node.visit_counts[action] + 1);
    const double q = node.q_values[action] + (ret - node.q_values[action]) / n;
    tree.record_visit(node_id, action, q);
  }
}

SearchResult run_search(const Environment& env, const AlgorithmConfig& cfg,
                        Rng& rng) {
  validate_config(cfg);
  const int num_actions = env.action_count();
  if (num_actions < 1) {
    throw std::invalid_argument("environment must expose at least one action");
  }
  const bool regularized = is_regularized(cfg.algorithm);
  const RegularizerKind kind =
      regularized ? regularizer_for(cfg.algorithm) : RegularizerKind::MaximumEntropy;

  SearchTree tree(num_actions);
  Trajectory traj;
  std::vector<double> rewards;
  std::vector<double> mix_buf(num_actions);
  std::vector<double> score_buf(num_actions);
  std::vector<double> root_value_trace;
  std::vector<int> root_choice_trace;
  root_value_trace.reserve(cfg.simulation_budget);
  root_choice_trace.reserve(cfg.simulation_budget);

  for (std::int64_t sim = 0; sim < cfg.simulation_budget; ++sim) {
    traj.steps.clear();
    rewards.clear();
    NodeId node_id = tree.root();
    Environment::State state = env.root_state();

    for (;;) {
      const TreeNode& node = tree.node(node_id);
      int action;
      if (regularized) {
        action = e3w_sample_into(mix_buf, node,
                                 node_context(kind, cfg.tau, node),
                                 cfg.epsilon, rng);
      } else {
        const std::int64_t n_s = std::max<std::int64_t>(node.total_visits, 1);
        for (int a = 0; a < num_actions; ++a) {
          score_buf[a] = uct_score(node.q_values[a], n_s, node.visit_counts[a],
                                   cfg.epsilon);
        }
        action = argmax_lowest(score_buf);
      }

      traj.steps.push_back({node_id, action});
      rewards.push_back(env.reward(state, action));
      const Environment::State next_state = env.step(state, action);
      NodeId child_id = tree.child(node_id, action);

      if (child_id == kNoNode) {
        child_id = tree.expand(node_id, action);
        if (env.is_terminal(next_state)) {
          const double sample = env.evaluate(next_state, rng);
          if (regularized) {
            tree.record_evaluation(child_id, sample);
            traj.leaf_evaluation = tree.node(child_id).eval_mean();
          } else {
            traj.leaf_evaluation = sample;
          }
        } else {
          // Uniform rollout to a terminal state; intermediate rewards are
          // collected into the leaf estimate with the configured discount.
          Environment::State s = next_state;
          double rollout_reward = 0.0;
          double discount = 1.0;
          while (!env.is_terminal(s)) {
            const int a = rng.next_index(num_actions);
            rollout_reward += discount * env.reward(s, a);
            s = env.step(s, a);
            discount *= cfg.gamma;
          }
          traj.leaf_evaluation =
              rollout_reward + discount * env.evaluate(s, rng);
        }
        break;
      }

      if (env.is_terminal(next_state)) {
        const double sample = env.evaluate(next_state, rng);
        if (regularized) {
          tree.record_evaluation(child_id, sample);
          traj.leaf_evaluation = tree.node(child_id).eval_mean();
        } else {
          traj.leaf_evaluation = sample;
        }
        break;
      }

      node_id = child_id;
      state = next_state;
    }

    if (regularized) {
      backup_trajectory(tree, traj,
                        RegularizerContext{kind, cfg.tau, {}}, cfg.gamma,
                        rewards);
      const TreeNode& root = tree.node(tree.root());
      root_value_trace.push_back(
          conjugate_value(root.q_values, node_context(kind, cfg.tau, root)));
    } else {
      backup_trajectory_uct(tree, traj, cfg.gamma, rewards);
      const TreeNode& root = tree.node(tree.root());
      root_value_trace.push_back(
          *std::max_element(root.q_values.begin(), root.q_values.end()));
    }
    root_choice_trace.push_back(traj.steps.front().action);
  }

  const TreeNode& root = tree.node(tree.root());
  int recommended;
  if (regularized) {
    policy_into(root.q_values, node_context(kind, cfg.tau, root), mix_buf);
    recommended = argmax_lowest(mix_buf);
  } else {
    int best = 0;
    for (int a = 1; a < num_actions; ++a) {
      if (root.visit_counts[a] > root.visit_counts[best]) best = a;
    }
    recommended = best;
  }

  return SearchResult{recommended, std::move(root_value_trace),
                      std::move(root_choice_trace), std::move(tree)};
}

}  // namespace regmcts
