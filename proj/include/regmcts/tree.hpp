#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace regmcts {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Per-node search statistics. Children are dense per-action slots, kNoNode
// until expanded. The prior starts uniform everywhere and is only rewritten
// by the relative-entropy backup; keeping it on every node lets the backup
// stay regularizer-agnostic. eval_sum/eval_count aggregate the stochastic
// leaf evaluations drawn at terminal nodes.
struct TreeNode {
  std::vector<std::int64_t> visit_counts;  // N(s, a)
  std::vector<double> q_values;            // Q(s, a)
  std::vector<NodeId> children;
  std::vector<double> prior;
  std::int64_t total_visits = 0;  // N(s) = sum_a N(s, a)
  int depth = 0;
  double eval_sum = 0.0;
  std::int64_t eval_count = 0;

  double eval_mean() const { return eval_sum / static_cast<double>(eval_count); }
};

// Arena-backed search tree. Node ids are dense indices into the arena and
// stay valid across growth; TreeNode references do not.
class SearchTree {
 public:
  explicit SearchTree(int action_count);

  NodeId root() const { return 0; }
  int action_count() const { return action_count_; }
  std::size_t size() const { return nodes_.size(); }

  const TreeNode& node(NodeId id) const;
  TreeNode& node(NodeId id);

  NodeId child(NodeId id, int action) const;

  // Allocates a child with zeroed statistics and uniform prior at
  // depth(parent) + 1. Throws std::logic_error if the slot is taken.
  NodeId expand(NodeId parent, int action);

  // N(s, a) += 1, Q(s, a) = new_q (assignment, not averaging), N(s) += 1.
  void record_visit(NodeId id, int action, double new_q);

  // Adds one evaluation sample to the node's aggregate.
  void record_evaluation(NodeId id, double value);

  // One line per node in id order: id, depth, parent-ish info, N and Q per
  // action. Stable output for golden-file comparisons.
  std::string dump() const;

 private:
  void check_node(NodeId id) const;
  void check_action(int action) const;

  std::vector<TreeNode> nodes_;
  int action_count_;
};

}  // namespace regmcts
