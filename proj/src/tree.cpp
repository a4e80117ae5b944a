#include "regmcts/tree.hpp"

#include <sstream>
#include <stdexcept>

namespace regmcts {

namespace {

TreeNode make_node(int action_count, int depth) {
  TreeNode n;
  n.visit_counts.assign(action_count, 0);
  n.q_values.assign(action_count, 0.0);
  n.children.assign(action_count, kNoNode);
  n.prior.assign(action_count, 1.0 / static_cast<double>(action_count));
  n.depth = depth;
  return n;
}

}  // namespace

SearchTree::SearchTree(int action_count) : action_count_(action_count) {
  if (action_count < 1) {
    throw std::invalid_argument("action_count must be at least 1");
  }
  nodes_.push_back(make_node(action_count_, 0));
}

void SearchTree::check_node(NodeId id) const {
  if (id >= nodes_.size()) {
    throw std::invalid_argument("invalid node id");
  }
}

void SearchTree::check_action(int action) const {
  if (action < 0 || action >= action_count_) {
    throw std::invalid_argument("action index out of range");
  }
}

const TreeNode& SearchTree::node(NodeId id) const {
  check_node(id);
  return nodes_[id];
}

TreeNode& SearchTree::node(NodeId id) {
  check_node(id);
  return nodes_[id];
}

NodeId SearchTree::child(NodeId id, int action) const {
  check_node(id);
  check_action(action);
  return nodes_[id].children[action];
}

NodeId SearchTree::expand(NodeId parent, int action) {
  check_node(parent);
  check_action(action);
  if (nodes_[parent].children[action] != kNoNode) {
    throw std::logic_error("child slot already expanded");
  }
  const int child_depth = nodes_[parent].depth + 1;
  const NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(make_node(action_count_, child_depth));
  nodes_[parent].children[action] = id;
  return id;
}

void SearchTree::record_visit(NodeId id, int action, double new_q) {
  check_node(id);
  check_action(action);
  TreeNode& n = nodes_[id];
  n.visit_counts[action] += 1;
  n.q_values[action] = new_q;
  n.total_visits += 1;
}

void SearchTree::record_evaluation(NodeId id, double value) {
  check_node(id);
  TreeNode& n = nodes_[id];
  n.eval_sum += value;
  n.eval_count += 1;
}

std::string SearchTree::dump() const {
  std::ostringstream out;
  out.precision(17);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const TreeNode& n = nodes_[id];
    out << "node " << id << " depth " << n.depth << " visits "
        << n.total_visits << "\n";
    for (int a = 0; a < action_count_; ++a) {
      out << "  a" << a << " N " << n.visit_counts[a] << " Q " << n.q_values[a];
      if (n.children[a] != kNoNode) {
        out << " child " << n.children[a];
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace regmcts
