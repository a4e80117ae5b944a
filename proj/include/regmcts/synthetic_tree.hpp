#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "regmcts/environment.hpp"
#include "regmcts/rng.hpp"

namespace regmcts {

// The toy planning problem: a complete k-ary tree of depth d. Every edge
// carries a value drawn uniformly from [0, 1]; a leaf's mean is the sum of
// edge values on its root path, min-max normalized to [0, 1] across leaves.
// Evaluating a leaf draws from Normal(mean, sigma^2), untruncated.
//
// Nodes use heap indexing: root 0, child(i, a) = k*i + a + 1. Leaves occupy
// indices [internal_count, internal_count + k^d). Edge values are stored
// flat as edge_values[k * internal + action], which is also the order they
// are drawn in (breadth-first, ascending action index).
class SyntheticTree {
 public:
  // Draws all edge values from a stream seeded with `seed`, then computes
  // and normalizes the leaf means. If every raw path sum is equal the means
  // all collapse to 0.5.
  static SyntheticTree generate(int k, int d, std::uint64_t seed,
                                double sigma = 0.05);

  // Builds a tree from explicit edge values (k * internal_count of them, in
  // the drawing order above). Used by tests and by deserialization.
  static SyntheticTree from_edges(int k, int d, std::vector<double> edges,
                                  double sigma, std::uint64_t seed = 0);

  int k() const { return k_; }
  int d() const { return d_; }
  double sigma() const { return sigma_; }
  std::uint64_t seed() const { return seed_; }

  std::int64_t leaf_count() const { return leaf_count_; }
  std::int64_t internal_count() const { return internal_count_; }
  std::int64_t node_count() const { return internal_count_ + leaf_count_; }

  const std::vector<double>& edge_values() const { return edge_values_; }
  const std::vector<double>& leaf_means() const { return leaf_means_; }

  double edge_value(std::int64_t internal_node, int action) const;

  // One draw from Normal(leaf_means[leaf], sigma^2).
  double sample_leaf(std::int64_t leaf, Rng& rng) const;

  // Whitespace-separated text form, bit-exact on round-trip:
  //   regmcts-synthetic-tree v1
  //   k <int>           branching factor
  //   d <int>           depth
  //   seed <uint64>     generation seed (0 for hand-built trees)
  //   sigma <real>      leaf noise, 17 significant digits
  //   edges <count>     then one edge value per line, breadth-first and
  //                     ascending action index, 17 significant digits
  //   leaf_means <count> then one normalized mean per line; parse() verifies
  //                     them against the means recomputed from the edges
  std::string serialize() const;
  static SyntheticTree parse(std::istream& in);
  static SyntheticTree parse(const std::string& text);

 private:
  SyntheticTree(int k, int d, double sigma, std::uint64_t seed,
                std::vector<double> edges);

  int k_;
  int d_;
  double sigma_;
  std::uint64_t seed_;
  std::int64_t internal_count_ = 0;
  std::int64_t leaf_count_ = 0;
  std::vector<double> edge_values_;
  std::vector<double> leaf_means_;
};

// Environment view over a SyntheticTree: states are heap indices, action
// transitions are deterministic, all intermediate rewards are zero and the
// only stochastic signal is the Gaussian draw at a terminal leaf. The tree
// must outlive the adapter.
class SyntheticTreeEnv final : public Environment {
 public:
  explicit SyntheticTreeEnv(const SyntheticTree& tree) : tree_(&tree) {}

  int action_count() const override { return tree_->k(); }
  State root_state() const override { return 0; }
  State step(State state, int action) const override;
  bool is_terminal(State state) const override;
  double reward(State, int) const override { return 0.0; }
  double evaluate(State state, Rng& rng) const override;

 private:
  const SyntheticTree* tree_;
};

}  // namespace regmcts
