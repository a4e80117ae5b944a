#pragma once

#include <vector>

#include "regmcts/regularizer.hpp"
#include "regmcts/synthetic_tree.hpp"

namespace regmcts {

// Exact ground truth for one synthetic tree, by backward induction.
struct OracleValues {
  double v_star_uct = 0.0;  // unregularized optimal root value
  double v_star_reg = 0.0;  // soft optimal root value for the configured
                            // regularizer (equals v_star_uct when none)
  std::vector<double> root_child_values;  // unregularized optimum per root arm
  double v_star = 0.0;                    // max of root_child_values
};

// Backward induction with hard max; with leaf-only rewards this equals the
// largest leaf mean.
double optimal_value_unregularized(const SyntheticTree& tree);

// Backward induction with the conjugate soft maximum in place of max. The
// relative-entropy induction uses uniform priors at every node.
double optimal_value_regularized(const SyntheticTree& tree,
                                 RegularizerKind kind, double tau);

// Unregularized optimal value of each root child's subtree.
std::vector<double> root_child_values(const SyntheticTree& tree);

// Ground truth for an unregularized (UCT) run: v_star_reg = v_star_uct.
OracleValues make_oracles(const SyntheticTree& tree);

// Ground truth for a regularized run.
OracleValues make_oracles(const SyntheticTree& tree, RegularizerKind kind,
                          double tau);

}  // namespace regmcts
