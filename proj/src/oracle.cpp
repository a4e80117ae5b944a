#include "regmcts/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace regmcts {

namespace {

double max_value_below(const SyntheticTree& tree, std::int64_t state) {
  if (state >= tree.internal_count()) {
    return tree.leaf_means()[state - tree.internal_count()];
  }
  double best = max_value_below(tree, state * tree.k() + 1);
  for (int a = 1; a < tree.k(); ++a) {
    best = std::max(best, max_value_below(tree, state * tree.k() + 1 + a));
  }
  return best;
}

double soft_value_below(const SyntheticTree& tree, std::int64_t state,
                        const RegularizerContext& ctx) {
  if (state >= tree.internal_count()) {
    return tree.leaf_means()[state - tree.internal_count()];
  }
  std::vector<double> q(tree.k());
  for (int a = 0; a < tree.k(); ++a) {
    q[a] = soft_value_below(tree, state * tree.k() + 1 + a, ctx);
  }
  return conjugate_value(q, ctx);
}

}  // namespace

double optimal_value_unregularized(const SyntheticTree& tree) {
  return max_value_below(tree, 0);
}

double optimal_value_regularized(const SyntheticTree& tree,
                                 RegularizerKind kind, double tau) {
  std::vector<double> uniform;
  RegularizerContext ctx{kind, tau, {}};
  if (kind == RegularizerKind::RelativeEntropy) {
    uniform.assign(tree.k(), 1.0 / static_cast<double>(tree.k()));
    ctx.prior = uniform;
  }
  return soft_value_below(tree, 0, ctx);
}

std::vector<double> root_child_values(const SyntheticTree& tree) {
  std::vector<double> values(tree.k());
  for (int a = 0; a < tree.k(); ++a) {
    values[a] = max_value_below(tree, 1 + a);
  }
  return values;
}

OracleValues make_oracles(const SyntheticTree& tree) {
  OracleValues oracles;
  oracles.root_child_values = root_child_values(tree);
  oracles.v_star = *std::max_element(oracles.root_child_values.begin(),
                                     oracles.root_child_values.end());
  oracles.v_star_uct = oracles.v_star;
  oracles.v_star_reg = oracles.v_star_uct;
  return oracles;
}

OracleValues make_oracles(const SyntheticTree& tree, RegularizerKind kind,
                          double tau) {
  OracleValues oracles = make_oracles(tree);
  oracles.v_star_reg = optimal_value_regularized(tree, kind, tau);
  return oracles;
}

}  // namespace regmcts
