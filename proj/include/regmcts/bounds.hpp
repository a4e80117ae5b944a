#pragma once

#include <cstdint>
#include <string_view>

#include "regmcts/regularizer.hpp"

namespace regmcts {

// Closed-form part of the expected-regret bound after n simulations at a
// node with num_actions arms:
//   maximum entropy   tau * log(n_a) + n * n_a / tau
//   relative entropy  tau * (log(n_a) - 1/m) + n * n_a / tau
//   tsallis entropy   tau * (n_a - 1) / n_a + n * support_size / 2
// `omitted` names the remainder that has no computable form.
struct RegretBound {
  double explicit_terms = 0.0;
  std::string_view omitted;
};

// m is the minimum prior probability and only applies to relative entropy.
// support_size is the sparse support cardinality and only applies to
// Tsallis entropy (use num_actions when unknown).
RegretBound regret_bound(RegularizerKind kind, double tau, int num_actions,
                         int support_size, double m, std::int64_t n);

// Two-sided bound on the root value-estimate error from the concentration
// analysis: (-psi - tau * (U - L) / (1 - gamma), +psi), where [L, U] is the
// regularizer's range and psi is the caller-supplied concentration radius
// (its constants are not computable). Requires gamma in [0, 1).
struct ErrorBound {
  double lower = 0.0;
  double upper = 0.0;
  std::string_view omitted;
};

ErrorBound error_bound(RegularizerKind kind, double tau, int num_actions,
                       double m, double gamma, double psi);

}  // namespace regmcts
