#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace regmcts {

// The three convex regularizers with closed-form conjugates. Each choice
// fixes a soft-maximum operator (the conjugate), a greedy policy map (the
// conjugate's gradient) and a pair of entropy bounds used by the regret
// and error calculators.
enum class RegularizerKind {
  MaximumEntropy,   // negative Shannon entropy; softmax / log-sum-exp
  RelativeEntropy,  // KL to a reference policy; prior-weighted softmax
  TsallisEntropy,   // 1/2(||pi||^2 - 1); sparsemax / spmax
};

const char* to_string(RegularizerKind kind);

// Everything needed to evaluate one regularizer: which one, its temperature,
// and (for relative entropy only) the reference policy. `prior` is a view;
// it must outlive the call it is passed to. An empty span means absent.
struct RegularizerContext {
  RegularizerKind kind = RegularizerKind::MaximumEntropy;
  double tau = 1.0;
  std::span<const double> prior{};
};

// Throws std::invalid_argument unless tau > 0 and the prior is present with
// strictly positive entries summing to 1 (within 1e-9) exactly when the kind
// is RelativeEntropy. num_actions > 0 pins the expected prior length.
void validate_context(const RegularizerContext& ctx, std::size_t num_actions);

// Sparsemax support: indices of the largest prefix of f (sorted descending,
// ties by ascending index) whose members all satisfy
//   1 + i * f[a_i] > sum_{j<=i} f[a_j].
// Never empty. Returned in the sorted-prefix order.
std::vector<std::size_t> support_set(std::span<const double> f);

// Soft maximum of q under the context's regularizer:
//   MaximumEntropy   tau * log sum_a exp(q_a / tau)        (max-shifted)
//   RelativeEntropy  tau * log sum_a prior_a exp(q_a / tau)
//   TsallisEntropy   tau * spmax(q / tau)
double conjugate_value(std::span<const double> q, const RegularizerContext& ctx);

// Maximizing policy of <pi, q> - tau * Omega(pi); the gradient of
// conjugate_value in q. Writes into `out` (same length as q, no allocation).
void policy_into(std::span<const double> q, const RegularizerContext& ctx,
                 std::span<double> out);

std::vector<double> policy(std::span<const double> q,
                           const RegularizerContext& ctx);

// Omega(pi) itself: sum pi log pi, KL(pi || prior), or 1/2(||pi||^2 - 1).
// 0 log 0 is taken as 0. Throws std::domain_error if pi puts mass on an
// action with zero prior.
double entropy_value(std::span<const double> pi, const RegularizerContext& ctx);

// Range [L, U] of Omega over the simplex with num_actions vertices:
//   MaximumEntropy   (-log n, 0)
//   RelativeEntropy  (0, log(1 / min_a prior_a))
//   TsallisEntropy   (-(n - 1) / (2n), 0)
struct OmegaBounds {
  double lower = 0.0;
  double upper = 0.0;
};

OmegaBounds regularizer_bounds(std::size_t num_actions,
                               const RegularizerContext& ctx);

}  // namespace regmcts
