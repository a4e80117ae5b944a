#include "regmcts/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace regmcts {

namespace {

constexpr double kSimplexTol = 1e-9;

void validate_q(std::span<const double> q) {
  if (q.empty()) {
    throw std::invalid_argument("q vector must be non-empty");
  }
  for (double v : q) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("q vector entries must be finite");
    }
  }
}

void validate_pi(std::span<const double> pi) {
  if (pi.empty()) {
    throw std::invalid_argument("policy vector must be non-empty");
  }
  double sum = 0.0;
  for (double v : pi) {
    if (!(v >= 0.0 && v <= 1.0 + kSimplexTol)) {
      throw std::invalid_argument("policy entries must lie in [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument("policy entries must sum to 1");
  }
}

double max_of(std::span<const double> q) {
  return *std::max_element(q.begin(), q.end());
}

}  // namespace

const char* to_string(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::MaximumEntropy:
      return "maximum-entropy";
    case RegularizerKind::RelativeEntropy:
      return "relative-entropy";
    case RegularizerKind::TsallisEntropy:
      return "tsallis-entropy";
  }
  return "unknown";
}

void validate_context(const RegularizerContext& ctx, std::size_t num_actions) {
  if (num_actions == 0) {
    throw std::invalid_argument("num_actions must be positive");
  }
  if (!(ctx.tau > 0.0) || !std::isfinite(ctx.tau)) {
    throw std::invalid_argument("tau must be positive and finite");
  }
  const bool wants_prior = ctx.kind == RegularizerKind::RelativeEntropy;
  if (!wants_prior) {
    if (!ctx.prior.empty()) {
      throw std::invalid_argument(
          "prior must be absent unless kind is relative entropy");
    }
    return;
  }
  if (ctx.prior.size() != num_actions) {
    throw std::invalid_argument(
        "relative entropy requires a prior over all actions");
  }
  double sum = 0.0;
  for (double p : ctx.prior) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("prior entries must be strictly positive");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    throw std::invalid_argument("prior entries must sum to 1");
  }
}

std::vector<std::size_t> support_set(std::span<const double> f) {
  if (f.empty()) {
    throw std::invalid_argument("support_set: input must be non-empty");
  }
  for (double v : f) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("support_set: entries must be finite");
    }
  }
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (f[a] != f[b]) return f[a] > f[b];
    return a < b;  // ties by ascending original index
  });

  // Largest prefix length i with 1 + i * f[order[i-1]] > sum_{j<i} f[order[j]].
  std::size_t keep = 1;
  double prefix_sum = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double v = f[order[i]];
    prefix_sum += v;
    const double rank = static_cast<double>(i + 1);
    if (1.0 + rank * v > prefix_sum) {
      keep = i + 1;
    }
  }
  order.resize(keep);
  return order;
}

double conjugate_value(std::span<const double> q,
                       const RegularizerContext& ctx) {
  validate_q(q);
  validate_context(ctx, q.size());
  const double tau = ctx.tau;

  switch (ctx.kind) {
    case RegularizerKind::MaximumEntropy: {
      const double m = max_of(q);
      double acc = 0.0;
      for (double v : q) acc += std::exp((v - m) / tau);
      return m + tau * std::log(acc);
    }
    case RegularizerKind::RelativeEntropy: {
      const double m = max_of(q);
      double acc = 0.0;
      for (std::size_t a = 0; a < q.size(); ++a) {
        acc += ctx.prior[a] * std::exp((q[a] - m) / tau);
      }
      return m + tau * std::log(acc);
    }
    case RegularizerKind::TsallisEntropy: {
      // tau * spmax(q / tau): over the support K,
      //   sum_K (f_a^2/2 - (sum_K f - 1)^2 / (2 |K|^2)) + 1/2.
      std::vector<double> f(q.size());
      for (std::size_t a = 0; a < q.size(); ++a) f[a] = q[a] / tau;
      const auto support = support_set(f);
      double support_sum = 0.0;
      for (std::size_t a : support) support_sum += f[a];
      const double card = static_cast<double>(support.size());
      const double shift = support_sum - 1.0;
      double spmax = 0.0;
      for (std::size_t a : support) {
        spmax += f[a] * f[a] / 2.0 - shift * shift / (2.0 * card * card);
      }
      spmax += 0.5;
      return tau * spmax;
    }
  }
  throw std::logic_error("unreachable regularizer kind");
}

void policy_into(std::span<const double> q, const RegularizerContext& ctx,
                 std::span<double> out) {
  validate_q(q);
  validate_context(ctx, q.size());
  if (out.size() != q.size()) {
    throw std::invalid_argument("policy output span has wrong length");
  }
  const double tau = ctx.tau;

  switch (ctx.kind) {
    case RegularizerKind::MaximumEntropy: {
      const double m = max_of(q);
      double acc = 0.0;
      for (std::size_t a = 0; a < q.size(); ++a) {
        out[a] = std::exp((q[a] - m) / tau);
        acc += out[a];
      }
      for (double& v : out) v /= acc;
      return;
    }
    case RegularizerKind::RelativeEntropy: {
      const double m = max_of(q);
      double acc = 0.0;
      for (std::size_t a = 0; a < q.size(); ++a) {
        out[a] = ctx.prior[a] * std::exp((q[a] - m) / tau);
        acc += out[a];
      }
      for (double& v : out) v /= acc;
      return;
    }
    case RegularizerKind::TsallisEntropy: {
      // max{f_a - (sum_K f - 1)/|K|, 0}, the sparsemax of f = q / tau.
      std::vector<double> f(q.size());
      for (std::size_t a = 0; a < q.size(); ++a) f[a] = q[a] / tau;
      const auto support = support_set(f);
      double support_sum = 0.0;
      for (std::size_t a : support) support_sum += f[a];
      const double threshold =
          (support_sum - 1.0) / static_cast<double>(support.size());
      for (std::size_t a = 0; a < q.size(); ++a) {
        out[a] = std::max(f[a] - threshold, 0.0);
      }
      return;
    }
  }
  throw std::logic_error("unreachable regularizer kind");
}

std::vector<double> policy(std::span<const double> q,
                           const RegularizerContext& ctx) {
  std::vector<double> out(q.size());
  policy_into(q, ctx, out);
  return out;
}

double entropy_value(std::span<const double> pi,
                     const RegularizerContext& ctx) {
  validate_pi(pi);
  if (!(ctx.tau > 0.0)) {
    throw std::invalid_argument("tau must be positive");
  }
  switch (ctx.kind) {
    case RegularizerKind::MaximumEntropy: {
      double acc = 0.0;
      for (double p : pi) {
        if (p > 0.0) acc += p * std::log(p);
      }
      return acc;
    }
    case RegularizerKind::RelativeEntropy: {
      if (ctx.prior.size() != pi.size()) {
        throw std::invalid_argument(
            "relative entropy requires a prior over all actions");
      }
      double acc = 0.0;
      for (std::size_t a = 0; a < pi.size(); ++a) {
        if (pi[a] > 0.0) {
          if (!(ctx.prior[a] > 0.0)) {
            throw std::domain_error(
                "policy puts mass on an action with zero prior");
          }
          acc += pi[a] * std::log(pi[a] / ctx.prior[a]);
        }
      }
      return acc;
    }
    case RegularizerKind::TsallisEntropy: {
      double norm_sq = 0.0;
      for (double p : pi) norm_sq += p * p;
      return 0.5 * (norm_sq - 1.0);
    }
  }
  throw std::logic_error("unreachable regularizer kind");
}

OmegaBounds regularizer_bounds(std::size_t num_actions,
                               const RegularizerContext& ctx) {
  if (num_actions == 0) {
    throw std::invalid_argument("num_actions must be positive");
  }
  const double n = static_cast<double>(num_actions);
  switch (ctx.kind) {
    case RegularizerKind::MaximumEntropy:
      return {-std::log(n), 0.0};
    case RegularizerKind::RelativeEntropy: {
      if (ctx.prior.size() != num_actions) {
        throw std::invalid_argument(
            "relative entropy bounds require the prior");
      }
      double min_prior = std::numeric_limits<double>::infinity();
      for (double p : ctx.prior) {
        if (!(p > 0.0)) {
          throw std::invalid_argument("prior entries must be strictly positive");
        }
        min_prior = std::min(min_prior, p);
      }
      // sup over the simplex of KL(pi || prior) is attained at the vertex of
      // the smallest prior mass.
      return {0.0, std::log(1.0 / min_prior)};
    }
    case RegularizerKind::TsallisEntropy:
      return {-(n - 1.0) / (2.0 * n), 0.0};
  }
  throw std::logic_error("unreachable regularizer kind");
}

}  // namespace regmcts
