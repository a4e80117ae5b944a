#include "regmcts/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace regmcts {

namespace {

constexpr std::string_view kRegretOmitted =
    "O(n / log n) remainder with unspecified constants";
constexpr std::string_view kErrorOmitted =
    "concentration constants folded into psi";

// Range of Omega over the simplex, keyed by the minimum prior mass for
// relative entropy so callers without a full prior vector can use it too.
OmegaBounds bounds_for(RegularizerKind kind, int num_actions, double m) {
  const double n = static_cast<double>(num_actions);
  switch (kind) {
    case RegularizerKind::MaximumEntropy:
      return {-std::log(n), 0.0};
    case RegularizerKind::RelativeEntropy:
      if (!(m > 0.0 && m <= 1.0)) {
        throw std::invalid_argument("m must lie in (0, 1]");
      }
      return {0.0, std::log(1.0 / m)};
    case RegularizerKind::TsallisEntropy:
      return {-(n - 1.0) / (2.0 * n), 0.0};
  }
  throw std::logic_error("unreachable regularizer kind");
}

}  // namespace

RegretBound regret_bound(RegularizerKind kind, double tau, int num_actions,
                         int support_size, double m, std::int64_t n) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (num_actions < 1) throw std::invalid_argument("num_actions must be positive");
  if (n < 1) throw std::invalid_argument("n must be positive");
  const double actions = static_cast<double>(num_actions);
  const double steps = static_cast<double>(n);

  double value = 0.0;
  switch (kind) {
    case RegularizerKind::MaximumEntropy:
      value = tau * std::log(actions) + steps * actions / tau;
      break;
    case RegularizerKind::RelativeEntropy:
      if (!(m > 0.0 && m <= 1.0)) {
        throw std::invalid_argument("m must lie in (0, 1]");
      }
      value = tau * (std::log(actions) - 1.0 / m) + steps * actions / tau;
      break;
    case RegularizerKind::TsallisEntropy:
      if (support_size < 1 || support_size > num_actions) {
        throw std::invalid_argument(
            "support_size must lie in [1, num_actions]");
      }
      value = tau * (actions - 1.0) / actions +
              steps * static_cast<double>(support_size) / 2.0;
      break;
  }
  return {value, kRegretOmitted};
}

ErrorBound error_bound(RegularizerKind kind, double tau, int num_actions,
                       double m, double gamma, double psi) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (num_actions < 1) throw std::invalid_argument("num_actions must be positive");
  if (!(psi >= 0.0)) throw std::invalid_argument("psi must be non-negative");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
  if (gamma >= 1.0) {
    throw std::domain_error("error bound is undefined at gamma = 1");
  }
  const OmegaBounds range = bounds_for(kind, num_actions, m);
  const double spread = tau * (range.upper - range.lower) / (1.0 - gamma);
  return {-psi - spread, psi, kErrorOmitted};
}

}  // namespace regmcts
