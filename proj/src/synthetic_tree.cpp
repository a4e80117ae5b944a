#include "regmcts/synthetic_tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "regmcts/numeric_text.hpp"

namespace regmcts {

namespace {

std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (std::int64_t{1} << 27)) {
      throw std::invalid_argument("synthetic tree too large (k^d leaves)");
    }
    out *= base;
  }
  return out;
}

void expect_token(std::istream& in, const std::string& expected) {
  std::string token;
  if (!(in >> token) || token != expected) {
    throw std::invalid_argument("synthetic tree parse: expected '" + expected +
                                "', got '" + token + "'");
  }
}

}  // namespace

SyntheticTree::SyntheticTree(int k, int d, double sigma, std::uint64_t seed,
                             std::vector<double> edges)
    : k_(k), d_(d), sigma_(sigma), seed_(seed), edge_values_(std::move(edges)) {
  if (k_ < 2) throw std::invalid_argument("k must be at least 2");
  if (d_ < 1) throw std::invalid_argument("d must be at least 1");
  if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) {
    throw std::invalid_argument("sigma must be non-negative");
  }
  leaf_count_ = checked_pow(k_, d_);
  internal_count_ = (leaf_count_ - 1) / (k_ - 1);
  if (static_cast<std::int64_t>(edge_values_.size()) != internal_count_ * k_) {
    throw std::invalid_argument("edge value count does not match k and d");
  }

  // Raw leaf mean = sum of edge values on the root path; one pass over the
  // internal nodes in index (breadth-first) order fills every path sum.
  std::vector<double> path_sum(static_cast<std::size_t>(node_count()), 0.0);
  for (std::int64_t i = 0; i < internal_count_; ++i) {
    for (int a = 0; a < k_; ++a) {
      const std::int64_t child = i * k_ + 1 + a;
      path_sum[child] = path_sum[i] + edge_values_[i * k_ + a];
    }
  }
  leaf_means_.assign(path_sum.begin() + internal_count_, path_sum.end());

  const auto [lo, hi] = std::minmax_element(leaf_means_.begin(), leaf_means_.end());
  const double range = *hi - *lo;
  if (range > 0.0) {
    const double min = *lo;
    for (double& m : leaf_means_) m = (m - min) / range;
  } else {
    // All path sums equal; min-max normalization is undefined, use 0.5.
    std::fill(leaf_means_.begin(), leaf_means_.end(), 0.5);
  }
}

SyntheticTree SyntheticTree::generate(int k, int d, std::uint64_t seed,
                                      double sigma) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  const std::int64_t leaves = checked_pow(k, d);
  const std::int64_t internal = (leaves - 1) / (k - 1);
  Rng rng(seed);
  std::vector<double> edges(static_cast<std::size_t>(internal * k));
  for (double& e : edges) e = rng.next_double();
  return SyntheticTree(k, d, sigma, seed, std::move(edges));
}

SyntheticTree SyntheticTree::from_edges(int k, int d, std::vector<double> edges,
                                        double sigma, std::uint64_t seed) {
  return SyntheticTree(k, d, sigma, seed, std::move(edges));
}

double SyntheticTree::edge_value(std::int64_t internal_node, int action) const {
  if (internal_node < 0 || internal_node >= internal_count_) {
    throw std::invalid_argument("internal node index out of range");
  }
  if (action < 0 || action >= k_) {
    throw std::invalid_argument("action index out of range");
  }
  return edge_values_[internal_node * k_ + action];
}

double SyntheticTree::sample_leaf(std::int64_t leaf, Rng& rng) const {
  if (leaf < 0 || leaf >= leaf_count_) {
    throw std::invalid_argument("leaf index out of range");
  }
  return rng.next_gaussian(leaf_means_[leaf], sigma_);
}

std::string SyntheticTree::serialize() const {
  std::ostringstream out;
  out << "regmcts-synthetic-tree v1\n";
  out << "k " << k_ << "\n";
  out << "d " << d_ << "\n";
  out << "seed " << seed_ << "\n";
  out << "sigma " << format_double(sigma_) << "\n";
  out << "edges " << edge_values_.size() << "\n";
  for (double e : edge_values_) out << format_double(e) << "\n";
  out << "leaf_means " << leaf_means_.size() << "\n";
  for (double m : leaf_means_) out << format_double(m) << "\n";
  return out.str();
}

SyntheticTree SyntheticTree::parse(std::istream& in) {
  expect_token(in, "regmcts-synthetic-tree");
  expect_token(in, "v1");
  std::string token;

  expect_token(in, "k");
  if (!(in >> token)) throw std::invalid_argument("synthetic tree parse: truncated");
  const int k = static_cast<int>(parse_int(token));
  expect_token(in, "d");
  if (!(in >> token)) throw std::invalid_argument("synthetic tree parse: truncated");
  const int d = static_cast<int>(parse_int(token));
  expect_token(in, "seed");
  std::uint64_t seed = 0;
  if (!(in >> seed)) throw std::invalid_argument("synthetic tree parse: bad seed");
  expect_token(in, "sigma");
  if (!(in >> token)) throw std::invalid_argument("synthetic tree parse: truncated");
  const double sigma = parse_double(token);

  expect_token(in, "edges");
  std::int64_t edge_count = 0;
  if (!(in >> edge_count) || edge_count < 0) {
    throw std::invalid_argument("synthetic tree parse: bad edge count");
  }
  std::vector<double> edges(static_cast<std::size_t>(edge_count));
  for (double& e : edges) {
    if (!(in >> token)) throw std::invalid_argument("synthetic tree parse: truncated edges");
    e = parse_double(token);
  }

  expect_token(in, "leaf_means");
  std::int64_t mean_count = 0;
  if (!(in >> mean_count) || mean_count < 0) {
    throw std::invalid_argument("synthetic tree parse: bad leaf count");
  }
  SyntheticTree tree(k, d, sigma, seed, std::move(edges));
  if (mean_count != tree.leaf_count()) {
    throw std::invalid_argument("synthetic tree parse: leaf count mismatch");
  }
  for (std::int64_t i = 0; i < mean_count; ++i) {
    if (!(in >> token)) throw std::invalid_argument("synthetic tree parse: truncated means");
    const double stored = parse_double(token);
    if (stored != tree.leaf_means_[i]) {
      throw std::invalid_argument(
          "synthetic tree parse: stored leaf mean disagrees with edges");
    }
  }
  return tree;
}

SyntheticTree SyntheticTree::parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

Environment::State SyntheticTreeEnv::step(State state, int action) const {
  if (is_terminal(state)) {
    throw std::invalid_argument("cannot step from a terminal state");
  }
  if (action < 0 || action >= tree_->k()) {
    throw std::invalid_argument("action index out of range");
  }
  return state * tree_->k() + 1 + action;
}

bool SyntheticTreeEnv::is_terminal(State state) const {
  if (state < 0 || state >= tree_->node_count()) {
    throw std::invalid_argument("state out of range");
  }
  return state >= tree_->internal_count();
}

double SyntheticTreeEnv::evaluate(State state, Rng& rng) const {
  if (!is_terminal(state)) {
    throw std::invalid_argument("evaluate requires a terminal state");
  }
  return tree_->sample_leaf(state - tree_->internal_count(), rng);
}

}  // namespace regmcts
