#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "regmcts/bounds.hpp"
#include "regmcts/metrics.hpp"
#include "regmcts/oracle.hpp"
#include "regmcts/synthetic_tree.hpp"

using namespace regmcts;

namespace {

// Hand-rolled two-action conjugates, written independently of the library
// formulas so the backward-induction cross-check has its own code path.
double lse2(double a, double b, double tau) {
  return tau * std::log(std::exp(a / tau) + std::exp(b / tau));
}

double rel2_uniform(double a, double b, double tau) {
  return tau * std::log(0.5 * std::exp(a / tau) + 0.5 * std::exp(b / tau));
}

double spmax2(double a, double b, double tau) {
  const double f1 = std::max(a, b) / tau;
  const double f2 = std::min(a, b) / tau;
  if (f1 - f2 >= 1.0) {
    return tau * f1;  // support collapses to the top action
  }
  const double s = f1 + f2;
  return tau * ((f1 * f1 + f2 * f2) / 2.0 - (s - 1.0) * (s - 1.0) / 4.0 + 0.5);
}

double conj2(RegularizerKind kind, double a, double b, double tau) {
  switch (kind) {
    case RegularizerKind::MaximumEntropy:
      return lse2(a, b, tau);
    case RegularizerKind::RelativeEntropy:
      return rel2_uniform(a, b, tau);
    case RegularizerKind::TsallisEntropy:
      return spmax2(a, b, tau);
  }
  return 0.0;
}

constexpr RegularizerKind kKinds[] = {RegularizerKind::MaximumEntropy,
                                      RegularizerKind::RelativeEntropy,
                                      RegularizerKind::TsallisEntropy};

}  // namespace

TEST_CASE("unregularized optimum is the best leaf mean") {
  const auto d1 = SyntheticTree::from_edges(2, 1, {0.2, 0.9}, 0.05);
  CHECK(optimal_value_unregularized(d1) == doctest::Approx(1.0));

  const auto d2 = SyntheticTree::from_edges(
      2, 2, {0.5, 0.1, 0.4, 0.0, 0.3, 0.9}, 0.05);
  CHECK(optimal_value_unregularized(d2) == doctest::Approx(1.0));

  // normalization pins the best leaf at 1 for any non-degenerate tree
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto tree = SyntheticTree::generate(3, 3, seed);
    CHECK(optimal_value_unregularized(tree) == doctest::Approx(1.0));
  }
}

TEST_CASE("regularized optimum examples") {
  const auto tree = SyntheticTree::from_edges(2, 1, {0.2, 0.9}, 0.05);

  // 0.1 * log(e^0 + e^10)
  CHECK(optimal_value_regularized(tree, RegularizerKind::MaximumEntropy, 0.1) ==
        doctest::Approx(1.0000045398899217).epsilon(1e-14));

  // sparse support collapses to the mean-1 arm
  CHECK(optimal_value_regularized(tree, RegularizerKind::TsallisEntropy, 0.1) ==
        doctest::Approx(1.0).epsilon(1e-14));

  for (RegularizerKind kind : kKinds) {
    CHECK(std::abs(optimal_value_regularized(tree, kind, 1e-6) - 1.0) <= 1e-5);
  }
}

TEST_CASE("regularized optimum matches an independent recursion for d <= 2") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto d1 = SyntheticTree::generate(2, 1, seed);
    const auto d2 = SyntheticTree::generate(2, 2, seed);
    const auto& m1 = d1.leaf_means();
    const auto& m2 = d2.leaf_means();
    for (RegularizerKind kind : kKinds) {
      for (double tau : {0.01, 0.1, 1.0}) {
        const double expect_d1 = conj2(kind, m1[0], m1[1], tau);
        CHECK(std::abs(optimal_value_regularized(d1, kind, tau) - expect_d1) <=
              1e-10);
        const double expect_d2 =
            conj2(kind, conj2(kind, m2[0], m2[1], tau),
                  conj2(kind, m2[2], m2[3], tau), tau);
        CHECK(std::abs(optimal_value_regularized(d2, kind, tau) - expect_d2) <=
              1e-10);
      }
    }
  }
}

TEST_CASE("per-level conjugate bounds squeeze the regularized optimum") {
  // Each induction level replaces max with the conjugate, which moves the
  // value by at most tau*[L, U]; over depth d the drift accumulates to
  // v_star - d*tau*U <= v_reg <= v_star - d*tau*L.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (int d = 1; d <= 3; ++d) {
      const auto tree = SyntheticTree::generate(3, d, 7000 + seed);
      const double v_star = optimal_value_unregularized(tree);
      for (RegularizerKind kind : kKinds) {
        for (double tau : {0.01, 0.1, 1.0}) {
          std::vector<double> uniform(3, 1.0 / 3.0);
          RegularizerContext ctx{kind, tau, {}};
          if (kind == RegularizerKind::RelativeEntropy) ctx.prior = uniform;
          const auto b = regularizer_bounds(3, ctx);
          const double v_reg = optimal_value_regularized(tree, kind, tau);
          CHECK(v_reg >= v_star - d * tau * b.upper - 1e-9);
          CHECK(v_reg <= v_star - d * tau * b.lower + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("soft optimum grows with temperature for max and tsallis entropy") {
  const double taus[] = {1e-6, 0.01, 0.1, 1.0};
  for (std::uint64_t seed = 50; seed < 55; ++seed) {
    const auto tree = SyntheticTree::generate(4, 2, seed);
    for (RegularizerKind kind :
         {RegularizerKind::MaximumEntropy, RegularizerKind::TsallisEntropy}) {
      double prev = optimal_value_regularized(tree, kind, taus[0]);
      for (int i = 1; i < 4; ++i) {
        const double next = optimal_value_regularized(tree, kind, taus[i]);
        CHECK(next >= prev - 1e-12);
        prev = next;
      }
    }
  }
}

TEST_CASE("root child values are per-subtree optima") {
  const auto d1 = SyntheticTree::from_edges(2, 1, {0.2, 0.9}, 0.05);
  CHECK(root_child_values(d1) == std::vector<double>{0.0, 1.0});

  const auto d2 = SyntheticTree::from_edges(
      2, 2, {0.5, 0.1, 0.4, 0.0, 0.3, 0.9}, 0.05);
  const auto values = root_child_values(d2);
  REQUIRE(values.size() == 2);
  CHECK(values[0] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(values[1] == doctest::Approx(1.0));

  // dominant leaf under child 0: only V_0 reaches the normalized maximum
  const auto dominant = SyntheticTree::from_edges(
      2, 2, {0.9, 0.0, 0.8, 0.1, 0.2, 0.3}, 0.05);
  const auto v = root_child_values(dominant);
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] < 1.0);

  const auto oracles = make_oracles(d2);
  CHECK(oracles.v_star == doctest::Approx(1.0));
  CHECK(oracles.v_star_uct == oracles.v_star);
  CHECK(oracles.v_star_reg == oracles.v_star_uct);
}

TEST_CASE("regret traces") {
  const std::vector<double> child_values{0.0, 1.0};

  const std::vector<int> always_best{1, 1, 1, 1};
  const auto zero = regret_trace(always_best, child_values);
  for (double r : zero) CHECK(r == doctest::Approx(0.0));

  const std::vector<int> mixed{0, 1, 1};
  const auto trace = regret_trace(mixed, child_values);
  REQUIRE(trace.size() == 3);
  CHECK(trace[0] == doctest::Approx(1.0));
  CHECK(trace[1] == doctest::Approx(1.0));
  CHECK(trace[2] == doctest::Approx(1.0));

  const std::vector<double> gap{0.25, 1.0};
  const std::vector<int> always_worst{0, 0, 0};
  const auto linear = regret_trace(always_worst, gap);
  CHECK(linear[0] == doctest::Approx(0.75));
  CHECK(linear[1] == doctest::Approx(1.5));
  CHECK(linear[2] == doctest::Approx(2.25));

  // non-negative and non-decreasing for arbitrary choices
  Rng rng(808);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values(4);
    for (double& v : values) v = rng.next_double();
    std::vector<int> choices(100);
    for (int& c : choices) c = rng.next_index(4);
    const auto r = regret_trace(choices, values);
    double prev = 0.0;
    for (double x : r) {
      CHECK(x >= prev - 1e-12);
      prev = x;
    }
  }

  const std::vector<int> bad{7};
  CHECK_THROWS_AS(regret_trace(bad, child_values), std::invalid_argument);
}

TEST_CASE("regret bound explicit terms") {
  const auto max_bound =
      regret_bound(RegularizerKind::MaximumEntropy, 0.1, 2, 2, 0.0, 100);
  CHECK(max_bound.explicit_terms ==
        doctest::Approx(0.1 * std::log(2.0) + 2000.0).epsilon(1e-12));
  CHECK(!max_bound.omitted.empty());

  const auto tsallis_bound =
      regret_bound(RegularizerKind::TsallisEntropy, 0.1, 16, 2, 0.0, 100);
  CHECK(tsallis_bound.explicit_terms ==
        doctest::Approx(100.09375).epsilon(1e-12));

  // tighter than maximum entropy at high branching
  for (int support = 1; support <= 16; ++support) {
    const auto t =
        regret_bound(RegularizerKind::TsallisEntropy, 0.1, 16, support, 0.0, 100);
    const auto m =
        regret_bound(RegularizerKind::MaximumEntropy, 0.1, 16, 16, 0.0, 100);
    CHECK(t.explicit_terms < m.explicit_terms);
  }

  const auto rel_bound =
      regret_bound(RegularizerKind::RelativeEntropy, 0.1, 2, 2, 0.5, 100);
  CHECK(rel_bound.explicit_terms ==
        doctest::Approx(0.1 * (std::log(2.0) - 2.0) + 2000.0).epsilon(1e-12));

  CHECK_THROWS_AS(
      regret_bound(RegularizerKind::RelativeEntropy, 0.1, 2, 2, 0.0, 100),
      std::invalid_argument);
}

TEST_CASE("error bound specializations") {
  const auto max_bound =
      error_bound(RegularizerKind::MaximumEntropy, 0.1, 2, 0.0, 0.99, 0.0);
  CHECK(max_bound.lower ==
        doctest::Approx(-0.1 * std::log(2.0) / 0.01).epsilon(1e-9));
  CHECK(max_bound.upper == 0.0);

  const auto tsallis_bound =
      error_bound(RegularizerKind::TsallisEntropy, 0.1, 2, 0.0, 0.99, 0.0);
  CHECK(tsallis_bound.lower == doctest::Approx(-2.5).epsilon(1e-9));

  // the sparse lower bound is never below the softmax one
  for (int n = 2; n <= 64; ++n) {
    const auto t =
        error_bound(RegularizerKind::TsallisEntropy, 0.1, n, 0.0, 0.99, 0.5);
    const auto m =
        error_bound(RegularizerKind::MaximumEntropy, 0.1, n, 0.0, 0.99, 0.5);
    CHECK(t.lower >= m.lower);
    CHECK(t.upper == m.upper);
  }

  CHECK_THROWS_AS(
      error_bound(RegularizerKind::MaximumEntropy, 0.1, 2, 0.0, 1.0, 0.0),
      std::domain_error);
}

TEST_CASE("compute_metrics assembles traces against the oracles") {
  const auto tree = SyntheticTree::from_edges(2, 1, {0.2, 0.9}, 0.05);

  SearchResult result{1,
                      {0.5, 0.75, 1.0},
                      {0, 1, 1},
                      SearchTree(2)};
  RunMeta meta{3, 4, "TENTS", 2, 1, 0.1, 0.1};

  SUBCASE("eps columns subtract the respective optima") {
    const auto oracles =
        make_oracles(tree, RegularizerKind::TsallisEntropy, 0.1);
    const auto records = compute_metrics(result, oracles, meta);
    REQUIRE(records.size() == 3);
    CHECK(records[0].sim == 1);
    CHECK(records[2].sim == 3);
    for (const auto& rec : records) {
      CHECK(rec.tree_id == 3);
      CHECK(rec.run_id == 4);
      CHECK(rec.algorithm == "TENTS");
      CHECK(rec.eps_omega ==
            doctest::Approx(rec.v_omega - oracles.v_star_reg));
      CHECK(rec.eps_uct == doctest::Approx(rec.v_omega - oracles.v_star_uct));
    }
    CHECK(records[0].cum_regret == doctest::Approx(1.0));
    CHECK(records[1].cum_regret == doctest::Approx(1.0));
    CHECK(records[2].cum_regret == doctest::Approx(1.0));
  }

  SUBCASE("a run matching the oracle has zero eps_omega") {
    auto oracles = make_oracles(tree, RegularizerKind::TsallisEntropy, 0.1);
    SearchResult exact{1,
                       {oracles.v_star_reg, oracles.v_star_reg},
                       {1, 1},
                       SearchTree(2)};
    const auto records = compute_metrics(exact, oracles, meta);
    for (const auto& rec : records) {
      CHECK(rec.eps_omega == doctest::Approx(0.0));
    }
  }

  SUBCASE("unregularized oracles make eps_omega equal eps_uct") {
    const auto oracles = make_oracles(tree);
    const auto records = compute_metrics(result, oracles, meta);
    for (const auto& rec : records) {
      CHECK(rec.eps_omega == doctest::Approx(rec.eps_uct));
    }
  }

  SUBCASE("misaligned traces are rejected") {
    SearchResult broken{0, {0.5}, {0, 1}, SearchTree(2)};
    const auto oracles = make_oracles(tree);
    CHECK_THROWS_AS(compute_metrics(broken, oracles, meta),
                    std::invalid_argument);
  }
}
