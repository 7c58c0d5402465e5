#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "pspect/brooks.hpp"
#include "pspect/numeric.hpp"
#include "test_support.hpp"

using namespace pspect;
using namespace testsupport;

TEST_CASE("brooks bound formula") {
    const double log2 = std::log(2.0);
    CHECK(brooks_bound(log2, 2.0) == doctest::Approx(log2 * log2 / 8.0));
    CHECK(brooks_bound(0.0, 2.0) == 0.0);
    CHECK(brooks_bound(log2, 1.0) == doctest::Approx(log2 / 2.0));
}

TEST_CASE("volume growth on the 3-regular tree approaches log 2") {
    auto gen = generate_tree_ball(3, 12, MeasurePolicy::Normalizing);
    PseudoMetric pm(gen.graph, constant_length(gen.graph, 1.0));
    std::vector<int> radii;
    for (int r = 1; r <= 10; ++r) radii.push_back(r);
    auto vg = volume_growth(gen.graph, pm, radii, CenterSpec::only({gen.root}));

    // exact ball measures: #B_r = 3*2^r - 2, all interior at depth <= 10
    for (int r = 1; r <= 10; ++r) {
        const double m_ball = 3.0 * (3.0 * std::pow(2.0, r) - 2.0);
        CHECK(vg.log_ratios[r - 1] ==
              doctest::Approx(std::log(m_ball / 12.0) / r).epsilon(1e-12));
    }
    CHECK(std::abs(vg.mu_estimate - std::log(2.0)) < 0.05);
    for (bool s : vg.saturated) CHECK_FALSE(s);
}

TEST_CASE("volume growth on a path decays toward zero") {
    auto gen = generate_tree_ball(2, 30, MeasurePolicy::Normalizing);
    PseudoMetric pm(gen.graph, constant_length(gen.graph, 1.0));
    std::vector<int> radii{4, 8, 16, 24, 28};
    auto vg = volume_growth(gen.graph, pm, radii, CenterSpec::only({gen.root}));
    // linear ball growth: (1/r) log(m(B_r)/m(B_1)) decays past its hump
    for (size_t i = 0; i + 1 < vg.log_ratios.size(); ++i)
        CHECK(vg.log_ratios[i + 1] < vg.log_ratios[i]);
    CHECK(vg.mu_estimate < 0.15);
    CHECK(vg.mu_estimate == vg.log_ratios.back()); // decaying tail attains the min
}

TEST_CASE("volume growth errors when every radius saturates") {
    WeightedGraph g = k2();
    PseudoMetric pm(g, constant_length(g, 1.0));
    CHECK_THROWS_AS(volume_growth(g, pm, {1, 2}, CenterSpec::only({0})), std::runtime_error);
}

TEST_CASE("brooks metric hypothesis check") {
    auto gen = generate_tree_ball(3, 4, MeasurePolicy::Normalizing);
    // combinatorial metric + normalizing measure: slack exactly 0 at interior
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        auto check = brooks_metric_check(gen.graph, constant_length(gen.graph, 1.0), p);
        CHECK(check.holds);
        CHECK(check.worst_slack == doctest::Approx(0.0).epsilon(1e-15));
    }
    // d = 2 fails under the normalizing measure
    auto fail = brooks_metric_check(gen.graph, constant_length(gen.graph, 2.0), 2.0);
    CHECK_FALSE(fail.holds);

    // at p = 2 the condition coincides with R_2 membership for the degree
    // metric (p/(p-1) = p there)
    WeightedGraph g = random_connected(8, 0.5, 150001, true, true);
    EdgeLength d2 = degree_metric(g, 2.0);
    auto bc = brooks_metric_check(g, d2, 2.0);
    auto rc = check_membership(g, d2, 2.0);
    CHECK(bc.worst_slack == doctest::Approx(rc.worst_slack).epsilon(1e-12));
}

TEST_CASE("test functions follow the radial formula") {
    auto gen = generate_tree_ball(3, 8, MeasurePolicy::Normalizing);
    PseudoMetric pm(gen.graph, constant_length(gen.graph, 1.0));
    const int r = 2;
    const double alpha = 0.8;
    auto tf = build_test_function(gen.graph, pm, r, gen.root, alpha);

    const auto& dist = pm.row(gen.root);
    for (int x = 0; x < gen.graph.vertex_count(); ++x) {
        const double rho = dist[x];
        if (rho <= r) {
            CHECK(tf.f[x] == doctest::Approx(std::exp(alpha * r) - 1.0));
        } else if (rho <= 2 * r) {
            CHECK(tf.f[x] == doctest::Approx(std::exp(alpha * (2 * r - rho)) - 1.0));
            CHECK(tf.g[x] == doctest::Approx(tf.f[x] + 2.0));
        } else {
            CHECK(tf.f[x] == 0.0);
            CHECK(tf.g[x] == 0.0);
        }
    }
    // spherical homogeneity: value depends on x only through the distance
    for (int x = 0; x < gen.graph.vertex_count(); ++x)
        for (int y = 0; y < x; ++y)
            if (dist[x] == dist[y]) CHECK(tf.f[x] == tf.f[y]);
}

TEST_CASE("test function at a fractional distance") {
    // alpha = 1, r = 1, dist(x0, x) = 1.5 -> f(x) = e^0.5 - 1
    WeightedGraph g = parse_graph("V a 1\nV b 1\nV c 1\nE a b 1\nE b c 1");
    PseudoMetric pm(g, EdgeLength{"d", {0.75, 0.75}});
    auto tf = build_test_function(g, pm, 1, g.index_of("a"), 1.0);
    CHECK(tf.f[g.index_of("c")] == doctest::Approx(std::exp(0.5) - 1.0));
}

TEST_CASE("exponential-sum inequality |e^s - e^t|^p <= (e^sp + e^tp)|s-t|^p / 2") {
    SplitMix64 rng(89);
    for (int trial = 0; trial < 100000; ++trial) {
        const double s = 5.0 * rng.next_double();
        const double t = 5.0 * rng.next_double();
        const double p = 1.0 + 9.0 * rng.next_double();
        const double lhs = std::pow(std::abs(std::exp(s) - std::exp(t)), p);
        const double rhs =
            0.5 * (std::exp(s * p) + std::exp(t * p)) * std::pow(std::abs(s - t), p);
        CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("pairwise Lipschitz estimate holds exhaustively for test functions") {
    auto gen = generate_tree_ball(3, 7, MeasurePolicy::Normalizing);
    PseudoMetric pm(gen.graph, constant_length(gen.graph, 1.0));
    for (double p : {1.5, 2.0}) {
        for (double alpha : {0.3, 0.6}) {
            auto tf = build_test_function(gen.graph, pm, 3, gen.root, alpha);
            for (const Edge& e : gen.graph.edges()) {
                const double lhs = std::pow(std::abs(tf.f[e.u] - tf.f[e.v]), p);
                const double rhs = std::pow(alpha, p) / 2.0 *
                                   (std::pow(tf.g[e.u], p) + std::pow(tf.g[e.v], p));
                CHECK(lhs <= rhs * (1.0 + 1e-12)); // d = 1 on edges
            }
        }
    }
}

TEST_CASE("infinite-tree norm ratio approaches one at large radii") {
    const double mu = std::log(2.0);
    for (double p : {1.5, 2.0}) {
        for (double factor : {1.05, 1.25, 1.5}) {
            const double alpha = mu / p * factor;
            const double at_40 = tree_norm_ratio(3, p, alpha, 40);
            const double at_220 = tree_norm_ratio(3, p, alpha, 220);
            const double at_260 = tree_norm_ratio(3, p, alpha, 260);
            CHECK(at_220 < at_40);
            CHECK(std::abs(at_220 - 1.0) < 0.05);
            CHECK(std::abs(at_260 - 1.0) < 0.05);
            CHECK(at_260 >= 1.0 - 1e-12); // g dominates f pointwise
        }
    }
}

TEST_CASE("brooks_verify on the 3-regular tree at p = 2") {
    SolverConfig cfg;
    auto verification = brooks_verify(BrooksFamily::tree(3), 2.0, {4, 6, 8}, cfg);
    REQUIRE(verification.rows.size() == 3);
    CHECK(verification.metric_ok);
    CHECK(verification.lambda_decreasing);
    for (const auto& row : verification.rows) {
        for (const auto& ar : row.alphas) CHECK(ar.holds); // quotient route
        CHECK(row.mu_estimate > 0.3);
    }
    // norm ratios shrink with the radius for each alpha slot
    const auto& first = verification.rows.front();
    const auto& last = verification.rows.back();
    REQUIRE(first.alphas.size() == last.alphas.size());
    for (size_t i = 0; i < first.alphas.size(); ++i)
        CHECK(last.alphas[i].norm_ratio < first.alphas[i].norm_ratio);
}

TEST_CASE("brooks_verify on the path family: lambda decreases toward zero") {
    SolverConfig cfg;
    auto verification = brooks_verify(BrooksFamily::tree(2), 2.0, {4, 8, 12, 16}, cfg);
    CHECK(verification.lambda_decreasing);
    CHECK(verification.rows.back().lambda < 0.05);
    CHECK(verification.rows.back().mu_estimate < 0.25);
}

TEST_CASE("brooks_verify at p = 1.5 stays below the bound eventually") {
    SolverConfig cfg;
    cfg.restarts = 1;
    cfg.max_iters = 3000;
    auto verification = brooks_verify(BrooksFamily::tree(3), 1.5, {4, 6, 8}, cfg);
    CHECK(verification.lambda_decreasing);
    for (const auto& row : verification.rows)
        for (const auto& ar : row.alphas) CHECK(ar.holds);
}

TEST_CASE("brooks_verify rejects bad schedules") {
    SolverConfig cfg;
    CHECK_THROWS_AS(brooks_verify(BrooksFamily::tree(3), 2.0, {}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(brooks_verify(BrooksFamily::tree(3), 2.0, {4, 4}, cfg),
                    std::invalid_argument);
}
