#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "pspect/cheeger.hpp"
#include "pspect/eigensolver.hpp"
#include "pspect/numeric.hpp"
#include "test_support.hpp"

using namespace pspect;
using namespace testsupport;

namespace {
SolverConfig quick_cfg(int restarts = 2) {
    SolverConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = 4000;
    return cfg;
}
} // namespace

TEST_CASE("linear oracle on hand-solvable spectra") {
    // K2: characteristic polynomial gives eigenvalues {0, 2}
    CHECK(linear_oracle(k2(), OracleVariant::Gap) == doctest::Approx(2.0).epsilon(1e-12));
    // complete(n) has lambda_1 = n
    for (int n : {3, 5, 8})
        CHECK(linear_oracle(generate_complete(n).graph, OracleVariant::Gap) ==
              doctest::Approx(double(n)).epsilon(1e-10));
    // cycle(4): eigenvalues {0, 2, 2, 4}
    CHECK(linear_oracle(generate_cycle(4).graph, OracleVariant::Gap) ==
          doctest::Approx(2.0).epsilon(1e-10));
    // path3: eigenvalues {0, 1, 3}
    CHECK(linear_oracle(path3(), OracleVariant::Gap) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("iterative oracle agrees with the dense oracle") {
    for (int trial = 0; trial < 10; ++trial) {
        WeightedGraph g = random_connected(18, 0.3, 60000 + trial, trial % 2 == 0);
        const double dense = linear_oracle(g, OracleVariant::Gap);
        const double iter = linear_oracle(g, OracleVariant::Gap, {}, /*dense_limit=*/4);
        CHECK(iter == doctest::Approx(dense).epsilon(1e-9));

        auto gen = generate_tree_ball(3, 4, MeasurePolicy::Normalizing);
        const double dg = linear_oracle(gen.graph, OracleVariant::Ground, gen.interior);
        const double ig = linear_oracle(gen.graph, OracleVariant::Ground, gen.interior, 4);
        CHECK(ig == doctest::Approx(dg).epsilon(1e-9));
    }
}

TEST_CASE("solve_gap on K2 and path3 hits the linear oracle") {
    auto r = solve_gap(k2(), 2.0, quick_cfg());
    CHECK(r.lambda_estimate == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.converged);
    // minimizer proportional to (1,-1), sign-fixed and p-normalized
    CHECK(r.minimizer[0] == doctest::Approx(-r.minimizer[1]));

    auto rp = solve_gap(path3(), 2.0, quick_cfg());
    CHECK(rp.lambda_estimate == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("solve_gap answers disconnected graphs analytically") {
    WeightedGraph g = parse_graph("V a 1\nV b 1\nV c 1\nV d 1\nE a b 1\nE c d 1");
    auto r = solve_gap(g, 2.5, quick_cfg());
    CHECK(r.lambda_estimate == 0.0);
    CHECK(r.residual == 0.0);
    CHECK(r.converged);
    CHECK(r.minimizer[0] != r.minimizer[2]); // non-constant across components
}

TEST_CASE("solve_gap matches the oracle at p=2 on random graphs") {
    for (int trial = 0; trial < 100; ++trial) {
        WeightedGraph g = random_connected(5 + trial % 26, 0.35, 70000 + trial,
                                           trial % 2 == 0, trial % 3 == 0);
        const double oracle = linear_oracle(g, OracleVariant::Gap);
        auto r = solve_gap(g, 2.0, quick_cfg(1));
        CHECK(std::abs(r.lambda_estimate - oracle) / oracle <= 1e-6);
        CHECK(r.lambda_estimate >= oracle * (1.0 - 1e-9)); // upper-bound soundness
    }
}

TEST_CASE("reported lambda is exactly the recomputed quotient") {
    for (int trial = 0; trial < 30; ++trial) {
        WeightedGraph g = random_connected(6, 0.5, 80000 + trial);
        for (double p : {1.5, 2.0, 3.0}) {
            auto r = solve_gap(g, p, quick_cfg());
            auto q = rayleigh(g, r.minimizer, p, QuotientVariant::Gap);
            CHECK(r.lambda_estimate == q.quotient);
        }
    }
}

TEST_CASE("converged minimizers are stationary with balanced signs") {
    for (int trial = 0; trial < 25; ++trial) {
        WeightedGraph g = random_connected(5 + trial % 6, 0.5, 90000 + trial, trial % 2 == 0);
        for (double p : {2.0, 2.5, 3.0}) {
            auto r = solve_gap(g, p, quick_cfg());
            REQUIRE(r.converged);
            CHECK(r.residual <= 1e-6 * std::max(1.0, r.lambda_estimate));
            KahanSum signed_mean;
            bool pos = false, neg = false;
            for (int x = 0; x < g.vertex_count(); ++x) {
                signed_mean.add(g.measure(x) * phi_p(r.minimizer[x], p));
                pos = pos || r.minimizer[x] > 0.0;
                neg = neg || r.minimizer[x] < 0.0;
            }
            CHECK(std::abs(signed_mean.value()) <= 1e-8);
            CHECK(pos);
            CHECK(neg);
        }
    }
}

TEST_CASE("determinism: identical configs give identical results") {
    WeightedGraph g = random_connected(9, 0.4, 123);
    SolverConfig cfg = quick_cfg(4);
    cfg.seed = 99;
    auto a = solve_gap(g, 1.6, cfg);
    auto b = solve_gap(g, 1.6, cfg);
    CHECK(a.lambda_estimate == b.lambda_estimate);
    CHECK(a.minimizer == b.minimizer);

    SolverConfig threaded = cfg;
    threaded.threads = 4;
    auto c = solve_gap(g, 1.6, threaded);
    CHECK(a.lambda_estimate == c.lambda_estimate);
    CHECK(a.minimizer == c.minimizer);
}

TEST_CASE("ground dirichlet: one-dimensional case and interior = X") {
    WeightedGraph g = k2();
    auto r = solve_ground_dirichlet(g, VertexSet::of({0}), 2.0, quick_cfg());
    CHECK(r.lambda_estimate == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.minimizer[1] == 0.0);

    WeightedGraph h = random_connected(6, 0.5, 4242);
    std::vector<int> all;
    for (int i = 0; i < h.vertex_count(); ++i) all.push_back(i);
    auto r0 = solve_ground_dirichlet(h, VertexSet::of(all), 2.0, quick_cfg());
    CHECK(r0.lambda_estimate == doctest::Approx(0.0).epsilon(1e-9));

    CHECK_THROWS_AS(solve_ground_dirichlet(g, VertexSet{}, 2.0, quick_cfg()),
                    std::invalid_argument);
}

TEST_CASE("ground dirichlet on growing tree balls decreases toward the tree bottom") {
    double prev = kInfDist;
    for (int radius : {4, 6, 8}) {
        auto gen = generate_tree_ball(3, radius, MeasurePolicy::Normalizing);
        std::vector<int> inner;
        PseudoMetric pm(gen.graph, constant_length(gen.graph, 1.0));
        for (int x = 0; x < gen.graph.vertex_count(); ++x)
            if (pm.dist(gen.root, x) <= radius - 1) inner.push_back(x);
        const double lambda =
            linear_oracle(gen.graph, OracleVariant::Ground, VertexSet::of(inner));
        CHECK(lambda < prev);
        prev = lambda;
        if (radius == 8) {
            CHECK(lambda > 0.057);
            CHECK(lambda < 0.2);
        }
    }
}

TEST_CASE("dirichlet monotonicity under nested interiors") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        WeightedGraph g = random_connected(8, 0.45, 100000 + trial);
        std::vector<int> small, big;
        for (int x = 0; x < g.vertex_count(); ++x) {
            const double u = rng.next_double();
            if (u < 0.4) small.push_back(x);
            if (u < 0.8) big.push_back(x);
        }
        if (small.empty() || big.size() <= small.size()) continue;
        for (int x : small)
            if (std::find(big.begin(), big.end(), x) == big.end()) big.push_back(x);
        const double p = 1.5 + rng.next_double();
        auto r_small = solve_ground_dirichlet(g, VertexSet::of(small), p, quick_cfg());
        auto r_big = solve_ground_dirichlet(g, VertexSet::of(big), p, quick_cfg());
        CHECK(r_small.lambda_estimate >= r_big.lambda_estimate - 1e-8);
    }
}

TEST_CASE("p_sweep brackets on K2") {
    auto rows = p_sweep(k2(), {2.0, 1.5, 1.1}, quick_cfg());
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.has_brackets);
        CHECK(row.upper == doctest::Approx(std::pow(2.0, row.p - 1.0))); // h1(1) = 1
        CHECK(row.in_bracket);
    }
    // at p = 2 the estimate sits exactly on the upper end
    CHECK(rows[0].lambda == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("p_sweep bracket narrows toward p = 1") {
    for (int trial = 0; trial < 5; ++trial) {
        WeightedGraph g = random_connected(7, 0.5, 110000 + trial);
        auto rows = p_sweep(g, {2.0, 1.5, 1.2, 1.05}, quick_cfg());
        const double width_2 = rows.front().upper - rows.front().lower;
        const double width_105 = rows.back().upper - rows.back().lower;
        CHECK(width_105 < width_2);
        for (const auto& row : rows) CHECK(row.in_bracket);
    }
}

TEST_CASE("p_sweep on a disconnected graph degenerates to zero") {
    WeightedGraph g = parse_graph("V a 1\nV b 1\nV c 1\nV d 1\nE a b 1\nE c d 1");
    auto rows = p_sweep(g, {2.0, 1.5}, quick_cfg());
    for (const auto& row : rows) {
        CHECK(row.lambda == 0.0);
        CHECK(row.lower == 0.0); // h1(d_p) = 0 for the component split
        CHECK(row.in_bracket);
    }
}

TEST_CASE("p_sweep rejects bad grids") {
    CHECK_THROWS_AS(p_sweep(k2(), {1.5, 2.0}, quick_cfg()), std::invalid_argument);
    CHECK_THROWS_AS(p_sweep(k2(), {2.0, 1.0}, quick_cfg()), std::invalid_argument);
}
