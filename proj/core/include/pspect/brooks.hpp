#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pspect/eigensolver.hpp"
#include "pspect/energy.hpp"
#include "pspect/generators.hpp"
#include "pspect/graph.hpp"
#include "pspect/metrics.hpp"

namespace pspect {

struct CenterSpec {
    enum class Kind { Explicit, Auto } kind = Kind::Auto;
    std::vector<int> centers; // Explicit
    int root = 0;             // Auto: designated root, always included
    std::uint64_t seed = 0;   // Auto: extra seeded centers when n > 200

    static CenterSpec only(std::vector<int> c) { return {Kind::Explicit, std::move(c), 0, 0}; }
    static CenterSpec automatic(int root, std::uint64_t seed) {
        return {Kind::Auto, {}, root, seed};
    }
};

struct VolumeGrowthEstimate {
    std::vector<int> radii;
    std::vector<double> log_ratios; // min over centers of (1/r) log(m(B_r)/m(B_1))
    std::vector<bool> saturated;    // B_r == X for every sampled center
    std::vector<int> centers_sampled;
    double mu_estimate;             // min of log_ratios over the upper half of
                                    // the unsaturated radii (liminf surrogate)
    int window_start;               // index of the first radius in that window
};

/// Exact ball measures per (center, radius); saturated radii are excluded
/// from the estimate; throws when every radius saturates.
VolumeGrowthEstimate volume_growth(const WeightedGraph& g, const PseudoMetric& pm,
                                   const std::vector<int>& radii, const CenterSpec& centers);

/// mu^p / (2 p^p).
double brooks_bound(double mu, double p);

struct BrooksMetricCheck {
    bool holds;
    double worst_slack; // min_x ( m(x) - sum_y b d^p )
    int witness;
    std::vector<double> slack;
};

/// Hypothesis sum_y b(x,y) d(x,y)^p <= m(x). The exponent is p here, not
/// p/(p-1), so this is distinct from R_p membership. Checked on the
/// generating edge lengths; the path closure never exceeds them, so passing
/// implies the hypothesis for the induced pseudo metric.
BrooksMetricCheck brooks_metric_check(const WeightedGraph& g, const EdgeLength& d, double p);

struct BrooksTestFunction {
    int r;
    int x0;
    double alpha;
    VertexFunction f; // ((e^(a r) ^ e^(a(2r - dist))) - 1) v 0
    VertexFunction g; // (f + 2) on B_2r, 0 outside
};

BrooksTestFunction build_test_function(const WeightedGraph& g, const PseudoMetric& pm,
                                       int r, int x0, double alpha);

/// ||g||/||f|| in l^p(m) for the test function of radius r on the infinite
/// k-regular tree with the normalizing measure and the combinatorial metric,
/// evaluated by closed-form sphere sums (no truncation). Used to observe the
/// norm-ratio limit at radii far beyond any materializable truncation.
double tree_norm_ratio(int k, double p, double alpha, int r);

struct BrooksFamily {
    enum class Kind { Tree, Custom } kind = Kind::Tree;
    int k = 3;                             // Tree (k = 2 is the path family)
    std::optional<WeightedGraph> custom;   // Custom: truncated around `root`
    int root = 0;
    MeasurePolicy measure = MeasurePolicy::Normalizing;

    static BrooksFamily tree(int k) { return {Kind::Tree, k, std::nullopt, 0,
                                              MeasurePolicy::Normalizing}; }
};

struct BrooksAlphaRow {
    double alpha;
    int r;              // largest test radius with 2r <= R-1
    double norm_ratio;  // ||g|| / ||f||
    double quotient;    // Rayleigh quotient of f
    double rhs;         // (alpha^p/2) (||g||/||f||)^p
    bool holds;         // quotient <= rhs
};

struct BrooksRow {
    int R;
    int n;
    double lambda;      // Dirichlet estimate, interior = ball(R-1)
    double mu_estimate;
    double bound;       // brooks_bound(mu_estimate, p)
    bool below_bound;   // lambda <= bound + slack
    std::vector<BrooksAlphaRow> alphas;
};

struct BrooksVerification {
    std::vector<BrooksRow> rows;
    bool metric_ok;          // brooks_metric_check on every truncation
    bool lambda_decreasing;
    bool bound_crossed;      // route (ii) observed by the end of the schedule
    double slack;            // slack used for route (ii)
    std::string note;
};

/// Per truncation radius R: host = ball(R), Dirichlet interior = ball(R-1),
/// lambda estimate (linear oracle at p = 2, nonlinear solver otherwise),
/// volume growth from the root, and the test-function route with
/// alpha = mu/p times each entry of alpha_factors.
BrooksVerification brooks_verify(const BrooksFamily& family, double p,
                                 const std::vector<int>& radius_schedule,
                                 const SolverConfig& cfg, double slack = 5e-3,
                                 const std::vector<double>& alpha_factors = {1.05, 1.25,
                                                                             1.5});

} // namespace pspect
