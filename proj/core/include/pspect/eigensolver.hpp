#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pspect/energy.hpp"
#include "pspect/graph.hpp"

namespace pspect {

struct StepRule {
    double initial = 1.0;
    double shrink = 0.5;             // in (0,1)
    double sufficient_decrease = 1e-4;
};

struct SolverConfig {
    int restarts = 4;
    std::uint64_t seed = 0;
    int max_iters = 5000;
    StepRule step_rule;
    double tol_rel = 1e-12;      // relative quotient-change stop
    double smoothing_eps = 1e-8; // relative smoothing scale for p < 2
    int threads = 1;             // parallel restarts; result independent of it
};

struct EigenResult {
    double lambda_estimate; // == recomputed Rayleigh quotient of minimizer
    VertexFunction minimizer;
    double residual;        // weak-solution residual at lambda_estimate
    int iterations;
    bool converged;
};

/// Upper bound on the first non-trivial eigenvalue via normalized projected
/// gradient descent on the gap Rayleigh quotient: re-centered by the p-mean
/// shift and re-normalized each step, best over restarts (restart 0 starts
/// from the p=2 eigenvector, later restarts from seeded random vectors).
/// For p < 2 the energy kernel is smoothed and the smoothing annealed; the
/// reported quotient is always unsmoothed. Disconnected graphs are answered
/// analytically with lambda = 0.
EigenResult solve_gap(const WeightedGraph& g, double p, const SolverConfig& cfg,
                      const VertexFunction* warm_start = nullptr);

/// Dirichlet variant: minimizes over functions supported in `interior`,
/// an upper bound on the bottom of the spectrum of the host.
EigenResult solve_ground_dirichlet(const WeightedGraph& host, const VertexSet& interior,
                                   double p, const SolverConfig& cfg,
                                   const VertexFunction* warm_start = nullptr);

enum class OracleVariant { Ground, Gap };

struct LinearEigenpair {
    double lambda;
    VertexFunction vector;
};

/// p = 2 cross-check: smallest (Gap: smallest non-trivial) eigenvalue of the
/// generalized problem (Laplacian, diag m). Dense solver up to dense_limit
/// vertices, then deterministic inverse power iteration with CG. The
/// eigenvector sign is fixed so its largest-magnitude entry is positive.
LinearEigenpair linear_eigenpair(const WeightedGraph& g, OracleVariant variant,
                                 const std::optional<VertexSet>& interior = {},
                                 int dense_limit = 2000);
double linear_oracle(const WeightedGraph& g, OracleVariant variant,
                     const std::optional<VertexSet>& interior = {},
                     int dense_limit = 2000);

struct SweepRow {
    double p;
    double lambda;
    VertexFunction minimizer;
    int iterations;
    bool converged;
    bool has_brackets;
    double lower;  // (2^(p-1)/p^p) h1(d_p)^p
    double upper;  // 2^(p-1) h1(1)
    bool in_bracket;
};

/// Continuation toward p = 1 over a strictly decreasing grid in (1, inf):
/// each solve warm-starts from the previous minimizer; bracket columns come
/// from exact Cheeger enumeration when the graph is within max_exact_n.
/// Bracket containment is checked with 1e-7 relative slack.
std::vector<SweepRow> p_sweep(const WeightedGraph& g, const std::vector<double>& p_grid,
                              const SolverConfig& cfg, int max_exact_n = 24);

} // namespace pspect
