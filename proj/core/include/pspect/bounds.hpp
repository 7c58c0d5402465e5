#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pspect/cheeger.hpp"
#include "pspect/eigensolver.hpp"
#include "pspect/graph.hpp"
#include "pspect/metrics.hpp"

namespace pspect {

/// (2^(p-1)/p^p) h^p.
double cheeger_lower_bound(double h, double p);

/// Ground: h0(d)/delta(d).  Gap: 2^(p-1) h1(d)/delta(d).
/// Returns +infinity (with the caller expected to warn) when delta(d) = 0.
double buser_upper_bound(double h, double delta_d, double p, QuotientVariant variant);

enum class Verdict { Pass, Fail, NotApplicable };

struct BoundRow {
    std::string name;        // e.g. "cheeger_lower", "buser_upper"
    std::string metric;      // metric label
    std::string side;        // "lower" or "upper"
    double bound;
    double lambda;           // solver estimate the bound is compared with
    double slack;            // >= 0 means the inequality is satisfied
    Verdict verdict;
    std::string note;        // hypothesis / convention remarks
};

struct BoundReport {
    double p = 0;
    double lambda_gap = 0;
    std::optional<double> lambda_ground; // present when an interior is given
    struct MetricBlock {
        std::string name;
        bool in_rp = false;        // R_p membership of the metric
        double membership_slack = 0;
        double h1 = 0;             // isoperimetric constant for this metric
        bool h1_exact = false;     // false => sweep upper bound (heuristic)
        double delta_d = 0;
        std::optional<double> h0_dirichlet;
        bool h0_exact = false;
    };
    std::vector<MetricBlock> metrics;
    std::vector<BoundRow> rows;
    double classical_m = 0;        // M in the classical bound (convention below)
    std::string classical_m_kind;  // "combinatorial" (0/1 weights) or "weighted"
    double classical_lower = 0;    // (2/M)^(p-1) (h1(1)/p)^p
    bool classical_applicable = false; // b 0/1 and m == 1
    double intrinsic_lower = 0;    // cheeger lower bound with the degree metric
    double improvement_ratio = 0;  // intrinsic_lower / classical_lower
    int escalations = 0;           // upper-bound restart escalations performed
    bool heuristic = false;        // any constant came from sweep mode
    bool solver_converged = true;  // all variational solves converged
};

/// Evaluates every named inequality at one (graph, p): Cheeger lower bounds
/// for each metric certified in R_p, Buser upper bounds for every metric with
/// delta > 0, the classical comparison row, and (when an interior is given)
/// the Dirichlet ground rows. Lower-bound rows whose metric fails the R_p
/// hypothesis are reported NotApplicable. An upper-bound failure triggers one
/// restart escalation (doubled restarts) before being counted.
BoundReport full_report(const WeightedGraph& g, double p, const SolverConfig& cfg,
                        const std::optional<VertexSet>& interior = {},
                        const std::vector<std::string>& metric_specs = {"degree", "const:1"},
                        int max_exact_n = 24);

/// Metric spec strings: "degree", "const:<c>", or a name resolved by the
/// caller; used by full_report and the CLI.
EdgeLength resolve_metric(const WeightedGraph& g, const std::string& spec, double p);

} // namespace pspect
