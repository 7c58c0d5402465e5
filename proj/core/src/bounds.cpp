#include "pspect/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pspect/numeric.hpp"

namespace pspect {

double cheeger_lower_bound(double h, double p) {
    if (h < 0.0) throw std::invalid_argument("cheeger_lower_bound: h must be >= 0");
    if (!(p > 1.0)) throw std::invalid_argument("cheeger_lower_bound: p must be > 1");
    return std::pow(2.0, p - 1.0) / std::pow(p, p) * std::pow(h, p);
}

double buser_upper_bound(double h, double delta_d, double p, QuotientVariant variant) {
    if (delta_d < 0.0) throw std::invalid_argument("buser_upper_bound: delta must be >= 0");
    if (delta_d == 0.0) return kInfDist;
    if (variant == QuotientVariant::Ground) return h / delta_d;
    return std::pow(2.0, p - 1.0) * h / delta_d;
}

EdgeLength resolve_metric(const WeightedGraph& g, const std::string& spec, double p) {
    if (spec == "degree") return degree_metric(g, p);
    if (spec.rfind("const:", 0) == 0) {
        const double c = std::stod(spec.substr(6));
        return constant_length(g, c);
    }
    throw std::invalid_argument("unknown metric spec '" + spec + "'");
}

namespace {

constexpr double kVerdictSlack = 1e-7;

struct IsoOutcome {
    double constant;
    bool exact;
};

IsoOutcome isoperimetric_or_sweep(const WeightedGraph& g, const EdgeLength& d,
                                  IsoVariant variant, const std::optional<VertexSet>& interior,
                                  int max_exact_n, const VertexFunction& sweep_fn) {
    const int size = variant == IsoVariant::H1 ? g.vertex_count()
                                               : (interior ? interior->size() : 0);
    if (size <= max_exact_n)
        return {exact_isoperimetric(g, d, variant, interior, max_exact_n).constant, true};
    return {sweep_cut(g, d, sweep_fn, variant, interior).constant, false};
}

} // namespace

BoundReport full_report(const WeightedGraph& g, double p, const SolverConfig& cfg,
                        const std::optional<VertexSet>& interior,
                        const std::vector<std::string>& metric_specs, int max_exact_n) {
    if (!(p > 1.0)) throw std::invalid_argument("full_report: p must be > 1");
    BoundReport report;
    report.p = p;

    EigenResult gap = solve_gap(g, p, cfg);
    std::optional<EigenResult> ground;
    if (interior) ground = solve_ground_dirichlet(g, *interior, p, cfg);

    report.lambda_gap = gap.lambda_estimate;
    report.solver_converged = gap.converged;
    if (ground) {
        report.lambda_ground = ground->lambda_estimate;
        report.solver_converged = report.solver_converged && ground->converged;
    }

    const bool connected = is_connected(g);
    EdgeLength const_one = constant_length(g, 1.0);
    const double h1_one =
        isoperimetric_or_sweep(g, const_one, IsoVariant::H1, {}, max_exact_n, gap.minimizer)
            .constant;

    // Metric blocks first; the escalation decision needs the tightest upper
    // bound before any verdict row is written.
    struct MetricData {
        BoundReport::MetricBlock block;
        double buser_gap;
        std::optional<double> buser_ground;
    };
    std::vector<MetricData> data;
    for (const std::string& spec : metric_specs) {
        EdgeLength d = resolve_metric(g, spec, p);
        MetricData md;
        md.block.name = d.name;

        const MembershipCertificate cert = check_membership(g, d, p);
        md.block.in_rp = cert.is_member;
        md.block.membership_slack = cert.worst_slack;
        md.block.delta_d = g.edge_count() > 0 ? delta(g, d) : 0.0;

        const IsoOutcome h1 =
            isoperimetric_or_sweep(g, d, IsoVariant::H1, {}, max_exact_n, gap.minimizer);
        md.block.h1 = h1.constant;
        md.block.h1_exact = h1.exact;
        if (!h1.exact) report.heuristic = true;
        md.buser_gap = buser_upper_bound(md.block.h1, md.block.delta_d, p, QuotientVariant::Gap);

        if (interior) {
            const IsoOutcome h0 = isoperimetric_or_sweep(g, d, IsoVariant::H0Dirichlet, interior,
                                                         max_exact_n, ground->minimizer);
            md.block.h0_dirichlet = h0.constant;
            md.block.h0_exact = h0.exact;
            if (!h0.exact) report.heuristic = true;
            md.buser_ground =
                buser_upper_bound(h0.constant, md.block.delta_d, p, QuotientVariant::Ground);
        }
        data.push_back(std::move(md));
    }

    // One restart escalation when the estimate sits above the tightest
    // connected upper bound; all rows then use the final estimate.
    if (connected) {
        double min_upper = kInfDist;
        for (const auto& md : data)
            if (md.block.delta_d > 0.0) min_upper = std::min(min_upper, md.buser_gap);
        if (min_upper < kInfDist &&
            report.lambda_gap > min_upper + kVerdictSlack * std::max(1.0, min_upper)) {
            SolverConfig boosted = cfg;
            boosted.restarts = std::max(2, cfg.restarts * 2);
            EigenResult retry = solve_gap(g, p, boosted);
            ++report.escalations;
            if (retry.lambda_estimate < report.lambda_gap) {
                gap = retry;
                report.lambda_gap = retry.lambda_estimate;
                report.solver_converged = retry.converged;
            }
        }
    }

    for (const auto& md : data) {
        const auto& block = md.block;
        {
            BoundRow row;
            row.name = "cheeger_lower";
            row.metric = block.name;
            row.side = "lower";
            row.bound = cheeger_lower_bound(block.h1, p);
            row.lambda = report.lambda_gap;
            row.slack = row.lambda - row.bound;
            if (!block.in_rp) {
                row.verdict = Verdict::NotApplicable;
                row.note = "metric not certified in R_p";
            } else if (!block.h1_exact) {
                row.verdict = Verdict::NotApplicable;
                row.note = "heuristic h (sweep): bound not certified";
            } else {
                row.verdict = row.slack >= -kVerdictSlack ? Verdict::Pass : Verdict::Fail;
            }
            report.rows.push_back(row);
        }
        {
            BoundRow row;
            row.name = "buser_upper";
            row.metric = block.name;
            row.side = "upper";
            row.bound = md.buser_gap;
            row.lambda = report.lambda_gap;
            if (block.delta_d == 0.0) {
                row.verdict = Verdict::NotApplicable;
                row.note = "delta(d) = 0: upper bound trivial";
                row.slack = kInfDist;
            } else {
                row.slack = row.bound - row.lambda;
                row.verdict = row.slack >= -kVerdictSlack * std::max(1.0, row.bound)
                                  ? Verdict::Pass
                                  : Verdict::Fail;
                if (!block.h1_exact && connected)
                    row.note = "h from sweep (upper bound on the exact constant)";
            }
            report.rows.push_back(row);
        }
        if (interior) {
            BoundRow lower;
            lower.name = "cheeger_lower_ground";
            lower.metric = block.name;
            lower.side = "lower";
            lower.bound = cheeger_lower_bound(*block.h0_dirichlet, p);
            lower.lambda = *report.lambda_ground;
            lower.slack = lower.lambda - lower.bound;
            lower.note = "truncation convention (Dirichlet interior)";
            lower.verdict = !block.in_rp || !block.h0_exact
                                ? Verdict::NotApplicable
                                : (lower.slack >= -kVerdictSlack ? Verdict::Pass : Verdict::Fail);
            report.rows.push_back(lower);

            BoundRow upper;
            upper.name = "buser_upper_ground";
            upper.metric = block.name;
            upper.side = "upper";
            upper.bound = *md.buser_ground;
            upper.lambda = *report.lambda_ground;
            upper.slack = upper.bound - upper.lambda;
            upper.note = "truncation convention (Dirichlet interior)";
            upper.verdict = block.delta_d == 0.0
                                ? Verdict::NotApplicable
                                : (upper.slack >= -kVerdictSlack * std::max(1.0, upper.bound)
                                       ? Verdict::Pass
                                       : Verdict::Fail);
            report.rows.push_back(upper);
        }
        report.metrics.push_back(block);
    }

    // Classical comparison row: M is the combinatorial degree for 0/1 weights,
    // the weighted degree otherwise.
    double m_max = 0.0;
    if (g.all_unit_weights()) {
        for (int x = 0; x < g.vertex_count(); ++x)
            m_max = std::max(m_max, static_cast<double>(g.neighbors(x).size()));
        report.classical_m_kind = "combinatorial";
    } else {
        for (int x = 0; x < g.vertex_count(); ++x)
            m_max = std::max(m_max, weighted_degree(g, x));
        report.classical_m_kind = "weighted";
    }
    report.classical_m = m_max;
    bool unit_measure = true;
    for (int x = 0; x < g.vertex_count(); ++x)
        if (g.measure(x) != 1.0) unit_measure = false;
    report.classical_applicable = g.all_unit_weights() && unit_measure;
    report.classical_lower =
        m_max > 0.0 ? std::pow(2.0 / m_max, p - 1.0) * std::pow(h1_one / p, p) : 0.0;

    for (const auto& block : report.metrics)
        if (block.name == "degree" && block.h1_exact && block.in_rp)
            report.intrinsic_lower = cheeger_lower_bound(block.h1, p);
    report.improvement_ratio =
        report.classical_lower > 0.0 ? report.intrinsic_lower / report.classical_lower : 0.0;

    return report;
}

} // namespace pspect
