#include "pspect/brooks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pspect/numeric.hpp"

namespace pspect {

VolumeGrowthEstimate volume_growth(const WeightedGraph& g, const PseudoMetric& pm,
                                   const std::vector<int>& radii, const CenterSpec& centers) {
    if (radii.empty()) throw std::invalid_argument("volume_growth: empty radius list");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < 1) throw std::invalid_argument("volume_growth: radii must be >= 1");
        if (i > 0 && radii[i] <= radii[i - 1])
            throw std::invalid_argument("volume_growth: radii must be increasing");
    }

    std::vector<int> sampled;
    if (centers.kind == CenterSpec::Kind::Explicit) {
        sampled = centers.centers;
        if (sampled.empty()) throw std::invalid_argument("volume_growth: no centers");
    } else if (g.vertex_count() <= 200) {
        sampled.resize(g.vertex_count());
        for (int i = 0; i < g.vertex_count(); ++i) sampled[i] = i;
    } else {
        sampled.push_back(centers.root);
        SplitMix64 rng(SplitMix64::derive(centers.seed, 0x4347ULL)); // "CG"
        while (sampled.size() < 33) {
            const int c = static_cast<int>(rng.next_below(g.vertex_count()));
            if (std::find(sampled.begin(), sampled.end(), c) == sampled.end())
                sampled.push_back(c);
        }
    }

    VolumeGrowthEstimate out;
    out.radii = radii;
    out.centers_sampled = sampled;
    out.log_ratios.assign(radii.size(), kInfDist);
    out.saturated.assign(radii.size(), true);

    for (int center : sampled) {
        const auto& dist = pm.row(center);
        // m(B_1) and per-radius ball measures in one pass over the row.
        double m_b1 = 0.0;
        for (int x = 0; x < g.vertex_count(); ++x)
            if (dist[x] <= 1.0) m_b1 += g.measure(x);
        for (size_t i = 0; i < radii.size(); ++i) {
            const double r = radii[i];
            KahanSum ball;
            int count = 0;
            for (int x = 0; x < g.vertex_count(); ++x)
                if (dist[x] <= r) {
                    ball.add(g.measure(x));
                    ++count;
                }
            if (count == g.vertex_count()) continue; // saturated for this center
            out.saturated[i] = false;
            const double lr = std::log(ball.value() / m_b1) / r;
            out.log_ratios[i] = std::min(out.log_ratios[i], lr);
        }
    }

    std::vector<size_t> usable;
    for (size_t i = 0; i < radii.size(); ++i)
        if (!out.saturated[i]) usable.push_back(i);
    if (usable.empty())
        throw std::runtime_error("volume_growth: every radius saturated the graph");

    // liminf surrogate: minimum over the upper half of the unsaturated radii.
    const size_t start = usable.size() / 2;
    out.window_start = static_cast<int>(usable[start]);
    double mu = kInfDist;
    for (size_t j = start; j < usable.size(); ++j)
        mu = std::min(mu, out.log_ratios[usable[j]]);
    out.mu_estimate = mu;
    return out;
}

double brooks_bound(double mu, double p) {
    if (mu < 0.0) throw std::invalid_argument("brooks_bound: mu must be >= 0");
    if (!(p >= 1.0)) throw std::invalid_argument("brooks_bound: p must be >= 1");
    return std::pow(mu, p) / (2.0 * std::pow(p, p));
}

BrooksMetricCheck brooks_metric_check(const WeightedGraph& g, const EdgeLength& d, double p) {
    if (d.values.size() != static_cast<size_t>(g.edge_count()))
        throw std::invalid_argument("edge length not defined on every edge");
    if (!(p >= 1.0)) throw std::invalid_argument("brooks_metric_check: p must be >= 1");
    BrooksMetricCheck out;
    out.slack.resize(g.vertex_count());
    out.worst_slack = kInfDist;
    out.witness = -1;
    for (int x = 0; x < g.vertex_count(); ++x) {
        KahanSum s;
        for (const auto& nb : g.neighbors(x)) s.add(nb.weight * std::pow(d.values[nb.edge], p));
        out.slack[x] = g.measure(x) - s.value();
        if (out.slack[x] < out.worst_slack) {
            out.worst_slack = out.slack[x];
            out.witness = x;
        }
    }
    if (g.vertex_count() == 0) out.worst_slack = 0.0;
    out.holds = out.worst_slack >= -1e-12 * std::max(1.0, out.witness >= 0
                                                              ? g.measure(out.witness)
                                                              : 1.0);
    return out;
}

BrooksTestFunction build_test_function(const WeightedGraph& g, const PseudoMetric& pm, int r,
                                       int x0, double alpha) {
    if (r < 1) throw std::invalid_argument("build_test_function: r must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("build_test_function: alpha must be > 0");
    const auto& dist = pm.row(x0);
    BrooksTestFunction tf;
    tf.r = r;
    tf.x0 = x0;
    tf.alpha = alpha;
    tf.f.assign(g.vertex_count(), 0.0);
    tf.g.assign(g.vertex_count(), 0.0);
    const double cap = std::exp(alpha * r);
    for (int x = 0; x < g.vertex_count(); ++x) {
        const double rho = dist[x];
        if (rho <= 2.0 * r) {
            const double v = std::min(cap, std::exp(alpha * (2.0 * r - rho))) - 1.0;
            tf.f[x] = std::max(v, 0.0);
            tf.g[x] = tf.f[x] + 2.0;
        }
    }
    return tf;
}

double tree_norm_ratio(int k, double p, double alpha, int r) {
    if (k < 2 || r < 1 || !(p >= 1.0) || !(alpha > 0.0))
        throw std::invalid_argument("tree_norm_ratio: bad arguments");
    // Sphere sums on the infinite k-regular tree, normalizing measure
    // (m = k per vertex). Everything is scaled by e^(-alpha r) per value and
    // by the sphere count at rho = r to keep the terms in range.
    const double inv_ear = std::exp(alpha * static_cast<double>(-r));
    KahanSum fp_sum, gp_sum;
    for (int rho = 0; rho <= 2 * r; ++rho) {
        // sphere count relative to the sphere at rho = r
        double rel;
        if (rho == 0)
            rel = std::pow(static_cast<double>(k - 1), -(r - 1)) / k;
        else
            rel = std::pow(static_cast<double>(k - 1), rho - r);
        // f/e^(alpha r), in [0, 1]; exact 0 at rho = 2r
        double fs;
        if (rho <= r)
            fs = 1.0 - inv_ear;
        else
            fs = std::max(0.0, std::exp(alpha * (r - rho)) - inv_ear);
        fp_sum.add(rel * std::pow(fs, p));
        gp_sum.add(rel * std::pow(fs + 2.0 * inv_ear, p));
    }
    return std::pow(gp_sum.value() / fp_sum.value(), 1.0 / p);
}

namespace {

struct Truncation {
    WeightedGraph host;
    VertexSet interior;
    int root;
    bool saturated; // custom family: ball(R) already covers the whole graph
};

Truncation truncate_family(const BrooksFamily& family, int radius) {
    if (family.kind == BrooksFamily::Kind::Tree) {
        GeneratedGraph gen = generate_tree_ball(family.k, radius, family.measure);
        return Truncation{std::move(gen.graph), std::move(*gen.interior), gen.root, false};
    }
    if (!family.custom) throw std::invalid_argument("custom family without a graph");
    const WeightedGraph& full = *family.custom;
    PseudoMetric pm(full, constant_length(full, 1.0));
    const auto& dist = pm.row(family.root);

    std::vector<int> keep;
    for (int x = 0; x < full.vertex_count(); ++x)
        if (dist[x] <= radius) keep.push_back(x);
    std::vector<int> pos(full.vertex_count(), -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);

    std::vector<std::string> ids;
    std::vector<double> measure;
    for (int x : keep) {
        ids.push_back(full.vertex_id(x));
        measure.push_back(full.measure(x));
    }
    std::vector<Edge> edges;
    for (const Edge& e : full.edges())
        if (pos[e.u] >= 0 && pos[e.v] >= 0) edges.push_back({pos[e.u], pos[e.v], e.weight});
    WeightedGraph host(std::move(ids), std::move(measure), std::move(edges));

    std::vector<int> inner;
    for (int x : keep)
        if (dist[x] <= radius - 1) inner.push_back(pos[x]);
    const bool saturated = static_cast<int>(keep.size()) == full.vertex_count();
    return Truncation{std::move(host), VertexSet::of(std::move(inner)), pos[family.root],
                      saturated};
}

} // namespace

BrooksVerification brooks_verify(const BrooksFamily& family, double p,
                                 const std::vector<int>& radius_schedule,
                                 const SolverConfig& cfg, double slack,
                                 const std::vector<double>& alpha_factors) {
    if (radius_schedule.empty())
        throw std::invalid_argument("brooks_verify: empty radius schedule");
    for (size_t i = 0; i < radius_schedule.size(); ++i) {
        if (radius_schedule[i] < 2)
            throw std::invalid_argument("brooks_verify: radii must be >= 2");
        if (i > 0 && radius_schedule[i] <= radius_schedule[i - 1])
            throw std::invalid_argument("brooks_verify: schedule must be increasing");
    }

    BrooksVerification out;
    out.metric_ok = true;
    out.slack = slack;
    for (int radius : radius_schedule) {
        Truncation tr = truncate_family(family, radius);
        const WeightedGraph& host = tr.host;
        EdgeLength comb = constant_length(host, 1.0);

        const BrooksMetricCheck check = brooks_metric_check(host, comb, p);
        if (!check.holds) {
            out.metric_ok = false;
            throw std::runtime_error(
                "brooks_verify: metric hypothesis sum b d^p <= m fails at vertex " +
                host.vertex_id(check.witness) + " (R = " + std::to_string(radius) + ")");
        }

        BrooksRow row;
        row.R = radius;
        row.n = host.vertex_count();

        if (p == 2.0) {
            row.lambda = linear_oracle(host, OracleVariant::Ground, tr.interior);
        } else {
            row.lambda =
                solve_ground_dirichlet(host, tr.interior, p, cfg).lambda_estimate;
        }

        PseudoMetric pm(host, comb);
        std::vector<int> radii;
        for (int r = 1; r <= radius - 1; ++r) radii.push_back(r);
        if (radii.empty()) radii.push_back(1);
        const VolumeGrowthEstimate vg =
            volume_growth(host, pm, radii, CenterSpec::only({tr.root}));
        row.mu_estimate = vg.mu_estimate;
        row.bound = brooks_bound(vg.mu_estimate, p);
        row.below_bound = row.lambda <= row.bound + slack;

        const int r_test = (radius - 1) / 2;
        if (r_test >= 1) {
            for (double factor : alpha_factors) {
                BrooksAlphaRow ar;
                ar.alpha = vg.mu_estimate / p * factor;
                ar.r = r_test;
                if (!(ar.alpha > 0.0)) continue;
                BrooksTestFunction tf = build_test_function(host, pm, r_test, tr.root, ar.alpha);
                const QuotientValue qf = rayleigh(host, tf.f, p, QuotientVariant::Ground);
                KahanSum gp;
                for (int x = 0; x < host.vertex_count(); ++x)
                    gp.add(host.measure(x) * std::pow(tf.g[x], p));
                ar.norm_ratio = std::pow(gp.value(), 1.0 / p) / qf.norm_p;
                ar.quotient = qf.quotient;
                ar.rhs = std::pow(ar.alpha, p) / 2.0 * std::pow(ar.norm_ratio, p);
                ar.holds = ar.quotient <= ar.rhs;
                row.alphas.push_back(ar);
            }
        }
        out.rows.push_back(std::move(row));
        if (tr.saturated) {
            out.note = "truncation saturated the custom graph at R = " + std::to_string(radius);
            break;
        }
    }

    out.lambda_decreasing = true;
    for (size_t i = 0; i + 1 < out.rows.size(); ++i)
        if (!(out.rows[i + 1].lambda < out.rows[i].lambda)) out.lambda_decreasing = false;
    out.bound_crossed = !out.rows.empty() && out.rows.back().below_bound;
    if (!out.bound_crossed && out.note.empty())
        out.note = "schedule too short to observe the bound crossing";
    return out;
}

} // namespace pspect
