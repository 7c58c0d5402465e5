#pragma once

// JSON views of the core result types. Keys are emitted in sorted order
// (nlohmann's default object is a std::map), which keeps payload bytes
// deterministic for identical results.

#include <string>
#include <vector>

#include "json.hpp"

#include "pspect/bounds.hpp"
#include "pspect/brooks.hpp"
#include "pspect/cheeger.hpp"
#include "pspect/eigensolver.hpp"
#include "pspect/energy.hpp"
#include "pspect/graph.hpp"
#include "pspect/metrics.hpp"

namespace pspectcli {

using nlohmann::json;

inline json vertex_list(const pspect::WeightedGraph& g, const pspect::VertexSet& s) {
    std::vector<std::string> ids;
    for (int x : s.members) ids.push_back(g.vertex_id(x));
    std::sort(ids.begin(), ids.end());
    return json(ids);
}

inline json function_map(const pspect::WeightedGraph& g, const pspect::VertexFunction& f) {
    json out = json::object();
    for (int x = 0; x < g.vertex_count(); ++x) out[g.vertex_id(x)] = f[x];
    return out;
}

inline json to_json(const pspect::WeightedGraph& g, const pspect::MembershipCertificate& c) {
    json out{{"p", c.p}, {"is_member", c.is_member}, {"worst_slack", c.worst_slack}};
    if (c.witness >= 0) {
        if (c.witness_is_vertex) {
            out["witness"] = g.vertex_id(c.witness);
            out["witness_kind"] = "vertex";
        } else {
            const auto& e = g.edges()[c.witness];
            out["witness"] = g.vertex_id(e.u) + "-" + g.vertex_id(e.v);
            out["witness_kind"] = "edge";
        }
    }
    return out;
}

inline json to_json(const pspect::WeightedGraph& g, const pspect::IsoperimetricResult& r) {
    return json{{"constant", r.constant},
                {"witness", vertex_list(g, r.witness)},
                {"mode", r.mode == pspect::IsoMode::Exact ? "exact" : "sweep"},
                {"variant", r.variant == pspect::IsoVariant::H1 ? "h1" : "h0_dirichlet"},
                {"metric_name", r.metric_name}};
}

inline json to_json(const pspect::WeightedGraph& g, const pspect::EigenResult& r) {
    return json{{"lambda", r.lambda_estimate},
                {"bound_kind", "upper"},
                {"minimizer", function_map(g, r.minimizer)},
                {"residual", r.residual},
                {"iterations", r.iterations},
                {"converged", r.converged}};
}

inline json to_json(const pspect::WeightedGraph& g,
                    const std::vector<pspect::SweepRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        json j{{"p", row.p},
               {"lambda", row.lambda},
               {"minimizer", function_map(g, row.minimizer)},
               {"iterations", row.iterations},
               {"converged", row.converged}};
        if (row.has_brackets) {
            j["lower"] = row.lower;
            j["upper"] = row.upper;
            j["in_bracket"] = row.in_bracket;
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

inline const char* verdict_name(pspect::Verdict v) {
    switch (v) {
        case pspect::Verdict::Pass: return "pass";
        case pspect::Verdict::Fail: return "fail";
        default: return "not_applicable";
    }
}

inline json to_json(const pspect::BoundReport& r) {
    json metrics = json::array();
    for (const auto& b : r.metrics) {
        json j{{"name", b.name},
               {"in_rp", b.in_rp},
               {"membership_slack", b.membership_slack},
               {"h1", b.h1},
               {"h1_exact", b.h1_exact},
               {"delta", b.delta_d}};
        if (b.h0_dirichlet) {
            j["h0_dirichlet"] = *b.h0_dirichlet;
            j["h0_exact"] = b.h0_exact;
        }
        metrics.push_back(std::move(j));
    }
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"name", row.name},
                            {"metric", row.metric},
                            {"side", row.side},
                            {"bound", row.bound},
                            {"lambda", row.lambda},
                            {"slack", row.slack},
                            {"verdict", verdict_name(row.verdict)},
                            {"note", row.note}});
    json out{{"p", r.p},
             {"lambda_gap", r.lambda_gap},
             {"metrics", metrics},
             {"rows", rows},
             {"classical", json{{"m", r.classical_m},
                                {"m_kind", r.classical_m_kind},
                                {"lower", r.classical_lower},
                                {"applicable", r.classical_applicable}}},
             {"intrinsic_lower", r.intrinsic_lower},
             {"improvement_ratio", r.improvement_ratio},
             {"escalations", r.escalations},
             {"heuristic", r.heuristic}};
    if (r.lambda_ground) out["lambda_ground"] = *r.lambda_ground;
    return out;
}

inline json to_json(const pspect::BrooksVerification& v) {
    json rows = json::array();
    for (const auto& row : v.rows) {
        json alphas = json::array();
        for (const auto& ar : row.alphas)
            alphas.push_back(json{{"alpha", ar.alpha},
                                  {"r", ar.r},
                                  {"norm_ratio", ar.norm_ratio},
                                  {"quotient", ar.quotient},
                                  {"rhs", ar.rhs},
                                  {"holds", ar.holds}});
        rows.push_back(json{{"R", row.R},
                            {"n", row.n},
                            {"lambda", row.lambda},
                            {"mu_estimate", row.mu_estimate},
                            {"bound", row.bound},
                            {"below_bound", row.below_bound},
                            {"alphas", std::move(alphas)}});
    }
    return json{{"rows", std::move(rows)},
                {"metric_ok", v.metric_ok},
                {"lambda_decreasing", v.lambda_decreasing},
                {"bound_crossed", v.bound_crossed},
                {"slack", v.slack},
                {"note", v.note}};
}

} // namespace pspectcli
