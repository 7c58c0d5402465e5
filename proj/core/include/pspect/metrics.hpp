#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "pspect/graph.hpp"

namespace pspect {

/// Symmetric nonnegative edge-length function, one value per edge of its
/// graph (aligned with graph.edges()).
struct EdgeLength {
    std::string name;
    std::vector<double> values;
};

/// Admissibility certificate for the class R_p(b,m).
/// p > 1: worst_slack = min_x ( m(x) - sum_y b(x,y) d(x,y)^(p/(p-1)) ), the
/// witness is that vertex. p = 1: worst_slack = min over edges of 1 - d, the
/// witness is that edge index.
struct MembershipCertificate {
    double p;
    bool is_member;
    double worst_slack;
    int witness;
    bool witness_is_vertex;
};

/// q = p/(p-1), the exponent the R_p admissibility sums are taken in.
double conjugate_exponent(double p);

/// d_p(x,y) = (Deg(x) v Deg(y))^(-(p-1)/p). Requires p > 1.
EdgeLength degree_metric(const WeightedGraph& g, double p);

EdgeLength constant_length(const WeightedGraph& g, double c);

/// Slack tolerance: -1e-12 * max(1, m(x)); d_p sits exactly on the boundary
/// of R_p at the maximum-degree vertex.
MembershipCertificate check_membership(const WeightedGraph& g, const EdgeLength& d, double p);

/// Minimal edge length. Throws on edgeless graphs.
double delta(const WeightedGraph& g, const EdgeLength& d);

/// Path metric generated by edge lengths: dist = infimum over paths of the
/// sum of edge lengths. Rows are computed per source on demand (deterministic
/// label-setting, ties by vertex index) and cached; disconnected pairs are
/// +infinity, never a large float.
class PseudoMetric {
public:
    PseudoMetric(const WeightedGraph& g, EdgeLength lengths);

    const WeightedGraph& graph() const { return *g_; }
    const EdgeLength& lengths() const { return lengths_; }

    double dist(int x, int y) const;
    const std::vector<double>& row(int source) const;

private:
    const WeightedGraph* g_;
    EdgeLength lengths_;
    mutable std::mutex rows_mutex_;
    mutable std::unordered_map<int, std::vector<double>> rows_;
};

PseudoMetric path_metric_closure(const WeightedGraph& g, const EdgeLength& d);

/// Closure distances restricted back to the edges of the graph. Restriction
/// never increases any edge value, so R_p membership is preserved.
EdgeLength restrict_to_edges(const PseudoMetric& pm, const std::string& name);

/// B_r(o) = { x : dist(o,x) <= r }.
VertexSet distance_ball(const PseudoMetric& pm, int center, double radius);

/// Edge-length file format: "D <u> <v> <value>" lines, '#' comments; must
/// cover every edge of the graph exactly once.
EdgeLength parse_edge_length(const WeightedGraph& g, std::string_view text,
                             const std::string& name);
EdgeLength read_edge_length_file(const WeightedGraph& g, const std::string& path);
std::string write_edge_length(const WeightedGraph& g, const EdgeLength& d);

} // namespace pspect
