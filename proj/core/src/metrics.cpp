#include "pspect/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>

#include "pspect/numeric.hpp"

namespace pspect {

double conjugate_exponent(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("conjugate exponent requires p > 1");
    return p / (p - 1.0);
}

EdgeLength degree_metric(const WeightedGraph& g, double p) {
    if (!(p > 1.0))
        throw std::invalid_argument(
            "degree_metric requires p > 1 (use constant_length(1) for p = 1)");
    std::vector<double> deg(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x) deg[x] = weighted_degree(g, x);
    const double expo = -(p - 1.0) / p;
    std::vector<double> values(g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges()[ei];
        values[ei] = std::pow(std::max(deg[e.u], deg[e.v]), expo);
    }
    return EdgeLength{"degree", std::move(values)};
}

EdgeLength constant_length(const WeightedGraph& g, double c) {
    if (c < 0.0) throw std::invalid_argument("constant_length: c must be >= 0");
    char buf[32];
    std::snprintf(buf, sizeof buf, "const:%g", c);
    return EdgeLength{buf, std::vector<double>(g.edge_count(), c)};
}

MembershipCertificate check_membership(const WeightedGraph& g, const EdgeLength& d, double p) {
    if (d.values.size() != static_cast<size_t>(g.edge_count()))
        throw std::invalid_argument("edge length not defined on every edge");
    if (!(p >= 1.0)) throw std::invalid_argument("check_membership: p must be >= 1");

    MembershipCertificate cert{p, true, kInfDist, -1, p > 1.0};
    if (p == 1.0) {
        // R_1: d <= 1 on edges.
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            const double slack = 1.0 - d.values[ei];
            if (slack < cert.worst_slack) {
                cert.worst_slack = slack;
                cert.witness = ei;
            }
        }
        if (g.edge_count() == 0) cert.worst_slack = 0.0;
        cert.is_member = cert.worst_slack >= -1e-12;
        return cert;
    }
    const double q = conjugate_exponent(p);
    for (int x = 0; x < g.vertex_count(); ++x) {
        KahanSum s;
        for (const auto& nb : g.neighbors(x)) s.add(nb.weight * std::pow(d.values[nb.edge], q));
        const double slack = g.measure(x) - s.value();
        if (slack < cert.worst_slack) {
            cert.worst_slack = slack;
            cert.witness = x;
        }
    }
    if (g.vertex_count() == 0) cert.worst_slack = 0.0;
    const double tol =
        cert.witness >= 0 ? 1e-12 * std::max(1.0, g.measure(cert.witness)) : 1e-12;
    cert.is_member = cert.worst_slack >= -tol;
    return cert;
}

double delta(const WeightedGraph& g, const EdgeLength& d) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("delta undefined on an edgeless graph");
    if (d.values.size() != static_cast<size_t>(g.edge_count()))
        throw std::invalid_argument("edge length not defined on every edge");
    return *std::min_element(d.values.begin(), d.values.end());
}

PseudoMetric::PseudoMetric(const WeightedGraph& g, EdgeLength lengths)
    : g_(&g), lengths_(std::move(lengths)) {
    if (lengths_.values.size() != static_cast<size_t>(g.edge_count()))
        throw std::invalid_argument("edge length not defined on every edge");
    for (double v : lengths_.values)
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("edge lengths must be nonnegative and finite");
}

const std::vector<double>& PseudoMetric::row(int source) const {
    if (source < 0 || source >= g_->vertex_count())
        throw std::invalid_argument("unknown center vertex");
    {
        std::lock_guard<std::mutex> lock(rows_mutex_);
        auto it = rows_.find(source);
        if (it != rows_.end()) return it->second; // node references are stable
    }

    // Label-setting shortest paths; ties broken by vertex index via the
    // (distance, vertex) queue key.
    std::vector<double> dist(g_->vertex_count(), kInfDist);
    dist[source] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.push({0.0, source});
    std::vector<char> done(g_->vertex_count(), 0);
    while (!queue.empty()) {
        auto [dx, x] = queue.top();
        queue.pop();
        if (done[x]) continue;
        done[x] = 1;
        for (const auto& nb : g_->neighbors(x)) {
            const double cand = dx + lengths_.values[nb.edge];
            if (cand < dist[nb.vertex]) {
                dist[nb.vertex] = cand;
                queue.push({cand, nb.vertex});
            }
        }
    }
    std::lock_guard<std::mutex> lock(rows_mutex_);
    return rows_.emplace(source, std::move(dist)).first->second;
}

double PseudoMetric::dist(int x, int y) const { return row(x)[y]; }

PseudoMetric path_metric_closure(const WeightedGraph& g, const EdgeLength& d) {
    return PseudoMetric(g, d);
}

EdgeLength restrict_to_edges(const PseudoMetric& pm, const std::string& name) {
    const WeightedGraph& g = pm.graph();
    std::vector<double> values(g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei)
        values[ei] = pm.dist(g.edges()[ei].u, g.edges()[ei].v);
    return EdgeLength{name, std::move(values)};
}

VertexSet distance_ball(const PseudoMetric& pm, int center, double radius) {
    if (radius < 0.0) throw std::invalid_argument("distance_ball: radius must be >= 0");
    const auto& dist = pm.row(center);
    std::vector<int> members;
    for (int x = 0; x < static_cast<int>(dist.size()); ++x)
        if (dist[x] <= radius) members.push_back(x);
    return VertexSet::of(std::move(members));
}

namespace {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

EdgeLength parse_edge_length(const WeightedGraph& g, std::string_view text,
                             const std::string& name) {
    std::vector<double> values(g.edge_count(), -1.0);
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string kind, u, v, val;
        if (!(ss >> kind)) continue;
        if (kind[0] == '#') continue;
        if (kind != "D" || !(ss >> u >> v >> val))
            throw ParseError(line_no, "expected 'D <u> <v> <value>'");
        auto iu = g.find_vertex(u);
        auto iv = g.find_vertex(v);
        if (!iu || !iv) throw ParseError(line_no, "unknown vertex id");
        double value;
        auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), value);
        if (ec != std::errc() || ptr != val.data() + val.size() || value < 0.0)
            throw ParseError(line_no, "invalid length value '" + val + "'");
        int a = std::min(*iu, *iv), b = std::max(*iu, *iv);
        const auto& edges = g.edges();
        int ei = -1;
        for (int i = 0; i < g.edge_count(); ++i)
            if (edges[i].u == a && edges[i].v == b) {
                ei = i;
                break;
            }
        if (ei < 0) throw ParseError(line_no, "pair " + u + "-" + v + " is not an edge");
        if (values[ei] >= 0.0) throw ParseError(line_no, "duplicate length for edge " + u + "-" + v);
        values[ei] = value;
    }
    for (int ei = 0; ei < g.edge_count(); ++ei)
        if (values[ei] < 0.0)
            throw ParseError(0, "missing length for edge " + g.vertex_id(g.edges()[ei].u) +
                                    "-" + g.vertex_id(g.edges()[ei].v));
    return EdgeLength{name, std::move(values)};
}

EdgeLength read_edge_length_file(const WeightedGraph& g, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_edge_length(g, ss.str(), "file:" + path);
}

std::string write_edge_length(const WeightedGraph& g, const EdgeLength& d) {
    struct Line {
        std::string a, b;
        double v;
    };
    std::vector<Line> lines;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        std::string a = g.vertex_id(g.edges()[ei].u), b = g.vertex_id(g.edges()[ei].v);
        if (b < a) std::swap(a, b);
        lines.push_back({std::move(a), std::move(b), d.values[ei]});
    }
    std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    std::string out;
    for (const Line& l : lines) out += "D " + l.a + " " + l.b + " " + format_number(l.v) + "\n";
    return out;
}

} // namespace pspect
