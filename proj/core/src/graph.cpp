#include "pspect/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pspect/numeric.hpp"

namespace pspect {

VertexSet VertexSet::of(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return VertexSet{std::move(idx)};
}

bool VertexSet::contains(int x) const {
    return std::binary_search(members.begin(), members.end(), x);
}

WeightedGraph::WeightedGraph(std::vector<std::string> vertex_ids, std::vector<double> measure,
                             std::vector<Edge> edges)
    : ids_(std::move(vertex_ids)), measure_(std::move(measure)) {
    const int n = static_cast<int>(ids_.size());
    if (static_cast<int>(measure_.size()) != n)
        throw std::invalid_argument("measure size does not match vertex count");

    {
        std::vector<std::string> sorted = ids_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("duplicate vertex id");
    }
    KahanSum total;
    for (int x = 0; x < n; ++x) {
        if (!(measure_[x] > 0.0) || !std::isfinite(measure_[x]))
            throw std::invalid_argument("nonpositive measure at vertex " + ids_[x]);
        total.add(measure_[x]);
    }
    total_measure_ = total.value();

    for (Edge& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("self-loop at vertex index " +
                                                    std::to_string(e.u));
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("edge weight must be positive and finite");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.weight != 1.0) unit_weights_ = false;
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
            throw std::invalid_argument("duplicate edge " + ids_[edges[i].u] + "-" +
                                        ids_[edges[i].v]);
    edges_ = std::move(edges);

    // CSR adjacency, neighbor lists sorted by index for deterministic sums.
    std::vector<int> deg(n, 0);
    for (const Edge& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    adj_offset_.assign(n + 1, 0);
    for (int x = 0; x < n; ++x) adj_offset_[x + 1] = adj_offset_[x] + deg[x];
    adj_.resize(adj_offset_[n]);
    std::vector<int> fill(adj_offset_.begin(), adj_offset_.end() - 1);
    for (int ei = 0; ei < static_cast<int>(edges_.size()); ++ei) {
        const Edge& e = edges_[ei];
        adj_[fill[e.u]++] = Neighbor{e.v, e.weight, ei};
        adj_[fill[e.v]++] = Neighbor{e.u, e.weight, ei};
    }
    for (int x = 0; x < n; ++x)
        std::sort(adj_.begin() + adj_offset_[x], adj_.begin() + adj_offset_[x + 1],
                  [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });

    weight_sum_.assign(n, 0.0);
    for (int x = 0; x < n; ++x) {
        KahanSum s;
        for (const Neighbor& nb : neighbors(x)) s.add(nb.weight);
        weight_sum_[x] = s.value();
    }
}

int WeightedGraph::index_of(std::string_view id) const {
    if (auto i = find_vertex(id)) return *i;
    throw std::invalid_argument("unknown vertex id: " + std::string(id));
}

std::optional<int> WeightedGraph::find_vertex(std::string_view id) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (ids_[i] == id) return i;
    return std::nullopt;
}

std::span<const WeightedGraph::Neighbor> WeightedGraph::neighbors(int x) const {
    if (x < 0 || x >= vertex_count()) throw std::invalid_argument("vertex index out of range");
    return {adj_.data() + adj_offset_[x],
            static_cast<size_t>(adj_offset_[x + 1] - adj_offset_[x])};
}

double WeightedGraph::edge_weight(int u, int v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v,
                               [](const Neighbor& a, int b) { return a.vertex < b; });
    if (it != nb.end() && it->vertex == v) return it->weight;
    return 0.0;
}

WeightedGraph WeightedGraph::with_measure(std::vector<double> measure) const {
    return WeightedGraph(ids_, std::move(measure), edges_);
}

double weighted_degree(const WeightedGraph& g, int x) {
    if (x < 0 || x >= g.vertex_count())
        throw std::invalid_argument("vertex index out of range");
    return g.weight_sum(x) / g.measure(x);
}

double weighted_degree(const WeightedGraph& g, std::string_view id) {
    return weighted_degree(g, g.index_of(id));
}

WeightedGraph normalizing_measure(const WeightedGraph& g) {
    std::vector<double> m(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x) {
        m[x] = g.weight_sum(x);
        if (!(m[x] > 0.0))
            throw std::invalid_argument("isolated vertex " + g.vertex_id(x) +
                                        ": normalizing measure would vanish");
    }
    return g.with_measure(std::move(m));
}

BoundaryMeasureResult boundary_measure(const WeightedGraph& g, const VertexSet& w_set,
                                       const std::vector<double>& edge_weight,
                                       const std::string& weight_name) {
    if (edge_weight.size() != static_cast<size_t>(g.edge_count()))
        throw std::invalid_argument("edge weight vector size mismatch");
    std::vector<char> in(g.vertex_count(), 0);
    for (int x : w_set.members) {
        if (x < 0 || x >= g.vertex_count())
            throw std::invalid_argument("set member out of range");
        in[x] = 1;
    }
    KahanSum s;
    const auto& edges = g.edges();
    for (int ei = 0; ei < g.edge_count(); ++ei)
        if (in[edges[ei].u] != in[edges[ei].v]) s.add(edge_weight[ei]);
    return BoundaryMeasureResult{w_set, weight_name, s.value()};
}

double set_measure(const WeightedGraph& g, const VertexSet& w_set) {
    KahanSum s;
    for (int x : w_set.members) s.add(g.measure(x));
    return s.value();
}

std::vector<int> connected_components(const WeightedGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    int label = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::deque<int> queue{s};
        comp[s] = label;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (const auto& nb : g.neighbors(x))
                if (comp[nb.vertex] == -1) {
                    comp[nb.vertex] = label;
                    queue.push_back(nb.vertex);
                }
        }
        ++label;
    }
    return comp;
}

bool is_connected(const WeightedGraph& g) {
    if (g.vertex_count() == 0) return true;
    auto comp = connected_components(g);
    return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, int line_no, const char* what) {
    double v;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line_no, std::string("invalid ") + what + " '" + tok + "'");
    return v;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

WeightedGraph parse_graph(std::string_view text) {
    std::vector<std::string> ids;
    std::vector<double> measure;
    std::vector<Edge> edges;
    std::unordered_map<std::string, int> index;
    std::unordered_set<long long> edge_keys;

    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = tokenize(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (tok[0] == "V") {
            if (tok.size() < 2 || tok.size() > 3)
                throw ParseError(line_no, "expected 'V <id> [<m>]'");
            if (index.count(tok[1]))
                throw ParseError(line_no, "duplicate vertex id '" + tok[1] + "'");
            double m = tok.size() == 3 ? parse_number(tok[2], line_no, "measure") : 1.0;
            if (!(m > 0.0)) throw ParseError(line_no, "nonpositive measure for '" + tok[1] + "'");
            index.emplace(tok[1], static_cast<int>(ids.size()));
            ids.push_back(tok[1]);
            measure.push_back(m);
        } else if (tok[0] == "E") {
            if (tok.size() != 4) throw ParseError(line_no, "expected 'E <u> <v> <b>'");
            auto iu = index.find(tok[1]);
            auto iv = index.find(tok[2]);
            if (iu == index.end())
                throw ParseError(line_no, "edge endpoint '" + tok[1] + "' not declared");
            if (iv == index.end())
                throw ParseError(line_no, "edge endpoint '" + tok[2] + "' not declared");
            double b = parse_number(tok[3], line_no, "edge weight");
            if (b < 0.0) throw ParseError(line_no, "negative weight on edge " + tok[1] + "-" + tok[2]);
            if (b == 0.0) throw ParseError(line_no, "zero weight on edge " + tok[1] + "-" + tok[2]);
            if (iu->second == iv->second)
                throw ParseError(line_no, "self-loop at '" + tok[1] + "'");
            const long long key = static_cast<long long>(std::min(iu->second, iv->second)) *
                                      (1LL << 31) +
                                  std::max(iu->second, iv->second);
            if (!edge_keys.insert(key).second)
                throw ParseError(line_no, "duplicate edge " + tok[1] + "-" + tok[2]);
            edges.push_back(Edge{std::min(iu->second, iv->second),
                                 std::max(iu->second, iv->second), b});
        } else {
            throw ParseError(line_no, "unrecognized line kind '" + tok[0] + "'");
        }
    }
    try {
        return WeightedGraph(std::move(ids), std::move(measure), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

WeightedGraph read_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_graph(ss.str());
}

std::string write_graph(const WeightedGraph& g) {
    std::vector<int> order(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.vertex_id(a) < g.vertex_id(b); });

    std::string out;
    for (int x : order)
        out += "V " + g.vertex_id(x) + " " + format_number(g.measure(x)) + "\n";

    struct Line {
        std::string a, b;
        double w;
    };
    std::vector<Line> lines;
    for (const Edge& e : g.edges()) {
        std::string a = g.vertex_id(e.u), b = g.vertex_id(e.v);
        if (b < a) std::swap(a, b);
        lines.push_back({std::move(a), std::move(b), e.weight});
    }
    std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    for (const Line& l : lines)
        out += "E " + l.a + " " + l.b + " " + format_number(l.w) + "\n";
    return out;
}

VertexSet parse_vertex_set(const WeightedGraph& g, std::string_view text) {
    std::vector<int> members;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = tokenize(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (tok.size() != 1) throw ParseError(line_no, "expected one vertex id per line");
        auto idx = g.find_vertex(tok[0]);
        if (!idx) throw ParseError(line_no, "unknown vertex id '" + tok[0] + "'");
        members.push_back(*idx);
    }
    return VertexSet::of(std::move(members));
}

VertexSet read_vertex_set_file(const WeightedGraph& g, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_vertex_set(g, ss.str());
}

std::string write_vertex_set(const WeightedGraph& g, const VertexSet& s) {
    std::vector<std::string> ids;
    for (int x : s.members) ids.push_back(g.vertex_id(x));
    std::sort(ids.begin(), ids.end());
    std::string out;
    for (const auto& id : ids) out += id + "\n";
    return out;
}

} // namespace pspect
