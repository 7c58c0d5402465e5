#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pspect {

/// Parse failure with the 1-based line number of the offending input line
/// (0 when no line applies).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// One undirected edge, endpoints as dense vertex indices with u < v.
struct Edge {
    int u;
    int v;
    double weight;
};

/// Subset of a graph's vertices; members sorted, unique.
struct VertexSet {
    std::vector<int> members;

    static VertexSet of(std::vector<int> idx);
    bool contains(int x) const;
    int size() const { return static_cast<int>(members.size()); }
    bool empty() const { return members.empty(); }
    bool operator==(const VertexSet&) const = default;
};

/// Immutable weighted graph: vertex ids, symmetric positive edge weights with
/// zero diagonal, and a strictly positive vertex measure. Construction
/// validates every invariant; instances are safe for concurrent shared reads.
class WeightedGraph {
public:
    struct Neighbor {
        int vertex;
        double weight;
        int edge; // index into edges()
    };

    WeightedGraph(std::vector<std::string> vertex_ids, std::vector<double> measure,
                  std::vector<Edge> edges);

    int vertex_count() const { return static_cast<int>(ids_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::string>& vertex_ids() const { return ids_; }
    const std::string& vertex_id(int x) const { return ids_.at(x); }
    int index_of(std::string_view id) const; // throws on unknown id
    std::optional<int> find_vertex(std::string_view id) const;

    double measure(int x) const { return measure_.at(x); }
    const std::vector<double>& measures() const { return measure_; }
    double total_measure() const { return total_measure_; }

    /// Edges sorted by (u, v); iteration order is the determinism anchor for
    /// every sum in the toolkit.
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Neighbor> neighbors(int x) const;

    /// Cached sum of incident weights: the weighted-degree numerator.
    double weight_sum(int x) const { return weight_sum_.at(x); }

    double edge_weight(int u, int v) const; // 0 when not adjacent
    bool adjacent(int u, int v) const { return edge_weight(u, v) > 0.0; }

    bool all_unit_weights() const { return unit_weights_; }

    /// Copy with a replaced measure (same validation).
    WeightedGraph with_measure(std::vector<double> measure) const;

private:
    std::vector<std::string> ids_;
    std::vector<double> measure_;
    std::vector<Edge> edges_;
    std::vector<Neighbor> adj_;
    std::vector<int> adj_offset_;
    std::vector<double> weight_sum_;
    double total_measure_ = 0.0;
    bool unit_weights_ = true;
};

/// Deg(x) = (1/m(x)) * sum_y b(x,y).
double weighted_degree(const WeightedGraph& g, int x);
double weighted_degree(const WeightedGraph& g, std::string_view id);

/// Replaces the measure by m(x) = sum_y b(x,y); afterwards Deg == 1.
/// Throws if any vertex is isolated (its new measure would be 0).
WeightedGraph normalizing_measure(const WeightedGraph& g);

struct BoundaryMeasureResult {
    VertexSet set;
    std::string weight_name;
    double value;
};

/// |dW|_w for an edge-supported symmetric weight, given per edge of g
/// (aligned with g.edges()). Sums over edges with exactly one endpoint in W.
BoundaryMeasureResult boundary_measure(const WeightedGraph& g, const VertexSet& w_set,
                                       const std::vector<double>& edge_weight,
                                       const std::string& weight_name);

double set_measure(const WeightedGraph& g, const VertexSet& w_set);

/// Component label per vertex, labels 0.. in order of smallest contained index.
std::vector<int> connected_components(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);

/// Graph file format: '#' comments, "V <id> [<m>]" lines (m defaults to 1),
/// then "E <u> <v> <b>" lines with b > 0 referencing declared vertices.
WeightedGraph parse_graph(std::string_view text);
WeightedGraph read_graph_file(const std::string& path);

/// Byte-deterministic writer: vertices sorted by id, edges sorted
/// lexicographically by endpoint ids, numbers at full precision.
std::string write_graph(const WeightedGraph& g);

/// Vertex-set files: one vertex id per line, '#' comments.
VertexSet parse_vertex_set(const WeightedGraph& g, std::string_view text);
VertexSet read_vertex_set_file(const WeightedGraph& g, const std::string& path);
std::string write_vertex_set(const WeightedGraph& g, const VertexSet& s);

} // namespace pspect
