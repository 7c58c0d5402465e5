#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// here deliberately avoid the library's own code paths: subset enumeration is
// plain recursion over index vectors with fresh summation, derivatives come
// from central differences, and expected eigenvalues from hand-solvable
// spectra.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "pspect/energy.hpp"
#include "pspect/generators.hpp"
#include "pspect/graph.hpp"
#include "pspect/metrics.hpp"
#include "pspect/numeric.hpp"

namespace testsupport {

inline bool close(double a, double b, double rel = 1e-12, double abs_tol = 1e-12) {
    return std::abs(a - b) <= std::max(abs_tol, rel * std::max(std::abs(a), std::abs(b)));
}

inline pspect::WeightedGraph k2() {
    return pspect::parse_graph("V a 1\nV b 1\nE a b 1\n");
}

inline pspect::WeightedGraph path3() {
    return pspect::parse_graph("V a 1\nV b 1\nV c 1\nE a b 1\nE b c 1\n");
}

inline pspect::WeightedGraph star(int leaves) {
    std::string text = "V c 1\n";
    for (int i = 0; i < leaves; ++i) text += "V l" + std::to_string(i) + " 1\n";
    for (int i = 0; i < leaves; ++i) text += "E c l" + std::to_string(i) + " 1\n";
    return pspect::parse_graph(text);
}

/// Two unit triangles joined by a single bridge edge.
inline pspect::WeightedGraph two_triangles() {
    return pspect::parse_graph(
        "V a 1\nV b 1\nV c 1\nV d 1\nV e 1\nV f 1\n"
        "E a b 1\nE a c 1\nE b c 1\nE c d 1\nE d e 1\nE d f 1\nE e f 1\n");
}

/// Seeded connected Erdos-Renyi instance with optional random weights and
/// measures; resamples the edge set until connected.
inline pspect::WeightedGraph random_connected(int n, double prob, std::uint64_t seed,
                                              bool random_weights = false,
                                              bool random_measures = false) {
    pspect::SplitMix64 rng(seed);
    for (int attempt = 0;; ++attempt) {
        auto gen = pspect::generate_erdos_renyi(n, prob, seed + 7919 * attempt);
        if (!pspect::is_connected(gen.graph)) continue;
        if (!random_weights && !random_measures) return gen.graph;
        std::vector<pspect::Edge> edges = gen.graph.edges();
        if (random_weights)
            for (auto& e : edges) e.weight = 0.2 + 1.8 * rng.next_double();
        std::vector<double> m(n, 1.0);
        if (random_measures)
            for (auto& v : m) v = 0.5 + 1.5 * rng.next_double();
        return pspect::WeightedGraph(gen.graph.vertex_ids(), std::move(m), std::move(edges));
    }
}

inline pspect::VertexFunction random_function(int n, pspect::SplitMix64& rng,
                                              double lo = -1.0, double hi = 1.0) {
    pspect::VertexFunction f(n);
    for (double& v : f) v = lo + (hi - lo) * rng.next_double();
    return f;
}

/// Independent minimum-ratio oracle: recursive enumeration over all subsets,
/// boundary and measure summed from scratch per subset.
struct BruteIso {
    double constant = std::numeric_limits<double>::infinity();
    std::vector<int> witness;
};

inline double brute_cut(const pspect::WeightedGraph& g, const std::vector<int>& members,
                        const std::vector<double>& w) {
    std::vector<char> in(g.vertex_count(), 0);
    for (int x : members) in[x] = 1;
    double total = 0.0;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const auto& e = g.edges()[ei];
        if (in[e.u] != in[e.v]) total += w[ei];
    }
    return total;
}

inline void brute_visit(const pspect::WeightedGraph& g, const std::vector<int>& ground,
                        const std::vector<double>& w, double max_measure, size_t at,
                        std::vector<int>& cur, BruteIso& best) {
    if (at == ground.size()) {
        if (cur.empty()) return;
        double m = 0.0;
        for (int x : cur) m += g.measure(x);
        if (m > max_measure) return;
        const double ratio = brute_cut(g, cur, w) / m;
        if (ratio < best.constant) {
            best.constant = ratio;
            best.witness = cur;
        }
        return;
    }
    brute_visit(g, ground, w, max_measure, at + 1, cur, best);
    cur.push_back(ground[at]);
    brute_visit(g, ground, w, max_measure, at + 1, cur, best);
    cur.pop_back();
}

/// h1 oracle: all nonempty W with m(W) <= m(X)/2 (no complement tricks).
inline BruteIso brute_h1(const pspect::WeightedGraph& g, const pspect::EdgeLength& d) {
    std::vector<double> w(g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) w[ei] = g.edges()[ei].weight * d.values[ei];
    std::vector<int> ground(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) ground[i] = i;
    BruteIso best;
    std::vector<int> cur;
    brute_visit(g, ground, w, 0.5 * g.total_measure() + 1e-12 * g.total_measure(), 0, cur, best);
    return best;
}

/// h0 Dirichlet oracle: all nonempty subsets of the interior.
inline BruteIso brute_h0(const pspect::WeightedGraph& g, const pspect::EdgeLength& d,
                         const pspect::VertexSet& interior) {
    std::vector<double> w(g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) w[ei] = g.edges()[ei].weight * d.values[ei];
    BruteIso best;
    std::vector<int> cur;
    brute_visit(g, interior.members, w, std::numeric_limits<double>::infinity(), 0, cur, best);
    return best;
}

/// Central finite-difference oracle for the energy derivative.
inline double fd_energy_derivative(const pspect::WeightedGraph& g,
                                   const pspect::VertexFunction& f,
                                   const pspect::VertexFunction& dir, double p,
                                   double h = 1e-5) {
    pspect::VertexFunction plus = f, minus = f;
    for (size_t i = 0; i < f.size(); ++i) {
        plus[i] += h * dir[i];
        minus[i] -= h * dir[i];
    }
    return (pspect::energy(g, plus, p) - pspect::energy(g, minus, p)) / (2.0 * h);
}

} // namespace testsupport
