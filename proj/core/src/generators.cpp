#include "pspect/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pspect/numeric.hpp"

namespace pspect {

namespace {

std::vector<std::string> make_ids(int n) {
    std::vector<std::string> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = "v" + std::to_string(i);
    return ids;
}

WeightedGraph finish(int n, std::vector<Edge> edges, MeasurePolicy mp) {
    WeightedGraph g(make_ids(n), std::vector<double>(n, 1.0), std::move(edges));
    if (mp == MeasurePolicy::Normalizing) return normalizing_measure(g);
    return g;
}

} // namespace

GeneratedGraph generate_complete(int n, MeasurePolicy mp) {
    if (n < 1) throw std::invalid_argument("complete: n must be >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
    return GeneratedGraph{finish(n, std::move(edges), mp)};
}

GeneratedGraph generate_path(int n, MeasurePolicy mp) {
    if (n < 1) throw std::invalid_argument("path: n must be >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, 1.0});
    return GeneratedGraph{finish(n, std::move(edges), mp)};
}

GeneratedGraph generate_cycle(int n, MeasurePolicy mp) {
    if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
    std::vector<Edge> edges;
    for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, 1.0});
    edges.push_back({0, n - 1, 1.0});
    return GeneratedGraph{finish(n, std::move(edges), mp)};
}

GeneratedGraph generate_erdos_renyi(int n, double prob, std::uint64_t seed, MeasurePolicy mp) {
    if (n < 1) throw std::invalid_argument("erdos_renyi: n must be >= 1");
    if (prob < 0.0 || prob > 1.0) throw std::invalid_argument("erdos_renyi: prob in [0,1]");
    SplitMix64 rng(SplitMix64::derive(seed, 0x4552ULL)); // "ER"
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_double() < prob) edges.push_back({u, v, 1.0});
    return GeneratedGraph{finish(n, std::move(edges), mp)};
}

GeneratedGraph generate_k_regular(int n, int k, std::uint64_t seed, MeasurePolicy mp) {
    if (n < 1 || k < 1) throw std::invalid_argument("k_regular: n, k must be >= 1");
    if (k >= n) throw std::invalid_argument("k_regular: need k < n");
    if ((static_cast<long long>(n) * k) % 2 != 0)
        throw std::invalid_argument("k_regular: n*k must be even");

    SplitMix64 rng(SplitMix64::derive(seed, 0x4b52ULL)); // "KR"
    const int attempts_cap = 10000;
    for (int attempt = 0; attempt < attempts_cap; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(static_cast<size_t>(n) * k);
        for (int v = 0; v < n; ++v)
            for (int j = 0; j < k; ++j) stubs.push_back(v);
        // Fisher-Yates
        for (size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[rng.next_below(i)]);

        std::vector<Edge> edges;
        std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
        bool ok = true;
        for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || seen[u][v]) {
                ok = false;
                break;
            }
            seen[u][v] = seen[v][u] = 1;
            edges.push_back({u, v, 1.0});
        }
        if (ok) return GeneratedGraph{finish(n, std::move(edges), mp)};
    }
    throw std::runtime_error("k_regular: pairing model failed within 10000 attempts");
}

GeneratedGraph generate_tree_ball(int k, int radius, MeasurePolicy mp) {
    if (k < 2) throw std::invalid_argument("tree_ball: k must be >= 2");
    if (radius < 0) throw std::invalid_argument("tree_ball: radius must be >= 0");

    // BFS construction: root has k children, every deeper vertex k-1.
    std::vector<Edge> edges;
    std::vector<int> depth{0};
    std::vector<int> frontier{0};
    int next = 1;
    for (int level = 1; level <= radius; ++level) {
        std::vector<int> next_frontier;
        for (int parent : frontier) {
            const int children = (parent == 0) ? k : k - 1;
            for (int c = 0; c < children; ++c) {
                edges.push_back({parent, next, 1.0});
                depth.push_back(level);
                next_frontier.push_back(next);
                ++next;
            }
        }
        frontier = std::move(next_frontier);
    }
    GeneratedGraph out{finish(next, std::move(edges), mp)};
    std::vector<int> interior;
    for (int v = 0; v < next; ++v)
        if (depth[v] < radius) interior.push_back(v);
    out.interior = VertexSet::of(std::move(interior));
    out.root = 0;
    return out;
}

GeneratedGraph generate_example2(int n, int k, std::uint64_t seed, int w0_size, MeasurePolicy mp) {
    if (w0_size < 2) throw std::invalid_argument("example2: w0_size must be >= 2");
    if (2 * w0_size > n) throw std::invalid_argument("example2: w0_size must be <= n/2");
    GeneratedGraph base = generate_k_regular(n, k, seed, MeasurePolicy::Unit);

    // Seeded W0: first w0_size entries of a random permutation; hub = its
    // smallest index.
    SplitMix64 rng(SplitMix64::derive(seed, 0x4532ULL)); // "E2"
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);
    std::vector<int> w0(perm.begin(), perm.begin() + w0_size);
    VertexSet w0_set = VertexSet::of(std::move(w0));
    const int hub = w0_set.members.front();

    std::vector<Edge> edges = base.graph.edges();
    for (int v : w0_set.members) {
        if (v == hub) continue;
        if (base.graph.adjacent(hub, v)) continue;
        edges.push_back({std::min(hub, v), std::max(hub, v), 1.0});
    }
    GeneratedGraph out{finish(n, std::move(edges), mp)};
    out.w0 = std::move(w0_set);
    out.hub = hub;
    return out;
}

} // namespace pspect
