#pragma once

#include <cstdint>
#include <optional>

#include "pspect/graph.hpp"

namespace pspect {

enum class MeasurePolicy { Unit, Normalizing };

/// Output of a generator. Families that carry extra structure fill the
/// optional fields: tree_ball marks its interior and root, example2 reports
/// the chosen set W0 and the hub vertex wired to all of W0.
struct GeneratedGraph {
    WeightedGraph graph;
    std::optional<VertexSet> interior;
    int root = -1;
    std::optional<VertexSet> w0;
    int hub = -1;
};

GeneratedGraph generate_complete(int n, MeasurePolicy mp = MeasurePolicy::Unit);
GeneratedGraph generate_path(int n, MeasurePolicy mp = MeasurePolicy::Unit);
GeneratedGraph generate_cycle(int n, MeasurePolicy mp = MeasurePolicy::Unit);

/// Each pair independently kept with probability prob (SplitMix64 stream).
GeneratedGraph generate_erdos_renyi(int n, double prob, std::uint64_t seed,
                                    MeasurePolicy mp = MeasurePolicy::Unit);

/// Pairing-model sampling, rejecting self-loops and multi-edges; gives up
/// after 10000 attempts. Requires n*k even and k < n.
GeneratedGraph generate_k_regular(int n, int k, std::uint64_t seed,
                                  MeasurePolicy mp = MeasurePolicy::Unit);

/// Ball of the given radius in the infinite k-regular tree, BFS vertex order,
/// root "v0". interior = vertices at distance < radius (Dirichlet use).
GeneratedGraph generate_tree_ball(int k, int radius,
                                  MeasurePolicy mp = MeasurePolicy::Unit);

/// k-regular base graph plus one hub vertex w inside a seeded set W0 of size
/// w0_size (w0_size <= n/2) connected to every other vertex of W0. Weights
/// stay 0/1, so boundary measures of W0 itself are unchanged by the rewiring.
GeneratedGraph generate_example2(int n, int k, std::uint64_t seed, int w0_size,
                                 MeasurePolicy mp = MeasurePolicy::Unit);

} // namespace pspect
