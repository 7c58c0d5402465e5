#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pspect/energy.hpp"
#include "pspect/graph.hpp"
#include "pspect/metrics.hpp"

namespace pspect {

struct LevelSet {
    double threshold;
    VertexSet set; // { x : f(x) > threshold }
};

/// Superlevel sets of f: the full set at a threshold below min f, then one
/// entry per distinct value (the last one empty). Between consecutive
/// distinct values the level set is constant, so the list is exhaustive.
std::vector<LevelSet> level_sets(const VertexFunction& f);

struct TwoSided {
    double lhs;
    double rhs;
};

/// Co-area formula, both sides: (1/2) sum w|f(x)-f(y)| vs the exact
/// piecewise-constant integral of w(boundary of superlevel sets). f >= 0.
TwoSided coarea_check(const WeightedGraph& g, const std::vector<double>& edge_weight,
                      const VertexFunction& f);

/// Area formula: sum m f vs the integral of m(superlevel sets). f >= 0.
TwoSided area_check(const WeightedGraph& g, const VertexFunction& f);

/// Chain-rule proxy: |a^p - b^p| vs p ((a^p + b^p)/2)^((p-1)/p) |a - b|.
TwoSided chain_rule_proxy_check(double a, double b, double p);

enum class IsoVariant { H1, H0Dirichlet };
enum class IsoMode { Exact, Sweep };

struct IsoperimetricResult {
    double constant;
    VertexSet witness;
    IsoMode mode;
    IsoVariant variant;
    std::string metric_name;
};

/// Exact minimum of |dW|_{bd} / m(W).
/// H1: nonempty W with m(W) <= m(X)/2 (tolerance 1e-12 m(X)), enumerated with
/// complement pruning. H0Dirichlet: nonempty W inside `interior`, boundary
/// measured in the host graph. Throws when the enumeration exceeds
/// max_exact_n vertices (default 24); use sweep_cut beyond that.
/// Ties resolve to the smaller measure, then the lexicographically smallest
/// vertex set.
IsoperimetricResult exact_isoperimetric(const WeightedGraph& g, const EdgeLength& d,
                                        IsoVariant variant,
                                        const std::optional<VertexSet>& interior = {},
                                        int max_exact_n = 24);

enum class SweepLevels { FunctionValues, AbsPowerValues };

struct SweepEntry {
    double threshold;
    double measure;
    double ratio;
};

/// Best ratio over the level sets of f (H1: also of -f, measure-constrained;
/// H0Dirichlet: each level set intersected with the interior). With
/// AbsPowerValues the swept function is |f|^p. Result is an upper bound on
/// the exact constant. When `table` is given it receives one entry per
/// admissible candidate in sweep order.
IsoperimetricResult sweep_cut(const WeightedGraph& g, const EdgeLength& d,
                              const VertexFunction& f, IsoVariant variant,
                              const std::optional<VertexSet>& interior = {},
                              SweepLevels levels = SweepLevels::FunctionValues,
                              double p = 2.0, std::vector<SweepEntry>* table = nullptr);

/// Admissible-set family for the general isoperimetric constant.
/// AllSubsets: every nonempty subset of the ground set (default: all
/// vertices); test functions must be supported in the ground set.
/// HalfMeasure: nonempty W with m(W) <= m(X)/2; test functions must have
/// m(supp f) <= m(X)/2.
struct SetFamily {
    enum class Kind { AllSubsets, HalfMeasure };
    Kind kind = Kind::AllSubsets;
    std::optional<VertexSet> ground; // AllSubsets only

    static SetFamily all_subsets() { return {Kind::AllSubsets, std::nullopt}; }
    static SetFamily all_subsets_of(VertexSet s) { return {Kind::AllSubsets, std::move(s)}; }
    static SetFamily half_measure() { return {Kind::HalfMeasure, std::nullopt}; }
};

struct GeneralIsoReport {
    double h;                     // exact general isoperimetric constant
    double lhs;                   // (2^(p-1)/p^p) h^p ||f||_{m,p}^(p^2)
    double rhs;                   // ||f||_{k,p}^(p(p-1)) E_p(f)
    double slack;                 // rhs - lhs
    bool holds;
    std::vector<double> k_weight; // k(x) = sum_y b sigma^(p/(p-1))
};

/// Checks the general isoperimetric estimate for w <= b*sigma (both given per
/// edge). Requires the family within the enumeration cutoff and f admissible
/// for the family.
GeneralIsoReport general_isoperimetric_check(const WeightedGraph& g,
                                             const std::vector<double>& w,
                                             const std::vector<double>& sigma,
                                             const SetFamily& family,
                                             const VertexFunction& f, double p,
                                             int max_exact_n = 24);

} // namespace pspect
