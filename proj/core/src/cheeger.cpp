#include "pspect/cheeger.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "pspect/numeric.hpp"

namespace pspect {

std::vector<LevelSet> level_sets(const VertexFunction& f) {
    const int n = static_cast<int>(f.size());
    std::vector<double> values(f.begin(), f.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<LevelSet> out;
    auto super = [&](double t) {
        std::vector<int> members;
        for (int x = 0; x < n; ++x)
            if (f[x] > t) members.push_back(x);
        return VertexSet::of(std::move(members));
    };
    if (!values.empty()) out.push_back({values.front() - 1.0, super(values.front() - 1.0)});
    for (double v : values) out.push_back({v, super(v)});
    return out;
}

namespace {

void require_nonnegative(const VertexFunction& f, const char* what) {
    for (double v : f)
        if (v < 0.0) throw std::invalid_argument(std::string(what) + ": f must be nonnegative");
}

// Exact piecewise-constant integral of t -> weight(superlevel set of f at t)
// over [0, inf): thresholds 0 and the distinct positive values of f.
double levelset_integral(const WeightedGraph& g, const VertexFunction& f,
                         const std::vector<double>* edge_weight /* null => measure */) {
    std::vector<double> thresholds{0.0};
    for (double v : f)
        if (v > 0.0) thresholds.push_back(v);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    KahanSum total;
    for (size_t i = 0; i + 1 < thresholds.size(); ++i) {
        const double t = thresholds[i];
        std::vector<int> members;
        for (int x = 0; x < g.vertex_count(); ++x)
            if (f[x] > t) members.push_back(x);
        VertexSet omega = VertexSet::of(std::move(members));
        const double value = edge_weight
                                 ? boundary_measure(g, omega, *edge_weight, "w").value
                                 : set_measure(g, omega);
        total.add((thresholds[i + 1] - t) * value);
    }
    return total.value();
}

} // namespace

TwoSided coarea_check(const WeightedGraph& g, const std::vector<double>& edge_weight,
                      const VertexFunction& f) {
    require_nonnegative(f, "coarea_check");
    if (edge_weight.size() != static_cast<size_t>(g.edge_count()))
        throw std::invalid_argument("coarea_check: weight vector size mismatch");
    KahanSum lhs;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges()[ei];
        lhs.add(edge_weight[ei] * std::abs(f[e.u] - f[e.v]));
    }
    return TwoSided{lhs.value(), levelset_integral(g, f, &edge_weight)};
}

TwoSided area_check(const WeightedGraph& g, const VertexFunction& f) {
    require_nonnegative(f, "area_check");
    KahanSum lhs;
    for (int x = 0; x < g.vertex_count(); ++x) lhs.add(g.measure(x) * f[x]);
    return TwoSided{lhs.value(), levelset_integral(g, f, nullptr)};
}

TwoSided chain_rule_proxy_check(double a, double b, double p) {
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("chain_rule_proxy_check: a, b >= 0");
    if (!(p >= 1.0)) throw std::invalid_argument("chain_rule_proxy_check: p >= 1");
    const double ap = std::pow(a, p), bp = std::pow(b, p);
    const double lhs = std::abs(ap - bp);
    const double rhs = p * std::pow(0.5 * (ap + bp), (p - 1.0) / p) * std::abs(a - b);
    return TwoSided{lhs, rhs};
}

namespace {

struct BestSet {
    bool found = false;
    double ratio = kInfDist;
    double measure = kInfDist;
    std::vector<int> members;
};

// Ties resolve to smaller measure, then lexicographically smallest set.
void consider(BestSet& best, double ratio, double measure, std::vector<int> members) {
    if (!best.found || ratio < best.ratio ||
        (ratio == best.ratio &&
         (measure < best.measure ||
          (measure == best.measure &&
           std::lexicographical_compare(members.begin(), members.end(),
                                        best.members.begin(), best.members.end()))))) {
        best.found = true;
        best.ratio = ratio;
        best.measure = measure;
        best.members = std::move(members);
    }
}

double exact_cut(const WeightedGraph& g, const std::vector<char>& in,
                 const std::vector<double>& cut_weight) {
    KahanSum s;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges()[ei];
        if (in[e.u] != in[e.v]) s.add(cut_weight[ei]);
    }
    return s.value();
}

struct EnumSpec {
    std::vector<int> ground;   // toggled vertices
    bool complements = false;  // also consider X \ W
    double max_measure = kInfDist;
};

// Exact minimum of cut/measure over nonempty enumerated sets. Two passes over
// a Gray-code walk: the first tracks incrementally updated values to find an
// approximate minimum, the second re-evaluates every candidate within a small
// margin of it from scratch, so accumulated drift never picks a wrong witness.
BestSet min_ratio_enum(const WeightedGraph& g, const std::vector<double>& cut_weight,
                       const EnumSpec& spec) {
    const int n = g.vertex_count();
    const int ng = static_cast<int>(spec.ground.size());
    if (ng > 30) throw std::invalid_argument("enumeration ground set too large");
    const double total = g.total_measure();

    auto walk = [&](auto&& candidate) {
        std::vector<char> in(n, 0);
        double cut = 0.0;
        double mw = 0.0;
        const std::uint64_t count = 1ULL << ng;
        for (std::uint64_t i = 1; i < count; ++i) {
            const int bit = std::countr_zero(i);
            const int v = spec.ground[bit];
            if (!in[v]) {
                for (const auto& nb : g.neighbors(v))
                    cut += in[nb.vertex] ? -cut_weight[nb.edge] : cut_weight[nb.edge];
                in[v] = 1;
                mw += g.measure(v);
            } else {
                in[v] = 0;
                for (const auto& nb : g.neighbors(v))
                    cut += in[nb.vertex] ? cut_weight[nb.edge] : -cut_weight[nb.edge];
                mw -= g.measure(v);
            }
            candidate(in, cut, mw);
        }
    };

    // Pass 1: approximate minimum ratio.
    double approx_min = kInfDist;
    walk([&](const std::vector<char>& in, double cut, double mw) {
        (void)in;
        if (mw > 0.0 && mw <= spec.max_measure) approx_min = std::min(approx_min, cut / mw);
        if (spec.complements) {
            const double mc = total - mw;
            if (mc > 0.0 && mc <= spec.max_measure) approx_min = std::min(approx_min, cut / mc);
        }
    });
    BestSet best;
    if (approx_min == kInfDist) return best;

    // Pass 2: exact re-evaluation of candidates near the approximate minimum.
    const double margin = 1e-6 * std::max(1.0, std::abs(approx_min));
    walk([&](const std::vector<char>& in, double cut, double mw) {
        auto evaluate = [&](bool complement) {
            std::vector<char> flags = in;
            if (complement)
                for (int x = 0; x < n; ++x) flags[x] = !flags[x];
            const double c = exact_cut(g, flags, cut_weight);
            std::vector<int> members;
            KahanSum ms;
            for (int x = 0; x < n; ++x)
                if (flags[x]) {
                    members.push_back(x);
                    ms.add(g.measure(x));
                }
            consider(best, c / ms.value(), ms.value(), std::move(members));
        };
        if (mw > 0.0 && mw <= spec.max_measure && cut / mw <= approx_min + margin)
            evaluate(false);
        if (spec.complements) {
            const double mc = total - mw;
            if (mc > 0.0 && mc <= spec.max_measure && cut / mc <= approx_min + margin)
                evaluate(true);
        }
    });
    return best;
}

std::vector<double> bd_weights(const WeightedGraph& g, const EdgeLength& d) {
    if (d.values.size() != static_cast<size_t>(g.edge_count()))
        throw std::invalid_argument("edge length not defined on every edge");
    std::vector<double> w(g.edge_count());
    for (int ei = 0; ei < g.edge_count(); ++ei) w[ei] = g.edges()[ei].weight * d.values[ei];
    return w;
}

double half_measure_cap(const WeightedGraph& g) {
    return 0.5 * g.total_measure() + 1e-12 * g.total_measure();
}

} // namespace

IsoperimetricResult exact_isoperimetric(const WeightedGraph& g, const EdgeLength& d,
                                        IsoVariant variant,
                                        const std::optional<VertexSet>& interior,
                                        int max_exact_n) {
    const auto weights = bd_weights(g, d);
    EnumSpec spec;
    if (variant == IsoVariant::H1) {
        if (g.vertex_count() > max_exact_n)
            throw std::runtime_error("exact_isoperimetric: enumeration cutoff exceeded (n = " +
                                     std::to_string(g.vertex_count()) + " > " +
                                     std::to_string(max_exact_n) + "); use sweep mode");
        // Complement pruning: toggle everything except vertex 0; each
        // unordered {W, X\W} pair is visited exactly once.
        for (int v = 1; v < g.vertex_count(); ++v) spec.ground.push_back(v);
        spec.complements = true;
        spec.max_measure = half_measure_cap(g);
    } else {
        if (!interior) throw std::invalid_argument("h0_dirichlet requires an interior set");
        if (interior->empty()) throw std::invalid_argument("h0_dirichlet: empty interior");
        for (int v : interior->members)
            if (v < 0 || v >= g.vertex_count())
                throw std::invalid_argument("interior member out of range");
        if (interior->size() > max_exact_n)
            throw std::runtime_error("exact_isoperimetric: enumeration cutoff exceeded "
                                     "(interior size " + std::to_string(interior->size()) +
                                     " > " + std::to_string(max_exact_n) + "); use sweep mode");
        spec.ground = interior->members;
    }
    BestSet best = min_ratio_enum(g, weights, spec);
    if (!best.found) throw std::runtime_error("exact_isoperimetric: no admissible set");
    return IsoperimetricResult{best.ratio, VertexSet{std::move(best.members)}, IsoMode::Exact,
                               variant, d.name};
}

IsoperimetricResult sweep_cut(const WeightedGraph& g, const EdgeLength& d,
                              const VertexFunction& f, IsoVariant variant,
                              const std::optional<VertexSet>& interior, SweepLevels levels,
                              double p, std::vector<SweepEntry>* table) {
    if (f.size() != static_cast<size_t>(g.vertex_count()))
        throw std::invalid_argument("sweep_cut: function not defined on all vertices");
    {
        const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
        if (*lo == *hi) throw std::invalid_argument("sweep_cut: constant function");
    }
    if (variant == IsoVariant::H0Dirichlet) {
        if (!interior) throw std::invalid_argument("h0_dirichlet requires an interior set");
        if (interior->empty()) throw std::invalid_argument("h0_dirichlet: empty interior");
    }
    const auto weights = bd_weights(g, d);
    const double cap = half_measure_cap(g);

    VertexFunction base = f;
    if (levels == SweepLevels::AbsPowerValues)
        for (double& v : base) v = std::pow(std::abs(v), p);

    std::vector<VertexFunction> swept{base};
    if (variant == IsoVariant::H1) {
        VertexFunction neg = base;
        for (double& v : neg) v = -v;
        swept.push_back(std::move(neg));
    }

    BestSet best;
    for (const auto& fn : swept) {
        for (const LevelSet& ls : level_sets(fn)) {
            VertexSet w = ls.set;
            if (variant == IsoVariant::H0Dirichlet) {
                std::vector<int> kept;
                for (int x : w.members)
                    if (interior->contains(x)) kept.push_back(x);
                w = VertexSet{std::move(kept)};
            }
            if (w.empty()) continue;
            const double mw = set_measure(g, w);
            if (variant == IsoVariant::H1 && mw > cap) continue;
            const double cut = boundary_measure(g, w, weights, d.name).value;
            if (table) table->push_back(SweepEntry{ls.threshold, mw, cut / mw});
            consider(best, cut / mw, mw, w.members);
        }
    }
    if (!best.found) throw std::runtime_error("sweep_cut: no admissible level set");
    return IsoperimetricResult{best.ratio, VertexSet{std::move(best.members)}, IsoMode::Sweep,
                               variant, d.name};
}

GeneralIsoReport general_isoperimetric_check(const WeightedGraph& g,
                                             const std::vector<double>& w,
                                             const std::vector<double>& sigma,
                                             const SetFamily& family, const VertexFunction& f,
                                             double p, int max_exact_n) {
    const size_t ne = static_cast<size_t>(g.edge_count());
    if (w.size() != ne || sigma.size() != ne)
        throw std::invalid_argument("general_isoperimetric_check: weight vector size mismatch");
    if (!(p > 1.0)) throw std::invalid_argument("general_isoperimetric_check: p must be > 1");
    for (int ei = 0; ei < g.edge_count(); ++ei)
        if (w[ei] > g.edges()[ei].weight * sigma[ei])
            throw std::invalid_argument("general_isoperimetric_check: w <= b*sigma violated on edge " +
                                        std::to_string(ei));

    const double q = conjugate_exponent(p);
    std::vector<double> k_weight(g.vertex_count(), 0.0);
    for (int x = 0; x < g.vertex_count(); ++x) {
        KahanSum s;
        for (const auto& nb : g.neighbors(x)) s.add(nb.weight * std::pow(sigma[nb.edge], q));
        k_weight[x] = s.value();
    }

    EnumSpec spec;
    if (family.kind == SetFamily::Kind::AllSubsets) {
        VertexSet ground = family.ground.value_or([&] {
            std::vector<int> all(g.vertex_count());
            for (int i = 0; i < g.vertex_count(); ++i) all[i] = i;
            return VertexSet{std::move(all)};
        }());
        if (ground.size() > max_exact_n)
            throw std::runtime_error("general_isoperimetric_check: enumeration cutoff exceeded");
        for (int x = 0; x < g.vertex_count(); ++x)
            if (f[x] != 0.0 && !ground.contains(x))
                throw std::invalid_argument(
                    "general_isoperimetric_check: f not supported in the ground set");
        spec.ground = ground.members;
    } else {
        if (g.vertex_count() > max_exact_n)
            throw std::runtime_error("general_isoperimetric_check: enumeration cutoff exceeded");
        KahanSum supp;
        for (int x = 0; x < g.vertex_count(); ++x)
            if (f[x] != 0.0) supp.add(g.measure(x));
        if (supp.value() > half_measure_cap(g))
            throw std::invalid_argument(
                "general_isoperimetric_check: m(supp f) exceeds m(X)/2");
        for (int v = 1; v < g.vertex_count(); ++v) spec.ground.push_back(v);
        spec.complements = true;
        spec.max_measure = half_measure_cap(g);
    }
    BestSet best = min_ratio_enum(g, w, spec);
    const double h = best.found ? best.ratio : 0.0;

    KahanSum norm_m, norm_k;
    for (int x = 0; x < g.vertex_count(); ++x) {
        const double fp = std::pow(std::abs(f[x]), p);
        norm_m.add(g.measure(x) * fp);
        norm_k.add(k_weight[x] * fp);
    }
    const double lhs = std::pow(2.0, p - 1.0) / std::pow(p, p) * std::pow(h, p) *
                       std::pow(norm_m.value(), p);
    const double rhs = std::pow(norm_k.value(), p - 1.0) * energy(g, f, p);
    return GeneralIsoReport{h, lhs, rhs, rhs - lhs, lhs <= rhs, std::move(k_weight)};
}

} // namespace pspect
