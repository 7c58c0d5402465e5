#include "pspect/energy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pspect/numeric.hpp"

namespace pspect {

namespace {

void require_defined(const WeightedGraph& g, const VertexFunction& f, const char* what) {
    if (f.size() != static_cast<size_t>(g.vertex_count()))
        throw std::invalid_argument(std::string(what) + ": function not defined on all vertices");
    for (double v : f)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite value");
}

} // namespace

double energy(const WeightedGraph& g, const VertexFunction& f, double p) {
    require_defined(g, f, "energy");
    if (!(p >= 1.0)) throw std::invalid_argument("energy: p must be >= 1");
    KahanSum s;
    for (const Edge& e : g.edges()) s.add(e.weight * std::pow(std::abs(f[e.u] - f[e.v]), p));
    return s.value();
}

VertexFunction p_laplacian_apply(const WeightedGraph& g, const VertexFunction& f, double p) {
    require_defined(g, f, "p_laplacian_apply");
    if (!(p > 1.0)) throw std::invalid_argument("p_laplacian_apply: p must be > 1");
    VertexFunction out(g.vertex_count(), 0.0);
    for (int x = 0; x < g.vertex_count(); ++x) {
        KahanSum s;
        for (const auto& nb : g.neighbors(x)) s.add(nb.weight * phi_p(f[x] - f[nb.vertex], p));
        out[x] = s.value() / g.measure(x);
    }
    return out;
}

double energy_derivative(const WeightedGraph& g, const VertexFunction& f,
                         const VertexFunction& dir, double p) {
    require_defined(g, f, "energy_derivative");
    require_defined(g, dir, "energy_derivative");
    if (!(p > 1.0)) throw std::invalid_argument("energy_derivative: p must be > 1");
    KahanSum s;
    for (const Edge& e : g.edges())
        s.add(e.weight * phi_p(f[e.u] - f[e.v], p) * (dir[e.u] - dir[e.v]));
    return s.value();
}

namespace {

// Derivative sign function for the shifted p-norm: S(gamma) =
// sum m |f-gamma|^(p-2) (f-gamma), strictly decreasing in gamma.
double shift_derivative(const WeightedGraph& g, const VertexFunction& f, double p,
                        double gamma) {
    KahanSum s;
    for (int x = 0; x < g.vertex_count(); ++x) s.add(g.measure(x) * phi_p(f[x] - gamma, p));
    return s.value();
}

} // namespace

double p_mean_shift(const WeightedGraph& g, const VertexFunction& f, double p) {
    require_defined(g, f, "p_mean_shift");
    if (!(p >= 1.0)) throw std::invalid_argument("p_mean_shift: p must be >= 1");
    if (f.empty()) throw std::invalid_argument("p_mean_shift: empty function");

    const double lo = *std::min_element(f.begin(), f.end());
    const double hi = *std::max_element(f.begin(), f.end());
    if (lo == hi) return lo;

    if (p == 2.0) {
        KahanSum num;
        for (int x = 0; x < g.vertex_count(); ++x) num.add(g.measure(x) * f[x]);
        return num.value() / g.total_measure();
    }
    if (p == 1.0) {
        // Weighted median; the minimizer can be an interval, take its
        // smallest endpoint. Candidates are the distinct values of f.
        std::vector<double> vals(f.begin(), f.end());
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        double best_gamma = vals.front();
        double best_obj = kInfDist;
        for (double gamma : vals) {
            KahanSum obj;
            for (int x = 0; x < g.vertex_count(); ++x)
                obj.add(g.measure(x) * std::abs(f[x] - gamma));
            if (obj.value() < best_obj) {
                best_obj = obj.value();
                best_gamma = gamma;
            }
        }
        return best_gamma;
    }

    double a = lo, b = hi;
    const double tol = 1e-12 * (hi - lo);
    // S(a) >= 0 >= S(b); bisect to the stated absolute tolerance.
    for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
        const double mid = 0.5 * (a + b);
        if (shift_derivative(g, f, p, mid) >= 0.0)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

QuotientValue rayleigh(const WeightedGraph& g, const VertexFunction& f, double p,
                       QuotientVariant variant) {
    require_defined(g, f, "rayleigh");
    if (!(p >= 1.0)) throw std::invalid_argument("rayleigh: p must be >= 1");

    double shift = 0.0;
    if (variant == QuotientVariant::Gap) {
        const double lo = *std::min_element(f.begin(), f.end());
        const double hi = *std::max_element(f.begin(), f.end());
        if (lo == hi) throw std::invalid_argument("rayleigh(gap): constant function");
        shift = p_mean_shift(g, f, p);
    } else {
        if (std::all_of(f.begin(), f.end(), [](double v) { return v == 0.0; }))
            throw std::invalid_argument("rayleigh(ground): zero function");
    }
    KahanSum norm_sum;
    for (int x = 0; x < g.vertex_count(); ++x)
        norm_sum.add(g.measure(x) * std::pow(std::abs(f[x] - shift), p));
    const double e = energy(g, f, p);
    return QuotientValue{e, std::pow(norm_sum.value(), 1.0 / p), shift,
                         e / norm_sum.value()};
}

double weak_solution_residual(const WeightedGraph& g, const VertexFunction& f,
                              double lambda, double p) {
    const VertexFunction lap = p_laplacian_apply(g, f, p);
    double worst = 0.0;
    for (int x = 0; x < g.vertex_count(); ++x) {
        const double r = std::abs(lap[x] - lambda * phi_p(f[x], p)) * g.measure(x);
        worst = std::max(worst, r);
    }
    return worst;
}

VertexFunction parse_vertex_function(const WeightedGraph& g, std::string_view text) {
    VertexFunction f(g.vertex_count());
    std::vector<char> seen(g.vertex_count(), 0);
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string kind, id, val;
        if (!(ss >> kind)) continue;
        if (kind[0] == '#') continue;
        if (kind != "F" || !(ss >> id >> val))
            throw ParseError(line_no, "expected 'F <vertex> <value>'");
        auto idx = g.find_vertex(id);
        if (!idx) throw ParseError(line_no, "unknown vertex id '" + id + "'");
        if (seen[*idx]) throw ParseError(line_no, "duplicate value for vertex '" + id + "'");
        double value;
        auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), value);
        if (ec != std::errc() || ptr != val.data() + val.size())
            throw ParseError(line_no, "invalid value '" + val + "'");
        seen[*idx] = 1;
        f[*idx] = value;
    }
    for (int x = 0; x < g.vertex_count(); ++x)
        if (!seen[x]) throw ParseError(0, "missing value for vertex '" + g.vertex_id(x) + "'");
    return f;
}

VertexFunction read_vertex_function_file(const WeightedGraph& g, const std::string& path) {
    std::ifstream fs(path);
    if (!fs) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << fs.rdbuf();
    return parse_vertex_function(g, ss.str());
}

std::string write_vertex_function(const WeightedGraph& g, const VertexFunction& f) {
    std::vector<int> order(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.vertex_id(a) < g.vertex_id(b); });
    std::string out;
    char buf[40];
    for (int x : order) {
        std::snprintf(buf, sizeof buf, "%.17g", f[x]);
        out += "F " + g.vertex_id(x) + " " + buf + "\n";
    }
    return out;
}

} // namespace pspect
