#pragma once

#include <string>
#include <vector>

#include "pspect/graph.hpp"

namespace pspect {

/// Real-valued function on the vertices of a fixed graph, indexed like the
/// graph's vertices.
using VertexFunction = std::vector<double>;

/// E_p(f) = sum over edges of b(x,y) |f(x)-f(y)|^p  (the half-double-sum
/// convention: each unordered edge once with full weight).
double energy(const WeightedGraph& g, const VertexFunction& f, double p);

/// L_p f(x) = (1/m(x)) sum_y b(x,y) |f(x)-f(y)|^(p-2) (f(x)-f(y)),
/// the |t|^(p-2) t kernel extended by 0 at t = 0. Linear at p = 2.
VertexFunction p_laplacian_apply(const WeightedGraph& g, const VertexFunction& f, double p);

/// Directional derivative of E_p at f:
/// E_p'(f) dir = (1/2) sum b |f(x)-f(y)|^(p-2) (f(x)-f(y)) (dir(x)-dir(y)).
/// Equals <L_p f, dir>_m by summation by parts.
double energy_derivative(const WeightedGraph& g, const VertexFunction& f,
                         const VertexFunction& dir, double p);

/// The gamma minimizing sum_x m(x) |f(x)-gamma|^p: m-weighted mean at p = 2,
/// smallest m-weighted median at p = 1, otherwise the root of the monotone
/// derivative by bisection on [min f, max f].
double p_mean_shift(const WeightedGraph& g, const VertexFunction& f, double p);

struct QuotientValue {
    double energy;  // E_p(f)
    double norm_p;  // || f - shift ||_{m,p}
    double shift;   // 0 for the ground variant
    double quotient; // energy / norm_p^p
};

enum class QuotientVariant { Ground, Gap };

/// Ground: E_p(f) / ||f||^p (f must be nonzero).
/// Gap: E_p(f) / min_gamma ||f - gamma||^p (f must be non-constant).
QuotientValue rayleigh(const WeightedGraph& g, const VertexFunction& f, double p,
                       QuotientVariant variant);

/// max_x m(x) |L_p f(x) - lambda |f(x)|^(p-2) f(x)|: the worst violation of
/// the eigenvalue equation over coordinate test directions.
double weak_solution_residual(const WeightedGraph& g, const VertexFunction& f,
                              double lambda, double p);

/// Vertex-function files: "F <vertex> <value>" lines, '#' comments; every
/// vertex must be covered exactly once.
VertexFunction parse_vertex_function(const WeightedGraph& g, std::string_view text);
VertexFunction read_vertex_function_file(const WeightedGraph& g, const std::string& path);
std::string write_vertex_function(const WeightedGraph& g, const VertexFunction& f);

} // namespace pspect
