#include "pspect/eigensolver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "pspect/cheeger.hpp"
#include "pspect/metrics.hpp"
#include "pspect/numeric.hpp"

namespace pspect {

namespace {

double norm_p_sum(const WeightedGraph& g, const VertexFunction& f, double p) {
    KahanSum s;
    for (int x = 0; x < g.vertex_count(); ++x)
        s.add(g.measure(x) * std::pow(std::abs(f[x]), p));
    return s.value();
}

// Smoothed kernel (t^2 + eps^2)^(p/2) - eps^p; plain |t|^p at eps = 0.
double smoothed_energy(const WeightedGraph& g, const VertexFunction& f, double p, double eps) {
    KahanSum s;
    if (eps == 0.0) {
        for (const Edge& e : g.edges()) s.add(e.weight * std::pow(std::abs(f[e.u] - f[e.v]), p));
    } else {
        const double epsp = std::pow(eps, p);
        for (const Edge& e : g.edges()) {
            const double t = f[e.u] - f[e.v];
            s.add(e.weight * (std::pow(t * t + eps * eps, 0.5 * p) - epsp));
        }
    }
    return s.value();
}

// (1/m) times the gradient of the smoothed energy: the smoothed p-Laplacian.
VertexFunction smoothed_laplacian(const WeightedGraph& g, const VertexFunction& f, double p,
                                  double eps) {
    VertexFunction out(g.vertex_count(), 0.0);
    for (int x = 0; x < g.vertex_count(); ++x) {
        KahanSum s;
        for (const auto& nb : g.neighbors(x)) {
            const double t = f[x] - f[nb.vertex];
            if (eps == 0.0)
                s.add(nb.weight * phi_p(t, p));
            else
                s.add(nb.weight * t * std::pow(t * t + eps * eps, 0.5 * (p - 2.0)));
        }
        out[x] = s.value() / g.measure(x);
    }
    return out;
}

enum class Variant { Gap, GroundDirichlet };

struct Projector {
    Variant variant;
    const WeightedGraph* g;
    const std::vector<char>* inside; // GroundDirichlet: interior mask
    double p;

    // Re-center (gap) / mask (ground), then normalize to unit p-norm.
    // Returns false when the projected vector is unusable (zero/constant).
    bool operator()(VertexFunction& u) const {
        if (variant == Variant::Gap) {
            const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
            if (*lo == *hi) return false;
            const double shift = p_mean_shift(*g, u, p);
            for (double& v : u) v -= shift;
        } else {
            for (int x = 0; x < g->vertex_count(); ++x)
                if (!(*inside)[x]) u[x] = 0.0;
        }
        const double ns = norm_p_sum(*g, u, p);
        if (!(ns > 0.0)) return false;
        const double scale = std::pow(ns, -1.0 / p);
        for (double& v : u) v *= scale;
        return true;
    }
};

double quotient_of(const WeightedGraph& g, const VertexFunction& u, double p, double eps) {
    return smoothed_energy(g, u, p, eps) / norm_p_sum(g, u, p);
}

struct DescentOutcome {
    VertexFunction u;
    double quotient = kInfDist; // unsmoothed
    double residual = kInfDist;
    int iterations = 0;
    bool converged = false;
    bool usable = false;
};

double max_residual(const WeightedGraph& g, const VertexFunction& u, double p,
                    const Projector& project, double q) {
    VertexFunction lap = smoothed_laplacian(g, u, p, 0.0);
    double res = 0.0;
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (project.variant == Variant::GroundDirichlet && !(*project.inside)[x]) continue;
        res = std::max(res, std::abs(lap[x] - q * phi_p(u[x], p)) * g.measure(x));
    }
    return res;
}

// Near the minimum the quotient varies quadratically in the error while the
// residual is linear, so Armijo on the quotient bottoms out around residuals
// of 1e-6. This phase continues the same iteration but accepts steps on the
// M-weighted 2-norm of the residual field, which stays measurable and
// monotone down to rounding level.
void polish_on_residual(const WeightedGraph& g, double p, const SolverConfig& cfg,
                        const Projector& project, VertexFunction& u, int& iterations,
                        int budget) {
    auto residual_field = [&](const VertexFunction& v, double q, VertexFunction& r) {
        VertexFunction lap = smoothed_laplacian(g, v, p, 0.0);
        double norm2 = 0.0;
        for (int x = 0; x < g.vertex_count(); ++x) {
            r[x] = lap[x] - q * phi_p(v[x], p);
            if (project.variant == Variant::GroundDirichlet && !(*project.inside)[x]) r[x] = 0.0;
            norm2 += g.measure(x) * r[x] * r[x];
        }
        return norm2;
    };

    double q = quotient_of(g, u, p, 0.0);
    VertexFunction grad(g.vertex_count());
    double res2 = residual_field(u, q, grad);
    double step = cfg.step_rule.initial;
    for (int iter = 0; iter < std::min(400, budget); ++iter, ++iterations) {
        if (max_residual(g, u, p, project, q) <= 1e-9 * std::max(1.0, q)) break;
        bool accepted = false;
        double s = step;
        VertexFunction trial_grad(g.vertex_count());
        for (int bt = 0; bt < 60; ++bt) {
            VertexFunction trial = u;
            for (int x = 0; x < g.vertex_count(); ++x) trial[x] -= s * grad[x];
            if (!project(trial)) {
                s *= cfg.step_rule.shrink;
                continue;
            }
            const double q_trial = quotient_of(g, trial, p, 0.0);
            const double res2_trial = residual_field(trial, q_trial, trial_grad);
            if (res2_trial < res2) {
                u = std::move(trial);
                q = q_trial;
                res2 = res2_trial;
                grad = trial_grad;
                step = s * 1.5;
                accepted = true;
                break;
            }
            s *= cfg.step_rule.shrink;
        }
        if (!accepted) break;
    }
}

// Normalized projected gradient descent on E_p / ||.||_p^p with backtracking;
// for p < 2 the kernel is smoothed and the smoothing annealed x0.1 whenever
// the smoothed quotient stalls. All reported numbers are unsmoothed.
DescentOutcome descend(const WeightedGraph& g, double p, const SolverConfig& cfg,
                       VertexFunction u, const Projector& project) {
    DescentOutcome out;
    if (!project(u)) return out;

    double scale = 0.0;
    for (const Edge& e : g.edges()) scale = std::max(scale, std::abs(u[e.u] - u[e.v]));
    double eps = (p < 2.0 && cfg.smoothing_eps > 0.0) ? cfg.smoothing_eps * std::max(scale, 1e-30)
                                                      : 0.0;
    const double eps_floor = eps * 1e-8;

    double step = cfg.step_rule.initial;
    double q_prev = quotient_of(g, u, p, 0.0);
    int iter = 0;
    const auto res_target = [](double q) { return 1e-8 * std::max(1.0, q); };

    for (; iter < cfg.max_iters; ++iter) {
        const double qs = quotient_of(g, u, p, eps);
        VertexFunction lap = smoothed_laplacian(g, u, p, eps);
        VertexFunction grad(g.vertex_count());
        for (int x = 0; x < g.vertex_count(); ++x) {
            grad[x] = lap[x] - qs * phi_p(u[x], p);
            if (project.variant == Variant::GroundDirichlet && !(*project.inside)[x])
                grad[x] = 0.0;
        }
        KahanSum gg;
        for (int x = 0; x < g.vertex_count(); ++x) gg.add(g.measure(x) * grad[x] * grad[x]);
        const double grad_norm2 = gg.value();

        // Early exit at unsmoothed stationarity.
        if (eps <= eps_floor) {
            const double q_now = quotient_of(g, u, p, 0.0);
            if (max_residual(g, u, p, project, q_now) <= res_target(q_now)) break;
        }

        // Backtracking line search (Armijo on the smoothed quotient).
        bool accepted = false;
        double s = step;
        for (int bt = 0; bt < 60; ++bt) {
            VertexFunction trial = u;
            for (int x = 0; x < g.vertex_count(); ++x) trial[x] -= s * grad[x];
            if (!project(trial)) {
                s *= cfg.step_rule.shrink;
                continue;
            }
            const double q_trial = quotient_of(g, trial, p, eps);
            if (q_trial <= qs - cfg.step_rule.sufficient_decrease * s * grad_norm2) {
                u = std::move(trial);
                step = s * 2.0;
                accepted = true;
                break;
            }
            s *= cfg.step_rule.shrink;
        }

        const double q_new = quotient_of(g, u, p, 0.0);
        const bool stalled =
            !accepted || std::abs(q_prev - q_new) <= cfg.tol_rel * std::max(q_new, 1e-300);
        q_prev = q_new;
        if (stalled) {
            if (eps > eps_floor) {
                eps = std::max(eps * 0.1, eps_floor);
                step = cfg.step_rule.initial;
            } else {
                ++iter;
                break;
            }
        }
    }

    polish_on_residual(g, p, cfg, project, u, iter, std::max(0, cfg.max_iters - iter));
    out.u = std::move(u);
    out.iterations = iter;
    out.quotient = quotient_of(g, out.u, p, 0.0);
    out.residual = max_residual(g, out.u, p, project, out.quotient);
    // Converged means the quotient plateaued at tol_rel and the first-order
    // optimality residual is small at the reporting scale.
    out.converged = out.residual <= 1e-6 * std::max(1.0, out.quotient);
    out.usable = true;
    return out;
}

VertexFunction seeded_start(const WeightedGraph& g, std::uint64_t seed, int restart) {
    SplitMix64 rng(SplitMix64::derive(seed, 0x5254ULL + static_cast<std::uint64_t>(restart)));
    VertexFunction u(g.vertex_count());
    for (double& v : u) v = 2.0 * rng.next_double() - 1.0;
    return u;
}

void fix_sign(VertexFunction& v) {
    int arg = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    if (!v.empty() && v[arg] < 0.0)
        for (double& x : v) x = -x;
}

// Deterministic merge: best quotient, ties by restart index.
struct RestartPool {
    std::vector<DescentOutcome> results;

    void run(int count, int threads, const std::function<DescentOutcome(int)>& job) {
        results.resize(count);
        if (threads <= 1 || count <= 1) {
            for (int i = 0; i < count; ++i) results[i] = job(i);
            return;
        }
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                results[i] = job(i);
        };
        std::vector<std::thread> pool;
        const int nt = std::min(threads, count);
        pool.reserve(nt);
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const DescentOutcome* best() const {
        const DescentOutcome* win = nullptr;
        for (const auto& r : results)
            if (r.usable && (!win || r.quotient < win->quotient)) win = &r;
        return win;
    }
};

} // namespace

namespace {

// Candidates built from strong Cheeger cuts. The projected indicator of a
// half-measure witness W has gap quotient at most 2^(p-1) |dW|_b / m(W), the
// quantity the Buser-type upper bounds are made of, so keeping these
// candidates (and their descents) in the restart pool pins the reported
// estimate below every cut-based upper bound the reports check.
std::vector<VertexFunction> cut_candidate_starts(const WeightedGraph& g, double p,
                                                 IsoVariant variant,
                                                 const std::optional<VertexSet>& interior,
                                                 const DescentOutcome* best) {
    std::vector<VertexFunction> starts;
    auto add_witness = [&](const VertexSet& w) {
        VertexFunction ind(g.vertex_count(), 0.0);
        for (int x : w.members) ind[x] = 1.0;
        starts.push_back(std::move(ind));
    };
    const int ground_size = variant == IsoVariant::H1 ? g.vertex_count()
                                                      : (interior ? interior->size() : 0);
    if (ground_size >= 2 && ground_size <= 16) {
        try {
            add_witness(
                exact_isoperimetric(g, constant_length(g, 1.0), variant, interior, 16).witness);
            add_witness(exact_isoperimetric(g, degree_metric(g, p), variant, interior, 16)
                            .witness);
        } catch (const std::exception&) {
        }
    }
    if (best) {
        try {
            add_witness(
                sweep_cut(g, constant_length(g, 1.0), best->u, variant, interior).witness);
        } catch (const std::exception&) {
        }
    }
    return starts;
}

const DescentOutcome* best_outcome(const std::vector<DescentOutcome>& outcomes) {
    const DescentOutcome* win = nullptr;
    for (const auto& r : outcomes)
        if (r.usable && (!win || r.quotient < win->quotient)) win = &r;
    return win;
}

DescentOutcome projected_candidate(const WeightedGraph& g, double p, VertexFunction u,
                                   const Projector& project) {
    DescentOutcome out;
    if (!project(u)) return out;
    out.quotient = quotient_of(g, u, p, 0.0);
    out.residual = max_residual(g, u, p, project, out.quotient);
    out.u = std::move(u);
    out.usable = true;
    return out;
}

} // namespace

static void validate_config(const SolverConfig& cfg) {
    if (!(cfg.tol_rel > 0.0)) throw std::invalid_argument("SolverConfig: tol_rel must be > 0");
    if (cfg.smoothing_eps < 0.0)
        throw std::invalid_argument("SolverConfig: smoothing_eps must be >= 0");
    if (!(cfg.step_rule.shrink > 0.0 && cfg.step_rule.shrink < 1.0))
        throw std::invalid_argument("SolverConfig: shrink factor must be in (0,1)");
    if (cfg.restarts < 1 || cfg.max_iters < 1)
        throw std::invalid_argument("SolverConfig: restarts and max_iters must be positive");
}

EigenResult solve_gap(const WeightedGraph& g, double p, const SolverConfig& cfg,
                      const VertexFunction* warm_start) {
    validate_config(cfg);
    if (!(p > 1.0)) throw std::invalid_argument("solve_gap: p must be > 1");
    if (g.vertex_count() < 2) throw std::invalid_argument("solve_gap: need at least 2 vertices");

    Projector project{Variant::Gap, &g, nullptr, p};

    if (!is_connected(g)) {
        // Locally constant non-constant functions have zero energy.
        const auto comp = connected_components(g);
        VertexFunction u(g.vertex_count(), 0.0);
        for (int x = 0; x < g.vertex_count(); ++x) u[x] = comp[x] == 0 ? 1.0 : 0.0;
        project(u);
        fix_sign(u);
        return EigenResult{0.0, std::move(u), 0.0, 0, true};
    }

    const int restarts = std::max(1, cfg.restarts) + (warm_start ? 1 : 0);
    RestartPool pool;
    pool.run(restarts, cfg.threads, [&](int r) -> DescentOutcome {
        VertexFunction u0;
        if (warm_start && r == 0) {
            u0 = *warm_start;
        } else {
            const int rr = warm_start ? r - 1 : r;
            if (rr == 0)
                u0 = linear_eigenpair(g, OracleVariant::Gap).vector;
            else
                u0 = seeded_start(g, cfg.seed, rr);
        }
        return descend(g, p, cfg, std::move(u0), project);
    });
    std::vector<DescentOutcome> outcomes = std::move(pool.results);
    if (p != 2.0) {
        auto starts =
            cut_candidate_starts(g, p, IsoVariant::H1, std::nullopt, best_outcome(outcomes));
        for (const auto& s : starts) outcomes.push_back(descend(g, p, cfg, s, project));
        for (auto& s : starts) outcomes.push_back(projected_candidate(g, p, std::move(s), project));
    }
    const DescentOutcome* win = best_outcome(outcomes);
    if (!win) throw std::runtime_error("solve_gap: no usable restart");

    VertexFunction minimizer = win->u;
    fix_sign(minimizer);
    const QuotientValue q = rayleigh(g, minimizer, p, QuotientVariant::Gap);
    // Store the shifted minimizer; its quotient is the reported estimate.
    for (double& v : minimizer) v -= q.shift;
    const double lambda = rayleigh(g, minimizer, p, QuotientVariant::Gap).quotient;
    const double residual = weak_solution_residual(g, minimizer, lambda, p);
    return EigenResult{lambda, std::move(minimizer), residual, win->iterations, win->converged};
}

EigenResult solve_ground_dirichlet(const WeightedGraph& host, const VertexSet& interior,
                                   double p, const SolverConfig& cfg,
                                   const VertexFunction* warm_start) {
    validate_config(cfg);
    if (!(p > 1.0)) throw std::invalid_argument("solve_ground_dirichlet: p must be > 1");
    if (interior.empty()) throw std::invalid_argument("solve_ground_dirichlet: empty interior");
    std::vector<char> inside(host.vertex_count(), 0);
    for (int x : interior.members) {
        if (x < 0 || x >= host.vertex_count())
            throw std::invalid_argument("interior member out of range");
        inside[x] = 1;
    }
    Projector project{Variant::GroundDirichlet, &host, &inside, p};

    const int restarts = std::max(1, cfg.restarts) + (warm_start ? 1 : 0);
    RestartPool pool;
    pool.run(restarts, cfg.threads, [&](int r) -> DescentOutcome {
        VertexFunction u0;
        if (warm_start && r == 0) {
            u0 = *warm_start;
        } else {
            const int rr = warm_start ? r - 1 : r;
            if (rr == 0)
                u0 = linear_eigenpair(host, OracleVariant::Ground, interior).vector;
            else
                u0 = seeded_start(host, cfg.seed, rr);
        }
        return descend(host, p, cfg, std::move(u0), project);
    });
    std::vector<DescentOutcome> outcomes = std::move(pool.results);
    if (p != 2.0) {
        auto starts = cut_candidate_starts(host, p, IsoVariant::H0Dirichlet, interior,
                                           best_outcome(outcomes));
        for (const auto& s : starts) outcomes.push_back(descend(host, p, cfg, s, project));
        for (auto& s : starts)
            outcomes.push_back(projected_candidate(host, p, std::move(s), project));
    }
    const DescentOutcome* win = best_outcome(outcomes);
    if (!win) throw std::runtime_error("solve_ground_dirichlet: no usable restart");

    VertexFunction minimizer = win->u;
    fix_sign(minimizer);
    const double lambda = rayleigh(host, minimizer, p, QuotientVariant::Ground).quotient;
    // Residual restricted to coordinate directions inside the interior.
    const VertexFunction lap = p_laplacian_apply(host, minimizer, p);
    double residual = 0.0;
    for (int x : interior.members)
        residual = std::max(residual,
                            std::abs(lap[x] - lambda * phi_p(minimizer[x], p)) * host.measure(x));
    return EigenResult{lambda, std::move(minimizer), residual, win->iterations, win->converged};
}

namespace {

LinearEigenpair dense_linear(const WeightedGraph& g, OracleVariant variant,
                             const std::optional<VertexSet>& interior) {
    const int n = g.vertex_count();
    std::vector<int> active;
    if (variant == OracleVariant::Ground && interior) {
        active = interior->members;
    } else {
        active.resize(n);
        for (int i = 0; i < n; ++i) active[i] = i;
    }
    const int k = static_cast<int>(active.size());
    std::vector<int> pos(n, -1);
    for (int i = 0; i < k; ++i) pos[active[i]] = i;

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        const int x = active[i];
        a(i, i) = g.weight_sum(x);
        b(i, i) = g.measure(x);
        for (const auto& nb : g.neighbors(x))
            if (pos[nb.vertex] >= 0) a(i, pos[nb.vertex]) -= nb.weight;
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("linear_eigenpair: dense eigensolver failed");

    const int which = (variant == OracleVariant::Gap) ? 1 : 0;
    if (which >= k) throw std::runtime_error("linear_eigenpair: problem too small");
    LinearEigenpair out;
    out.lambda = std::max(0.0, solver.eigenvalues()(which));
    out.vector.assign(n, 0.0);
    for (int i = 0; i < k; ++i) out.vector[active[i]] = solver.eigenvectors()(i, which);
    fix_sign(out.vector);
    return out;
}

// Matrix-free Laplacian restricted to the active set (full graph coupling,
// zero Dirichlet data outside).
struct RestrictedLaplacian {
    const WeightedGraph* g;
    const std::vector<int>* active;
    const std::vector<int>* pos;

    void apply(const std::vector<double>& x, std::vector<double>& out) const {
        const int k = static_cast<int>(active->size());
        for (int i = 0; i < k; ++i) {
            const int v = (*active)[i];
            double acc = g->weight_sum(v) * x[i];
            for (const auto& nb : g->neighbors(v)) {
                const int j = (*pos)[nb.vertex];
                if (j >= 0) acc -= nb.weight * x[j];
            }
            out[i] = acc;
        }
    }
};

LinearEigenpair iterative_linear(const WeightedGraph& g, OracleVariant variant,
                                 const std::optional<VertexSet>& interior) {
    const int n = g.vertex_count();
    std::vector<int> active;
    if (variant == OracleVariant::Ground && interior) {
        active = interior->members;
    } else {
        active.resize(n);
        for (int i = 0; i < n; ++i) active[i] = i;
    }
    const int k = static_cast<int>(active.size());
    std::vector<int> pos(n, -1);
    for (int i = 0; i < k; ++i) pos[active[i]] = i;
    RestrictedLaplacian op{&g, &active, &pos};

    std::vector<double> m(k);
    for (int i = 0; i < k; ++i) m[i] = g.measure(active[i]);
    const bool deflate = variant == OracleVariant::Gap;
    double m_total = 0.0;
    for (double v : m) m_total += v;

    auto project_const = [&](std::vector<double>& x) {
        if (!deflate) return;
        double acc = 0.0;
        for (int i = 0; i < k; ++i) acc += m[i] * x[i];
        const double mean = acc / m_total;
        for (double& v : x) v -= mean;
    };
    auto m_normalize = [&](std::vector<double>& x) {
        double acc = 0.0;
        for (int i = 0; i < k; ++i) acc += m[i] * x[i] * x[i];
        const double s = 1.0 / std::sqrt(acc);
        for (double& v : x) v *= s;
    };
    auto rayleigh_q = [&](const std::vector<double>& x) {
        std::vector<double> ax(k);
        op.apply(x, ax);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < k; ++i) {
            num += x[i] * ax[i];
            den += m[i] * x[i] * x[i];
        }
        return num / den;
    };

    // CG solve of A y = rhs within the deflated subspace.
    auto cg_solve = [&](const std::vector<double>& rhs, std::vector<double>& y) {
        y.assign(k, 0.0);
        std::vector<double> r = rhs, d = rhs, ad(k);
        project_const(r);
        d = r;
        double rr = 0.0;
        for (double v : r) rr += v * v;
        const double target = rr * 1e-26;
        for (int it = 0; it < 20 * k && rr > target; ++it) {
            op.apply(d, ad);
            project_const(ad);
            double dad = 0.0;
            for (int i = 0; i < k; ++i) dad += d[i] * ad[i];
            if (!(dad > 0.0)) break;
            const double alpha = rr / dad;
            double rr_new = 0.0;
            for (int i = 0; i < k; ++i) {
                y[i] += alpha * d[i];
                r[i] -= alpha * ad[i];
                rr_new += r[i] * r[i];
            }
            const double beta = rr_new / rr;
            for (int i = 0; i < k; ++i) d[i] = r[i] + beta * d[i];
            rr = rr_new;
        }
    };

    // Inverse power iteration on (A, M).
    std::vector<double> x(k, 1.0);
    if (deflate) {
        // A deterministic non-constant start.
        for (int i = 0; i < k; ++i) x[i] = (i % 2 == 0) ? 1.0 : -0.5;
        project_const(x);
    }
    m_normalize(x);
    double lambda = rayleigh_q(x);
    for (int it = 0; it < 400; ++it) {
        std::vector<double> rhs(k), y;
        for (int i = 0; i < k; ++i) rhs[i] = m[i] * x[i];
        project_const(rhs);
        cg_solve(rhs, y);
        project_const(y);
        m_normalize(y);
        const double lambda_new = rayleigh_q(y);
        x = std::move(y);
        if (std::abs(lambda_new - lambda) <= 1e-13 * std::max(std::abs(lambda_new), 1e-300)) {
            lambda = lambda_new;
            break;
        }
        lambda = lambda_new;
    }
    LinearEigenpair out;
    out.lambda = std::max(0.0, lambda);
    out.vector.assign(n, 0.0);
    for (int i = 0; i < k; ++i) out.vector[active[i]] = x[i];
    fix_sign(out.vector);
    return out;
}

} // namespace

LinearEigenpair linear_eigenpair(const WeightedGraph& g, OracleVariant variant,
                                 const std::optional<VertexSet>& interior, int dense_limit) {
    if (variant == OracleVariant::Ground && interior) {
        if (interior->empty()) throw std::invalid_argument("linear_eigenpair: empty interior");
        for (int x : interior->members)
            if (x < 0 || x >= g.vertex_count())
                throw std::invalid_argument("interior member out of range");
        if (interior->size() <= dense_limit) return dense_linear(g, variant, interior);
        return iterative_linear(g, variant, interior);
    }
    if (g.vertex_count() <= dense_limit) return dense_linear(g, variant, interior);
    return iterative_linear(g, variant, interior);
}

double linear_oracle(const WeightedGraph& g, OracleVariant variant,
                     const std::optional<VertexSet>& interior, int dense_limit) {
    return linear_eigenpair(g, variant, interior, dense_limit).lambda;
}

std::vector<SweepRow> p_sweep(const WeightedGraph& g, const std::vector<double>& p_grid,
                              const SolverConfig& cfg, int max_exact_n) {
    for (size_t i = 0; i + 1 < p_grid.size(); ++i)
        if (!(p_grid[i] > p_grid[i + 1]))
            throw std::invalid_argument("p_sweep: grid must be strictly decreasing");
    if (!p_grid.empty() && !(p_grid.back() > 1.0))
        throw std::invalid_argument("p_sweep: grid must stay in (1, inf)");

    const bool brackets = g.vertex_count() <= max_exact_n;
    double h1_one = 0.0;
    if (brackets)
        h1_one = exact_isoperimetric(g, constant_length(g, 1.0), IsoVariant::H1, {}, max_exact_n)
                     .constant;

    std::vector<SweepRow> rows;
    VertexFunction warm;
    for (double p : p_grid) {
        EigenResult res = solve_gap(g, p, cfg, warm.empty() ? nullptr : &warm);
        warm = res.minimizer;
        SweepRow row{p,        res.lambda_estimate, res.minimizer, res.iterations,
                     res.converged, brackets,       0.0,           0.0,
                     false};
        if (brackets) {
            const double h1_dp =
                exact_isoperimetric(g, degree_metric(g, p), IsoVariant::H1, {}, max_exact_n)
                    .constant;
            row.lower = std::pow(2.0, p - 1.0) / std::pow(p, p) * std::pow(h1_dp, p);
            row.upper = std::pow(2.0, p - 1.0) * h1_one;
            const double tol_lo = 1e-7 * std::max(1.0, std::abs(row.lower));
            const double tol_hi = 1e-7 * std::max(1.0, std::abs(row.upper));
            row.in_bracket = row.lambda >= row.lower - tol_lo && row.lambda <= row.upper + tol_hi;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace pspect
