// pspect: batch spectral toolkit for weighted graphs. Subcommands parse a
// graph file, compute p-Laplacian quantities and the associated isoperimetric
// bounds, and emit deterministic JSON or CSV reports.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pspect/bounds.hpp"
#include "pspect/brooks.hpp"
#include "pspect/cheeger.hpp"
#include "pspect/eigensolver.hpp"
#include "pspect/energy.hpp"
#include "pspect/generators.hpp"
#include "pspect/graph.hpp"
#include "pspect/metrics.hpp"
#include "serialize.hpp"

namespace {

using nlohmann::json;
using namespace pspect;
using pspectcli::to_json;
using pspectcli::vertex_list;

constexpr const char* kVersion = "0.1.0";
constexpr int kSchema = 1;

// Exit codes: 0 ok, 2 invalid input, 3 I/O error, 4 non-convergence under
// --strict.
enum ExitCode { kOk = 0, kInvalid = 2, kIo = 3, kNotConverged = 4 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string load_text(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string format = "json";
    std::string output;
    bool strict = false;
};

struct Emitter {
    const GlobalOpts& opts;
    std::string command;
    std::vector<std::string> argv;
    std::vector<std::string> inputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    json manifest() const {
        const double wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        return json{{"command", command},  {"argv", argv},
                    {"inputs", inputs},    {"seed", opts.seed},
                    {"threads", opts.threads}, {"format", opts.format},
                    {"strict", opts.strict},   {"tool_version", kVersion},
                    {"schema", kSchema},   {"wall_time_ms", wall_ms}};
    }

    void write(const std::string& text) const {
        if (opts.output.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(opts.output);
        if (!f) throw IoError("cannot write '" + opts.output + "'");
        f << text;
    }
};

std::string csv_number(const json& v) {
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// CSV rendering: manifest as '#' comment lines, then a fixed-column table per
// command (key,value rows for commands without a natural table).
std::string to_csv(const std::string& command, const json& manifest, const json& result) {
    std::ostringstream out;
    for (auto it = manifest.begin(); it != manifest.end(); ++it)
        out << "# " << it.key() << "=" << csv_number(it.value()) << "\n";

    auto table = [&](const std::vector<std::string>& cols, const json& rows) {
        for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < cols.size(); ++i) {
                out << (i ? "," : "");
                if (row.contains(cols[i])) out << csv_number(row.at(cols[i]));
            }
            out << "\n";
        }
    };

    if (command == "metric") {
        table({"u", "v", "value"}, result.at("values"));
    } else if (command == "sweep") {
        table({"p", "lambda", "lower", "upper", "in_bracket", "iterations", "converged"},
              result.at("rows"));
    } else if (command == "bounds") {
        json rows = json::array();
        for (const auto& rep : result.at("reports"))
            for (const auto& row : rep.at("rows")) {
                json r = row;
                r["p"] = rep.at("p");
                rows.push_back(std::move(r));
            }
        table({"p", "name", "metric", "side", "bound", "lambda", "slack", "verdict"}, rows);
    } else if (command == "brooks") {
        table({"R", "n", "lambda", "mu_estimate", "bound", "below_bound"}, result.at("rows"));
    } else {
        out << "key,value\n";
        const json flat = result.flatten();
        for (auto it = flat.begin(); it != flat.end(); ++it)
            out << it.key() << "," << csv_number(it.value()) << "\n";
    }
    return out.str();
}

// Structural schema gate: every report carries the schema tag and a complete
// manifest, checked before anything is written.
void validate_document(const json& manifest, const json& result) {
    for (const char* key : {"command", "argv", "inputs", "seed", "threads", "format",
                            "strict", "tool_version", "schema", "wall_time_ms"})
        if (!manifest.contains(key))
            throw std::logic_error(std::string("manifest missing key '") + key + "'");
    if (manifest.at("schema") != kSchema) throw std::logic_error("schema version mismatch");
    if (result.is_null()) throw std::logic_error("empty result payload");
}

void emit(const Emitter& em, const json& result) {
    const json manifest = em.manifest();
    validate_document(manifest, result);
    if (em.opts.format == "csv") {
        em.write(to_csv(em.command, manifest, result));
    } else {
        json doc{{"schema", kSchema}, {"manifest", manifest}, {"result", result}};
        em.write(doc.dump(2) + "\n");
    }
}

WeightedGraph load_graph(const std::string& path) { return parse_graph(load_text(path)); }

// Metric specs: degree | const:<c> | file:<path>.
EdgeLength metric_from_spec(const WeightedGraph& g, const std::string& spec, double p) {
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        return parse_edge_length(g, load_text(path), spec);
    }
    return resolve_metric(g, spec, p);
}

std::optional<VertexSet> interior_from_spec(const WeightedGraph& g, const std::string& spec) {
    if (spec.empty()) return std::nullopt;
    std::string path = spec;
    if (path.rfind("file:", 0) == 0) path = path.substr(5);
    return parse_vertex_set(g, load_text(path));
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

json edge_values_json(const WeightedGraph& g, const EdgeLength& d) {
    struct Row {
        std::string u, v;
        double value;
    };
    std::vector<Row> rows;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        std::string a = g.vertex_id(g.edges()[ei].u), b = g.vertex_id(g.edges()[ei].v);
        if (b < a) std::swap(a, b);
        rows.push_back({std::move(a), std::move(b), d.values[ei]});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        return x.u != y.u ? x.u < y.u : x.v < y.v;
    });
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(json{{"u", r.u}, {"v", r.v}, {"value", r.value}});
    return arr;
}

SolverConfig solver_config(const GlobalOpts& g, int restarts, int max_iters, double tol) {
    SolverConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = g.seed;
    cfg.max_iters = max_iters;
    cfg.tol_rel = tol;
    cfg.threads = g.threads;
    return cfg;
}

// ---- subcommand bodies ----------------------------------------------------

int cmd_validate(Emitter& em, const std::string& path) {
    std::string text;
    try {
        text = load_text(path);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    try {
        WeightedGraph g = parse_graph(text);
        emit(em, json{{"valid", true},
                      {"vertices", g.vertex_count()},
                      {"edges", g.edge_count()},
                      {"connected", is_connected(g)},
                      {"total_measure", g.total_measure()}});
        return kOk;
    } catch (const ParseError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return kInvalid;
    }
}

struct MetricArgs {
    std::string graph;
    std::string metric = "degree";
    double p = 2.0;
    bool path_closure = false;
};

int cmd_metric(Emitter& em, const MetricArgs& args) {
    WeightedGraph g = load_graph(args.graph);
    EdgeLength d = metric_from_spec(g, args.metric, args.p);
    if (args.path_closure) {
        PseudoMetric pm = path_metric_closure(g, d);
        d = restrict_to_edges(pm, d.name + "+closure");
    }
    if (em.opts.format == "dfile") {
        em.write(write_edge_length(g, d));
        return kOk;
    }
    const MembershipCertificate cert = check_membership(g, d, args.p);
    json result{{"metric_name", d.name},
                {"p", args.p},
                {"values", edge_values_json(g, d)},
                {"certificate", to_json(g, cert)}};
    if (g.edge_count() > 0) result["delta"] = delta(g, d);
    emit(em, result);
    return kOk;
}

struct CheegerArgs {
    std::string graph;
    bool path_closure = false;
    std::string variant = "h1";
    std::string interior;
    std::string mode = "auto";
    std::string metric = "const:1";
    std::string function;
    std::string sweep_levels = "f";
    double p = 2.0;
    int max_exact_n = 24;
    int restarts = 4;
    int max_iters = 5000;
};

int cmd_cheeger(const GlobalOpts& opts, Emitter& em, const CheegerArgs& args) {
    WeightedGraph g = load_graph(args.graph);
    const IsoVariant variant = args.variant == "h0" ? IsoVariant::H0Dirichlet : IsoVariant::H1;
    std::optional<VertexSet> interior = interior_from_spec(g, args.interior);
    if (variant == IsoVariant::H0Dirichlet && !interior)
        throw std::invalid_argument("--variant h0 requires --interior");
    EdgeLength d = metric_from_spec(g, args.metric, args.p);
    if (args.path_closure) {
        PseudoMetric pm = path_metric_closure(g, d);
        d = restrict_to_edges(pm, d.name + "+closure");
    }

    const int ground_size =
        variant == IsoVariant::H1 ? g.vertex_count() : interior->size();
    std::string mode = args.mode;
    if (mode == "auto") mode = ground_size <= args.max_exact_n ? "exact" : "sweep";

    json result;
    if (mode == "exact") {
        auto r = exact_isoperimetric(g, d, variant, interior, args.max_exact_n);
        result = to_json(g, r);
    } else {
        VertexFunction f;
        if (!args.function.empty()) {
            std::string path = args.function;
            if (path.rfind("file:", 0) == 0) path = path.substr(5);
            f = parse_vertex_function(g, load_text(path));
        } else {
            SolverConfig cfg = solver_config(opts, args.restarts, args.max_iters, 1e-12);
            f = variant == IsoVariant::H1
                    ? solve_gap(g, args.p, cfg).minimizer
                    : solve_ground_dirichlet(g, *interior, args.p, cfg).minimizer;
        }
        std::vector<SweepEntry> table;
        const SweepLevels levels = args.sweep_levels == "fp" ? SweepLevels::AbsPowerValues
                                                             : SweepLevels::FunctionValues;
        auto r = sweep_cut(g, d, f, variant, interior, levels, args.p, &table);
        result = to_json(g, r);
        json jt = json::array();
        for (const auto& e : table)
            jt.push_back(
                json{{"threshold", e.threshold}, {"measure", e.measure}, {"ratio", e.ratio}});
        result["ratio_table"] = std::move(jt);
    }
    emit(em, result);
    return kOk;
}

struct EigenArgs {
    std::string graph;
    double p = 2.0;
    std::string variant = "gap";
    std::string interior;
    int restarts = 4;
    int max_iters = 5000;
    double tol = 1e-12;
    int max_exact_n = 24;
};

int cmd_eigen(const GlobalOpts& opts, Emitter& em, const EigenArgs& args) {
    WeightedGraph g = load_graph(args.graph);
    SolverConfig cfg = solver_config(opts, args.restarts, args.max_iters, args.tol);

    if (args.p == 1.0) {
        if (args.variant != "gap")
            throw std::invalid_argument("p = 1 is only supported for the gap variant");
        // At p = 1 the gap value equals the h1 Cheeger constant; report the
        // exact constant instead of running a variational solve.
        auto r = exact_isoperimetric(g, constant_length(g, 1.0), IsoVariant::H1, {},
                                     args.max_exact_n);
        emit(em, json{{"p", 1.0},
                      {"variant", "gap"},
                      {"lambda", r.constant},
                      {"mode", "cheeger-identity"},
                      {"witness", vertex_list(g, r.witness)}});
        return kOk;
    }

    EigenResult r;
    if (args.variant == "ground") {
        std::optional<VertexSet> interior = interior_from_spec(g, args.interior);
        if (!interior) throw std::invalid_argument("--variant ground requires --interior");
        r = solve_ground_dirichlet(g, *interior, args.p, cfg);
    } else {
        r = solve_gap(g, args.p, cfg);
    }
    json result = to_json(g, r);
    result["p"] = args.p;
    result["variant"] = args.variant;
    emit(em, result);
    if (opts.strict && !r.converged) throw NotConverged("solver did not converge");
    return kOk;
}

struct SweepArgs {
    std::string graph;
    std::string p_grid;
    int restarts = 4;
    int max_iters = 5000;
    double tol = 1e-12;
    int max_exact_n = 24;
};

int cmd_sweep(const GlobalOpts& opts, Emitter& em, const SweepArgs& args) {
    WeightedGraph g = load_graph(args.graph);
    std::vector<double> grid = parse_double_list(args.p_grid);
    if (grid.empty()) throw std::invalid_argument("usage: --p-grid must be non-empty");
    SolverConfig cfg = solver_config(opts, args.restarts, args.max_iters, args.tol);
    auto rows = p_sweep(g, grid, cfg, args.max_exact_n);
    emit(em, json{{"rows", to_json(g, rows)}});
    if (opts.strict)
        for (const auto& row : rows)
            if (!row.converged) throw NotConverged("solver did not converge");
    return kOk;
}

struct BoundsArgs {
    std::vector<std::string> graphs;
    std::string p_list;
    std::string metrics = "degree,const:1";
    std::string interior;
    int restarts = 4;
    int max_iters = 5000;
    int max_exact_n = 24;
};

int cmd_bounds(const GlobalOpts& opts, Emitter& em, const BoundsArgs& args) {
    std::vector<double> ps = parse_double_list(args.p_list);
    if (ps.empty()) throw std::invalid_argument("usage: --p must list at least one exponent");
    std::vector<std::string> metric_specs;
    {
        std::stringstream ss(args.metrics);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) metric_specs.push_back(item);
    }
    SolverConfig cfg = solver_config(opts, args.restarts, args.max_iters, 1e-12);

    json reports = json::array();
    bool all_converged = true;
    for (const std::string& path : args.graphs) {
        WeightedGraph g = load_graph(path);
        std::optional<VertexSet> interior = interior_from_spec(g, args.interior);
        for (double p : ps) {
            BoundReport rep = full_report(g, p, cfg, interior, metric_specs, args.max_exact_n);
            all_converged = all_converged && rep.solver_converged;
            json j = to_json(rep);
            j["input"] = path;
            reports.push_back(std::move(j));
        }
    }
    emit(em, json{{"reports", std::move(reports)}});
    if (opts.strict && !all_converged) throw NotConverged("solver did not converge");
    return kOk;
}

struct BrooksArgs {
    std::string family = "tree:3";
    double p = 2.0;
    std::string radii;
    std::string alpha_grid = "1.05,1.25,1.5";
    double slack = 5e-3;
    std::string measure = "normalizing";
    int restarts = 2;
    int max_iters = 5000;
};

int cmd_brooks(const GlobalOpts& opts, Emitter& em, const BrooksArgs& args) {
    BrooksFamily family;
    if (args.family.rfind("tree:", 0) == 0) {
        family = BrooksFamily::tree(std::stoi(args.family.substr(5)));
        family.measure = args.measure == "unit" ? MeasurePolicy::Unit
                                                : MeasurePolicy::Normalizing;
    } else if (args.family.rfind("custom:", 0) == 0) {
        family.kind = BrooksFamily::Kind::Custom;
        family.custom = load_graph(args.family.substr(7));
        family.root = 0;
    } else {
        throw std::invalid_argument("unknown family '" + args.family +
                                    "' (expected tree:<k> or custom:<graph file>)");
    }
    std::vector<int> radii = parse_int_list(args.radii);
    if (radii.empty()) throw std::invalid_argument("usage: --radii must be non-empty");
    SolverConfig cfg = solver_config(opts, args.restarts, args.max_iters, 1e-12);
    auto verification =
        brooks_verify(family, args.p, radii, cfg, args.slack, parse_double_list(args.alpha_grid));
    emit(em, to_json(verification));
    return kOk;
}

struct PartitionArgs {
    std::string graph;
    double p = 2.0;
    int restarts = 4;
    int max_iters = 5000;
    int max_exact_n = 24;
};

int cmd_partition(const GlobalOpts& opts, Emitter& em, const PartitionArgs& args) {
    WeightedGraph g = load_graph(args.graph);

    if (!is_connected(g)) {
        // components as the trivial partition: first component vs the rest
        const auto comp = connected_components(g);
        std::vector<int> a, b;
        for (int x = 0; x < g.vertex_count(); ++x) (comp[x] == 0 ? a : b).push_back(x);
        emit(em, json{{"p", args.p},
                      {"trivial_components", true},
                      {"lambda", 0.0},
                      {"side_a", vertex_list(g, VertexSet::of(a))},
                      {"side_b", vertex_list(g, VertexSet::of(b))},
                      {"ratio", 0.0}});
        return kOk;
    }

    SolverConfig cfg = solver_config(opts, args.restarts, args.max_iters, 1e-12);
    EigenResult r = solve_gap(g, args.p, cfg);

    std::vector<int> pos, neg;
    for (int x = 0; x < g.vertex_count(); ++x)
        (r.minimizer[x] > 0.0 ? pos : neg).push_back(x);
    EdgeLength one = constant_length(g, 1.0);

    // Best sweep cut of the minimizer, refined by the exact witness when the
    // graph is small enough to enumerate; ties resolve as in the library.
    IsoperimetricResult best = sweep_cut(g, one, r.minimizer, IsoVariant::H1);
    std::string refine_mode = "sweep";
    if (g.vertex_count() <= args.max_exact_n) {
        auto exact = exact_isoperimetric(g, one, IsoVariant::H1, {}, args.max_exact_n);
        if (exact.constant < best.constant ||
            (exact.constant == best.constant && exact.witness.members != best.witness.members))
            best = exact;
        refine_mode = "exact";
    }
    std::vector<int> rest;
    for (int x = 0; x < g.vertex_count(); ++x)
        if (!best.witness.contains(x)) rest.push_back(x);

    emit(em, json{{"p", args.p},
                  {"lambda", r.lambda_estimate},
                  {"converged", r.converged},
                  {"sign_cut",
                   json{{"positive", vertex_list(g, VertexSet::of(pos))},
                        {"negative", vertex_list(g, VertexSet::of(neg))}}},
                  {"side_a", vertex_list(g, best.witness)},
                  {"side_b", vertex_list(g, VertexSet::of(rest))},
                  {"ratio", best.constant},
                  {"refine_mode", refine_mode}});
    if (opts.strict && !r.converged) throw NotConverged("solver did not converge");
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pspect: p-Laplacian spectral gaps, Cheeger constants and "
                 "two-sided eigenvalue brackets on weighted graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GlobalOpts opts;
    app.add_option("--seed", opts.seed, "seed for all randomized components");
    app.add_option("--threads", opts.threads, "parallelism cap (results are independent of it)");
    app.add_option("--format", opts.format, "output format: json|csv (metric also: dfile)");
    app.add_option("--output", opts.output, "write the report to a file instead of stdout");
    app.add_flag("--strict", opts.strict, "exit 4 when a variational solve fails to converge");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "parse and validate a graph file");
    validate->fallthrough();
    validate->add_option("graph", validate_path, "graph file")->required();

    MetricArgs margs;
    auto* metric = app.add_subcommand("metric", "edge-length metrics and R_p certification");
    metric->fallthrough();
    metric->add_option("graph", margs.graph, "graph file")->required();
    metric->add_option("--metric", margs.metric, "degree | const:<c> | file:<path>");
    metric->add_option("--p", margs.p, "exponent");
    metric->add_flag("--path-closure", margs.path_closure,
                     "replace the metric by its path closure restricted to edges");

    CheegerArgs cargs;
    auto* cheeger = app.add_subcommand("cheeger", "isoperimetric constants");
    cheeger->fallthrough();
    cheeger->add_option("graph", cargs.graph, "graph file")->required();
    cheeger->add_option("--variant", cargs.variant, "h0|h1");
    cheeger->add_option("--interior", cargs.interior, "interior set file (h0 variant)");
    cheeger->add_option("--mode", cargs.mode, "exact|sweep|auto");
    cheeger->add_option("--metric", cargs.metric, "degree | const:<c> | file:<path>");
    cheeger->add_flag("--path-closure", cargs.path_closure,
                      "replace the metric by its path closure restricted to edges");
    cheeger->add_option("--function", cargs.function, "sweep function file");
    cheeger->add_option("--sweep-levels", cargs.sweep_levels, "f | fp (sweep |f|^p levels)");
    cheeger->add_option("--p", cargs.p, "exponent for the degree metric / sweep solve");
    cheeger->add_option("--max-exact-n", cargs.max_exact_n, "enumeration cutoff");
    cheeger->add_option("--restarts", cargs.restarts, "solver restarts for the sweep function");
    cheeger->add_option("--max-iters", cargs.max_iters, "solver iteration cap");

    EigenArgs eargs;
    auto* eigen = app.add_subcommand("eigen", "variational eigenvalue estimates");
    eigen->fallthrough();
    eigen->add_option("graph", eargs.graph, "graph file")->required();
    eigen->add_option("--p", eargs.p, "exponent")->required();
    eigen->add_option("--variant", eargs.variant, "ground|gap");
    eigen->add_option("--interior", eargs.interior, "interior set file (ground variant)");
    eigen->add_option("--restarts", eargs.restarts, "solver restarts");
    eigen->add_option("--max-iters", eargs.max_iters, "iteration cap");
    eigen->add_option("--tol", eargs.tol, "relative quotient-change tolerance");
    eigen->add_option("--max-exact-n", eargs.max_exact_n, "cutoff for the p = 1 identity");

    SweepArgs sargs;
    auto* sweep = app.add_subcommand("sweep", "p-continuation with certified brackets");
    sweep->fallthrough();
    sweep->add_option("graph", sargs.graph, "graph file")->required();
    sweep->add_option("--p-grid", sargs.p_grid, "comma list, strictly decreasing, > 1")
        ->required();
    sweep->add_option("--restarts", sargs.restarts, "solver restarts");
    sweep->add_option("--max-iters", sargs.max_iters, "iteration cap");
    sweep->add_option("--tol", sargs.tol, "relative quotient-change tolerance");
    sweep->add_option("--max-exact-n", sargs.max_exact_n, "enumeration cutoff for brackets");

    BoundsArgs bargs;
    auto* bounds = app.add_subcommand("bounds", "full per-p inequality reports");
    bounds->fallthrough();
    bounds->add_option("graphs", bargs.graphs, "graph file(s)")->required();
    bounds->add_option("--p", bargs.p_list, "comma list of exponents")->required();
    bounds->add_option("--metric", bargs.metrics, "comma list of metric specs");
    bounds->add_option("--interior", bargs.interior, "interior set file for ground rows");
    bounds->add_option("--restarts", bargs.restarts, "solver restarts");
    bounds->add_option("--max-iters", bargs.max_iters, "iteration cap");
    bounds->add_option("--max-exact-n", bargs.max_exact_n, "enumeration cutoff");

    BrooksArgs brargs;
    auto* brooks = app.add_subcommand("brooks", "volume growth vs Dirichlet bottom on "
                                                "truncated families");
    brooks->fallthrough();
    brooks->add_option("--family", brargs.family, "tree:<k> | custom:<graph file>");
    brooks->add_option("--p", brargs.p, "exponent");
    brooks->add_option("--radii", brargs.radii, "comma list of truncation radii")->required();
    brooks->add_option("--alpha-grid", brargs.alpha_grid, "alpha factors relative to mu/p");
    brooks->add_option("--slack", brargs.slack, "bound-crossing slack");
    brooks->add_option("--measure", brargs.measure, "unit|normalizing (tree family)");
    brooks->add_option("--restarts", brargs.restarts, "solver restarts (p != 2)");
    brooks->add_option("--max-iters", brargs.max_iters, "iteration cap");

    PartitionArgs pargs;
    auto* partition = app.add_subcommand("partition", "spectral bipartition with sweep/exact "
                                                      "refinement");
    partition->fallthrough();
    partition->add_option("graph", pargs.graph, "graph file")->required();
    partition->add_option("--p", pargs.p, "exponent");
    partition->add_option("--restarts", pargs.restarts, "solver restarts");
    partition->add_option("--max-iters", pargs.max_iters, "iteration cap");
    partition->add_option("--max-exact-n", pargs.max_exact_n, "refinement cutoff");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    Emitter em{opts};
    em.command = app.get_subcommands().front()->get_name();
    for (int i = 1; i < argc; ++i) em.argv.push_back(argv[i]);

    try {
        if (validate->parsed()) {
            em.inputs = {validate_path};
            return cmd_validate(em, validate_path);
        }
        if (metric->parsed()) {
            em.inputs = {margs.graph};
            return cmd_metric(em, margs);
        }
        if (cheeger->parsed()) {
            em.inputs = {cargs.graph};
            return cmd_cheeger(opts, em, cargs);
        }
        if (eigen->parsed()) {
            em.inputs = {eargs.graph};
            return cmd_eigen(opts, em, eargs);
        }
        if (sweep->parsed()) {
            em.inputs = {sargs.graph};
            return cmd_sweep(opts, em, sargs);
        }
        if (bounds->parsed()) {
            em.inputs = bargs.graphs;
            return cmd_bounds(opts, em, bargs);
        }
        if (brooks->parsed()) {
            return cmd_brooks(opts, em, brargs);
        }
        if (partition->parsed()) {
            em.inputs = {pargs.graph};
            return cmd_partition(opts, em, pargs);
        }
    } catch (const NotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotConverged;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
