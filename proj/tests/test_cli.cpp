// End-to-end tests of the pspect binary: exit codes, output formats, and
// payload determinism across thread counts.

#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef PSPECT_CLI_PATH
#error "PSPECT_CLI_PATH must point at the built binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code;
    std::string output;
};

int counter = 0;

RunResult run_cli(const std::string& args) {
    const std::string out_path =
        "/tmp/pspect_cli_test_" + std::to_string(++counter) + ".out";
    const std::string cmd =
        std::string(PSPECT_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream f(out_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    std::remove(out_path.c_str());
    return RunResult{WEXITSTATUS(status), ss.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/pspect_cli_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

json result_of(const RunResult& r) { return json::parse(r.output).at("result"); }

} // namespace

TEST_CASE("validate exit codes") {
    const std::string good = write_temp("good.graph", "V a 1\nV b 1\nE a b 1\n");
    const std::string bad = write_temp("bad.graph", "V a 1\nV b 1\nE a b -1\n");

    auto ok = run_cli("validate " + good);
    CHECK(ok.exit_code == 0);
    CHECK(result_of(ok).at("valid") == true);

    auto invalid = run_cli("validate " + bad);
    CHECK(invalid.exit_code == 2);
    CHECK(invalid.output.find("line 3") != std::string::npos);

    auto missing = run_cli("validate /tmp/definitely_not_there.graph");
    CHECK(missing.exit_code == 3);
}

TEST_CASE("usage errors exit with code 2") {
    const std::string good = write_temp("usage.graph", "V a 1\nV b 1\nE a b 1\n");
    CHECK(run_cli("bounds " + good + " --p \"\"").exit_code == 2);
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
}

TEST_CASE("strict mode exits 4 on non-convergence") {
    // a graph the solver cannot finish in one iteration at p far from 2
    const std::string path = write_temp(
        "strict.graph", "V a 1\nV b 2\nV c 3\nV d 1\nE a b 1\nE b c 2\nE c d 1\nE a d 1\n");
    auto r = run_cli("eigen " + path + " --p 3 --max-iters 1 --restarts 1 --strict");
    CHECK(r.exit_code == 4);
    auto soft = run_cli("eigen " + path + " --p 3 --max-iters 1 --restarts 1");
    CHECK(soft.exit_code == 0);
    CHECK(result_of(soft).at("converged") == false);
}

TEST_CASE("eigen solves K2 through the CLI") {
    const std::string path = write_temp("k2.graph", "V a 1\nV b 1\nE a b 1\n");
    auto r = run_cli("eigen " + path + " --p 2");
    CHECK(r.exit_code == 0);
    const json res = result_of(r);
    CHECK(res.at("lambda").get<double>() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(res.at("converged") == true);
}

TEST_CASE("partition splits two triangles at the bridge") {
    const std::string path = write_temp(
        "tri2.graph",
        "V a 1\nV b 1\nV c 1\nV d 1\nV e 1\nV f 1\n"
        "E a b 1\nE a c 1\nE b c 1\nE c d 1\nE d e 1\nE d f 1\nE e f 1\n");
    auto r = run_cli("partition " + path + " --p 2");
    CHECK(r.exit_code == 0);
    const json res = result_of(r);
    CHECK(res.at("side_a") == json({"a", "b", "c"}));
    CHECK(res.at("ratio").get<double>() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("partition on cycle(4) picks the documented tie-broken optimum") {
    const std::string path = write_temp(
        "c4.graph", "V a 1\nV b 1\nV c 1\nV d 1\nE a b 1\nE b c 1\nE c d 1\nE a d 1\n");
    auto r = run_cli("partition " + path + " --p 2");
    const json res = result_of(r);
    // ratio-1 optima are the four adjacent pairs; ties resolve to the
    // lexicographically smallest set
    CHECK(res.at("side_a") == json({"a", "b"}));
    CHECK(res.at("ratio").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("partition emits components for disconnected input") {
    const std::string path = write_temp(
        "disc.graph", "V a 1\nV b 1\nV c 1\nV d 1\nE a b 1\nE c d 1\n");
    auto r = run_cli("partition " + path);
    const json res = result_of(r);
    CHECK(res.at("trivial_components") == true);
    CHECK(res.at("side_a") == json({"a", "b"}));
    CHECK(res.at("lambda") == 0.0);
}

TEST_CASE("metric dfile output round-trips through the parser") {
    const std::string path = write_temp(
        "star.graph", "V c 1\nV l0 1\nV l1 1\nV l2 1\nV l3 1\n"
                      "E c l0 1\nE c l1 1\nE c l2 1\nE c l3 1\n");
    auto r = run_cli("metric " + path + " --metric degree --p 2 --format dfile");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("D c l0 0.5") != std::string::npos);
}

TEST_CASE("csv and json renderings carry identical numbers") {
    const std::string path = write_temp("k2b.graph", "V a 1\nV b 1\nE a b 1\n");
    auto j = run_cli("bounds " + path + " --p 2");
    auto c = run_cli("bounds " + path + " --p 2 --format csv");
    REQUIRE(j.exit_code == 0);
    REQUIRE(c.exit_code == 0);

    const json rows = result_of(j).at("reports")[0].at("rows");
    std::istringstream csv(c.output);
    std::string line;
    std::vector<std::string> data_lines;
    bool past_header = false;
    while (std::getline(csv, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!past_header) {
            past_header = true;
            continue;
        }
        data_lines.push_back(line);
    }
    REQUIRE(data_lines.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        char expected[160];
        std::snprintf(expected, sizeof expected, ",%.17g,%.17g,",
                      rows[i].at("bound").get<double>(), rows[i].at("lambda").get<double>());
        CHECK(data_lines[i].find(expected) != std::string::npos);
    }
}

TEST_CASE("payloads are byte-identical across thread counts") {
    const std::string graph = write_temp(
        "det.graph",
        "V a 1\nV b 2\nV c 1\nV d 1.5\nV e 1\nV f 1\n"
        "E a b 1\nE b c 2\nE c d 1\nE d e 1\nE e f 0.5\nE a f 1\nE b e 1\n");
    const std::string interior = write_temp("det.interior", "a\nb\nc\nd\n");

    const std::vector<std::string> invocations = {
        "validate " + graph,
        "metric " + graph + " --metric degree --p 2.5",
        "cheeger " + graph + " --variant h1 --mode exact --metric const:1",
        "cheeger " + graph + " --variant h0 --interior " + interior + " --mode auto",
        "eigen " + graph + " --p 1.5 --restarts 4 --seed 7",
        "sweep " + graph + " --p-grid 2,1.5,1.2 --restarts 2 --seed 3",
        "bounds " + graph + " --p 1.5,2 --seed 5",
        "partition " + graph + " --p 2",
        "brooks --family tree:3 --radii 3,4,5 --p 2",
    };
    for (const auto& inv : invocations) {
        CAPTURE(inv);
        auto one = run_cli(inv + " --threads 1");
        auto four = run_cli(inv + " --threads 4");
        REQUIRE(one.exit_code == 0);
        REQUIRE(four.exit_code == 0);
        CHECK(result_of(one).dump() == result_of(four).dump());
        // and rerunning with the same thread count is byte-identical too
        auto again = run_cli(inv + " --threads 1");
        CHECK(result_of(one).dump() == result_of(again).dump());
    }
}

TEST_CASE("graph files may interleave V lines after edges once declared") {
    const std::string path = write_temp(
        "interleave.graph", "V a 1\nV b 1\nE a b 1\nV c 1\nE b c 1\n");
    auto r = run_cli("validate " + path);
    CHECK(r.exit_code == 0);
    CHECK(result_of(r).at("vertices") == 3);
}

TEST_CASE("brooks custom family truncates a user graph around its first vertex") {
    // a long path: truncations behave like the path family
    std::string text;
    for (int i = 0; i < 21; ++i) text += "V p" + std::to_string(i) + " 2\n";
    for (int i = 0; i + 1 < 21; ++i)
        text += "E p" + std::to_string(i) + " p" + std::to_string(i + 1) + " 1\n";
    const std::string path = write_temp("custom.graph", text);
    auto r = run_cli("brooks --family custom:" + path + " --radii 4,8,12 --p 2");
    REQUIRE(r.exit_code == 0);
    const json rows = result_of(r).at("rows");
    REQUIRE(rows.size() == 3);
    // one-sided path truncations: lambda decreasing, growth subexponential
    CHECK(rows[2].at("lambda").get<double>() < rows[0].at("lambda").get<double>());
    CHECK(rows[2].at("mu_estimate").get<double>() < 0.3);
}

TEST_CASE("output lands in --output files") {
    const std::string graph = write_temp("out.graph", "V a 1\nV b 1\nE a b 1\n");
    const std::string out = "/tmp/pspect_cli_out.json";
    auto r = run_cli("validate " + graph + " --output " + out);
    CHECK(r.exit_code == 0);
    std::ifstream f(out);
    REQUIRE(f.good());
    json doc = json::parse(f);
    CHECK(doc.at("schema") == 1);
    CHECK(doc.at("manifest").at("command") == "validate");
    std::remove(out.c_str());
}
