#include <catch2/catch_amalgamated.hpp>

#include "support/corpus.hpp"

#include <fstream>
#include <sstream>

using namespace leavitt;
using namespace leavitt::testing;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = leavitt::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string graph_arg(const std::string &name) { return fixture_path(name + ".json"); }

std::string expected_text(const std::string &name) {
    std::ifstream in(fixture_path("expected/" + name));
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("check prints the graph report") {
    struct Case {
        const char *graph;
        const char *expected;
        int code;
    };
    for (Case c : {Case{"toeplitz", "toeplitz_check.txt", 1},
                   Case{"loop_cohn", "loop_cohn_check.txt", 1},
                   Case{"a2", "a2_check.txt", 0},
                   Case{"cycle_tail", "cycle_tail_check.txt", 1}}) {
        INFO("graph " << c.graph);
        CliResult r = run_cli({"check", graph_arg(c.graph)});
        CHECK(r.code == c.code);
        CHECK(r.out == expected_text(c.expected));
        CHECK(r.err.empty());
    }
}

TEST_CASE("check --json") {
    CliResult r = run_cli({"check", graph_arg("toeplitz"), "--json"});
    CHECK(r.code == 1);
    json doc = json::parse(r.out);
    CHECK(doc["vertices"].size() == 2);
    CHECK(doc["vertices"][0]["id"] == "v");
    CHECK(doc["vertices"][0]["regular"] == true);
    CHECK(doc["vertices"][0]["in_s"] == true);
    CHECK(doc["cycle_vertices"] == json::array({"v"}));
    CHECK(doc["no_exit"] == false);
    CHECK(doc["exit_vertex"] == "v");
    CHECK(doc["exit_edge"] == "f");
    CHECK(doc["acyclic"] == false);
    CHECK(doc["directly_finite"] == false);
    CHECK(doc["reason"] == "cycle with exit at v");
    CHECK(doc["locally_noetherian"] == false);
}

TEST_CASE("eval normalizes an expression") {
    CliResult r = run_cli({"eval", graph_arg("a2"), "--expr", "e e^*"});
    CHECK(r.code == 0);
    CHECK(r.out == "v\n");

    r = run_cli({"eval", graph_arg("a2"), "--expr", "e e^*", "--trace",
                 fixture_path("a2_trace.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "v\ntrace: 1\n");

    r = run_cli({"eval", graph_arg("a2"), "--expr", "(v + i w)(v + i w)^*", "--field",
                 "qi", "--involution", "id", "--trace", fixture_path("a2_trace.json"),
                 "--json"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["normal_form"] == "v - w");
    CHECK(doc["trace"] == "0");
}

TEST_CASE("eval rejects bad input with exit code 2") {
    CliResult r = run_cli({"eval", graph_arg("a2"), "--expr", "v + q"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err == "error: unknown generator 'q' (at position 4)\n");

    r = run_cli({"eval", graph_arg("a2"), "--field", "q", "--expr", "i v"});
    CHECK(r.code == 2);
    CHECK(r.err.substr(0, 7) == "error: ");

    r = run_cli({"eval", graph_arg("nonexistent"), "--expr", "v"});
    CHECK(r.code == 2);
    CHECK(r.err == "error: cannot open file '" + graph_arg("nonexistent") + "'\n");
}

TEST_CASE("trace-verify reports conditions and violations") {
    CliResult r =
        run_cli({"trace-verify", graph_arg("fork"), fixture_path("fork_trace.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "sck2: ok\npositive: ok\nfaithful: ok\n");

    r = run_cli({"trace-verify", graph_arg("fork"), fixture_path("fork_trace_bad.json")});
    CHECK(r.code == 1);
    CHECK(r.out.find("sck2: violated\n") != std::string::npos);
    CHECK(r.out.find("  SCK2 at v: delta(v) = 3 but the fan sums to 2\n") !=
          std::string::npos);

    r = run_cli(
        {"trace-verify", graph_arg("toeplitz"), fixture_path("toeplitz_trace.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("positive: ok\n") != std::string::npos);
    CHECK(r.out.find("faithful: violated\n") != std::string::npos);

    r = run_cli({"trace-verify", graph_arg("fork"), fixture_path("fork_trace.json"),
                 "--field", "qi", "--involution", "id", "--json"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["sck2"] == true);
    CHECK(doc["positive"] == true);
    CHECK(doc["faithful_conditions"] == true);
    CHECK(doc["faithful_certified"] == false);
    CHECK(doc["faithful"] == false);
    REQUIRE(doc["violations"].size() == 1);
    CHECK(doc["violations"][0]["condition"] == "certification");
}

TEST_CASE("trace-solve returns a trace or a certificate") {
    CliResult r = run_cli({"trace-solve", graph_arg("toeplitz"), "--faithful"});
    CHECK(r.code == 1);
    json doc = json::parse(r.out);
    REQUIRE(doc.contains("certificate"));
    REQUIRE(doc["certificate"].size() == 2);
    CHECK(doc["certificate"][0]["id"] == "SCK2(v)");
    CHECK(doc["certificate"][0]["mult"] == "1");
    CHECK(doc["certificate"][1]["id"] == "F(w)");
    CHECK(doc["certificate"][1]["mult"] == "1");
    CHECK(doc["derived"] == "0 > 0");

    r = run_cli({"trace-solve", graph_arg("toeplitz")});
    CHECK(r.code == 0);
    doc = json::parse(r.out);
    CHECK(doc["values"]["v"] == "1");
    CHECK(doc["values"]["w"] == "0");

    r = run_cli({"trace-solve", graph_arg("wn"), "--faithful"});
    CHECK(r.code == 0);
    doc = json::parse(r.out);
    CHECK(doc["values"].size() == 4);
}

TEST_CASE("construct-es emits the relative graph and phi") {
    CliResult r = run_cli({"construct-es", graph_arg("toeplitz_cohn")});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["graph"]["vertices"] == json::array({"v", "w", "v'"}));
    REQUIRE(doc["graph"]["edges"].size() == 3);
    CHECK(doc["graph"]["edges"][2]["id"] == "e'");
    CHECK(doc["graph"]["edges"][2]["src"] == "v");
    CHECK(doc["graph"]["edges"][2]["rng"] == "v'");
    CHECK(doc["graph"]["S"] == json::array({"v"}));
    CHECK(doc["phi"].size() == 6);
    CHECK(doc["phi"]["v'"] == "v - e*e^* - f*f^*");
    CHECK(doc["phi"]["w"] == "w");
}

TEST_CASE("construct-complete completes a subgraph") {
    CliResult r = run_cli({"construct-complete", graph_arg("toeplitz"), "--sub",
                           fixture_path("toeplitz_sub.json")});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["vertices"] == json::array({"v", "w"}));
    CHECK(doc["edges"].size() == 2);
    CHECK(doc["S"] == json::array({"v"}));

    r = run_cli({"construct-complete", graph_arg("fork"), "--sub",
                 fixture_path("fork_sub.json")});
    CHECK(r.code == 0);
    doc = json::parse(r.out);
    CHECK(doc["vertices"] == json::array({"u"}));
    CHECK(doc["edges"].empty());
    CHECK(doc["S"].empty());
}

TEST_CASE("witness prints a verified pair or none") {
    CliResult r = run_cli({"witness", graph_arg("toeplitz")});
    CHECK(r.code == 0);
    CHECK(r.out == "kind: cycle-with-exit\n"
                   "x: w + e\n"
                   "u: v + w\n"
                   "star(x)*x: v + w\n"
                   "x*star(x): v + w - f*f^*\n"
                   "verified: star(x)*x = u and x*star(x) != u\n");

    r = run_cli({"witness", graph_arg("a2")});
    CHECK(r.code == 1);
    CHECK(r.out == "witness: none (directly finite)\n");

    r = run_cli({"witness", graph_arg("loop_cohn"), "--json"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["kind"] == "cycle-not-in-S");
    CHECK(doc["x"] == "e");
    CHECK(doc["u"] == "v");
    CHECK(doc["x_xstar"] == "e*e^*");
    CHECK(doc["verified"] == true);
}

TEST_CASE("oracle-check cross-checks the representations") {
    CliResult r = run_cli({"oracle-check", graph_arg("a2"), "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("matrix oracle: applicable") != std::string::npos);
    CHECK(r.out.find("fail") == std::string::npos);

    r = run_cli({"oracle", "check", graph_arg("a2"), "--seed", "7"});
    CHECK(r.code == 0);

    r = run_cli({"oracle-check", graph_arg("loop"), "--json"});
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["applicable"] == true);
    CHECK(doc["pass"] == true);
    bool laurent_seen = false;
    for (const auto &line : doc["checks"])
        if (line["check"] == "laurent oracle")
            laurent_seen = true;
    CHECK(laurent_seen);

    r = run_cli({"oracle-check", graph_arg("two_cycle")});
    CHECK(r.code == 1);
    CHECK(r.out.find("result: not applicable\n") != std::string::npos);
}

TEST_CASE("unknown subcommands exit with code 2") {
    CliResult r = run_cli({"frobnicate", graph_arg("a2")});
    CHECK(r.code == 2);
}
