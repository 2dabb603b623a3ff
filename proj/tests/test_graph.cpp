#include <catch2/catch_amalgamated.hpp>

#include "support/corpus.hpp"

using namespace leavitt;
using namespace leavitt::testing;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("ids are validated and unique across vertices and edges") {
    Graph g;
    g.add_vertex("v");
    g.add_vertex("w'");
    CHECK_THROWS_WITH(g.add_vertex("v"), ContainsSubstring("duplicate id"));
    CHECK_THROWS_WITH(g.add_vertex("2x"), ContainsSubstring("invalid id"));
    CHECK_THROWS_WITH(g.add_vertex(""), ContainsSubstring("invalid id"));
    g.add_edge("e", "v", "w'");
    CHECK_THROWS_WITH(g.add_edge("v", "v", "v"), ContainsSubstring("duplicate id"));
    CHECK_THROWS_WITH(g.add_edge("f", "v", "nope"), ContainsSubstring("unknown vertex"));
    CHECK(g.find_vertex("v"));
    CHECK_FALSE(g.find_edge("v"));
    CHECK(g.find_edge("e"));
    CHECK_FALSE(g.find_vertex("e"));
}

TEST_CASE("classification splits regular vertices from sinks") {
    Graph g = load_fixture("fork").graph; // e: v -> u, f: v -> w
    auto cls = classify_vertices(g);
    REQUIRE(cls.regular.size() == 1);
    CHECK(g.vertex_id(cls.regular[0]) == "v");
    REQUIRE(cls.sinks.size() == 2);
    CHECK(g.vertex_id(cls.sinks[0]) == "u");
    CHECK(g.vertex_id(cls.sinks[1]) == "w");
}

TEST_CASE("paths validate, concatenate and print") {
    Graph g = load_fixture("a3").graph; // e1: v -> w, e2: w -> z
    int v = *g.find_vertex("v");
    int w = *g.find_vertex("w");
    int e1 = *g.find_edge("e1");
    int e2 = *g.find_edge("e2");

    Path p{v, {e1}};
    Path q{w, {e2}};
    CHECK(p.valid(g));
    CHECK(q.valid(g));
    CHECK_FALSE(Path{v, {e2}}.valid(g));

    Path pq = concat(p, q, g);
    CHECK(pq.length() == 2);
    CHECK(pq.range(g) == *g.find_vertex("z"));
    CHECK(path_str(pq, g) == "e1.e2");
    CHECK(path_str(Path::at_vertex(v), g) == "v");
    CHECK_THROWS_WITH(concat(q, p, g), ContainsSubstring("ranges do not match"));
}

TEST_CASE("cycle vertices per fixture") {
    auto ids = [](const std::string &name) {
        Graph g = load_fixture(name).graph;
        std::vector<std::string> out;
        for (int v : cycle_vertices(g))
            out.push_back(g.vertex_id(v));
        return out;
    };
    CHECK(ids("toeplitz") == std::vector<std::string>{"v"});
    CHECK(ids("two_cycle") == std::vector<std::string>{"v", "w"});
    CHECK(ids("cycle_tail") == std::vector<std::string>{"v", "w"});
    CHECK(ids("rose2") == std::vector<std::string>{"v"});
    CHECK(ids("a3").empty());
    CHECK(ids("comb").empty());
}

TEST_CASE("no-exit reports the violating vertex and edge") {
    Graph toeplitz = load_fixture("toeplitz").graph;
    auto r = is_no_exit(toeplitz);
    REQUIRE_FALSE(r.no_exit);
    CHECK(toeplitz.vertex_id(r.vertex) == "v");
    CHECK(toeplitz.edge(r.exit_edge).id == "f");

    Graph rose = load_fixture("rose2").graph;
    r = is_no_exit(rose);
    REQUIRE_FALSE(r.no_exit);
    CHECK(rose.edge(r.exit_edge).id == "e2");

    Graph tail = load_fixture("cycle_tail").graph;
    r = is_no_exit(tail);
    REQUIRE_FALSE(r.no_exit);
    CHECK(tail.vertex_id(r.vertex) == "w");
    CHECK(tail.edge(r.exit_edge).id == "g1");

    CHECK(is_no_exit(load_fixture("two_cycle").graph).no_exit);
    CHECK(is_no_exit(load_fixture("loop").graph).no_exit);
    CHECK(is_no_exit(load_fixture("a2").graph).no_exit);

    for (const std::string &name : corpus_names()) {
        Graph g = load_fixture(name).graph;
        CHECK(is_locally_noetherian_graph(g) == is_no_exit(g).no_exit);
    }
}

TEST_CASE("find_cycle_at returns a closed path through the vertex") {
    Graph g = load_fixture("cycle_tail").graph;
    for (int v : cycle_vertices(g)) {
        auto c = find_cycle_at(g, v);
        REQUIRE(c);
        CHECK(c->source() == v);
        CHECK(c->range(g) == v);
        CHECK(c->length() >= 1);
        CHECK(c->valid(g));
    }
    CHECK_FALSE(find_cycle_at(load_fixture("a2").graph, 0));
}

TEST_CASE("relative graph of the Toeplitz pair with empty S") {
    LoadedGraph lg = load_fixture("toeplitz_cohn");
    REQUIRE(lg.s);
    REQUIRE(lg.s->empty());
    RelativeGraph rel = build_relative_graph(lg.graph, *lg.s);

    REQUIRE(rel.graph.vertex_count() == 3);
    CHECK(rel.graph.vertex_id(0) == "v");
    CHECK(rel.graph.vertex_id(1) == "w");
    CHECK(rel.graph.vertex_id(2) == "v'");
    REQUIRE(rel.graph.edge_count() == 3);
    CHECK(rel.graph.edge(2).id == "e'");
    CHECK(rel.graph.source(2) == 0);
    CHECK(rel.graph.range(2) == 2);

    // v' is a sink, so the relative graph of a Leavitt pair is the graph
    // itself
    auto s_full = std::vector<int>{0};
    RelativeGraph leavitt_rel = build_relative_graph(lg.graph, s_full);
    CHECK(leavitt_rel.graph.vertex_count() == 2);
    CHECK(leavitt_rel.graph.edge_count() == 2);
}

TEST_CASE("relative graph primes avoid existing ids") {
    Graph g;
    g.add_vertex("v");
    g.add_vertex("v'");
    g.add_edge("e", "v", "v");
    RelativeGraph rel = build_relative_graph(g, {});
    REQUIRE(rel.graph.vertex_count() == 3);
    CHECK(rel.graph.vertex_id(rel.primed_vertex[0]) == "v'1");
}

TEST_CASE("complete subobject closes S-fans") {
    LoadedGraph lg = load_fixture("toeplitz");
    std::vector<int> s{*lg.graph.find_vertex("v")};

    Subgraph sub;
    sub.vertices = {*lg.graph.find_vertex("v")};
    sub.edges = {*lg.graph.find_edge("e")};
    SubobjectResult res = complete_subobject(lg.graph, s, sub);
    CHECK(res.graph.vertex_count() == 2);
    CHECK(res.graph.edge_count() == 2);
    REQUIRE(res.t.size() == 1);
    CHECK(res.graph.vertex_id(res.t[0]) == "v");

    // a sink-only subgraph completes to itself with empty T
    Graph fork = load_fixture("fork").graph;
    Subgraph just_u;
    just_u.vertices = {*fork.find_vertex("u")};
    SubobjectResult small = complete_subobject(fork, {*fork.find_vertex("v")}, just_u);
    CHECK(small.graph.vertex_count() == 1);
    CHECK(small.graph.edge_count() == 0);
    CHECK(small.t.empty());

    // vertex v in S with no kept edge stays out of T and becomes a sink
    Subgraph broken;
    broken.vertices = {*fork.find_vertex("v"), *fork.find_vertex("u")};
    SubobjectResult half = complete_subobject(fork, {*fork.find_vertex("v")}, broken);
    CHECK(half.graph.vertex_count() == 2);
    CHECK(half.graph.edge_count() == 0);
    CHECK(half.t.empty());

    Subgraph bad;
    bad.edges = {*fork.find_edge("e")};
    CHECK_THROWS_WITH(complete_subobject(fork, {}, bad),
                      ContainsSubstring("endpoint outside"));
}
