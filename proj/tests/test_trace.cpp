#include <catch2/catch_amalgamated.hpp>

#include "support/corpus.hpp"

#include <random>

using namespace leavitt;
using namespace leavitt::testing;
using Catch::Matchers::ContainsSubstring;

namespace {

GraphTrace fixture_trace(const std::string &name, const AlgebraContext &ctx) {
    return load_trace_file(fixture_path(name + ".json"), ctx.graph, ctx.field);
}

} // namespace

TEST_CASE("graph traces verify against the fan relations") {
    AlgebraContext ctx = corpus_context("fork");
    GraphTrace good = fixture_trace("fork_trace", ctx);
    TraceReport rep = verify_graph_trace(good, ctx);
    CHECK(rep.sck2_ok);
    CHECK(rep.positive_ok);
    CHECK(rep.faithful_conditions_ok);
    CHECK(rep.faithful_certified);
    CHECK(rep.faithful_ok);
    CHECK(rep.violations.empty());

    GraphTrace bad = fixture_trace("fork_trace_bad", ctx);
    rep = verify_graph_trace(bad, ctx);
    CHECK_FALSE(rep.sck2_ok);
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations[0].condition == "SCK2");
    CHECK(rep.violations[0].vertex == "v");
    CHECK(rep.violations[0].detail == "delta(v) = 3 but the fan sums to 2");

    GraphTrace short_trace;
    short_trace.values = {Scalar(1)};
    CHECK_THROWS_WITH(verify_graph_trace(short_trace, ctx),
                      ContainsSubstring("not total"));
}

TEST_CASE("positive but unfaithful traces are reported as such") {
    AlgebraContext ctx = corpus_context("toeplitz");
    GraphTrace d = fixture_trace("toeplitz_trace", ctx); // delta(w) = 0
    TraceReport rep = verify_graph_trace(d, ctx);
    CHECK(rep.sck2_ok);
    CHECK(rep.positive_ok);
    CHECK_FALSE(rep.faithful_conditions_ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].condition == "F");
    CHECK(rep.violations[0].vertex == "w");
}

TEST_CASE("imaginary values are rejected under the rational field") {
    FieldConfig rational{Involution::identity, true};
    AlgebraContext ctx = corpus_context("a2", rational);
    GraphTrace d;
    d.values = {Scalar::i(), Scalar::i()};
    CHECK_THROWS_WITH(verify_graph_trace(d, ctx), ContainsSubstring("imaginary"));
}

TEST_CASE("canonical trace on monomials and normal forms") {
    AlgebraContext ctx = corpus_context("fork");
    const Graph &g = ctx.graph;
    GraphTrace d = fixture_trace("fork_trace", ctx); // u:1 v:2 w:1
    int e = *g.find_edge("e"), f = *g.find_edge("f");

    CHECK(canonical_trace(vertex_elem(*g.find_vertex("v")), d, ctx) == Scalar(2));
    Element ee = mul_raw(edge_elem(e, g), ghost_elem(e, g), g);
    CHECK(canonical_trace(ee, d, ctx) == Scalar(1));
    Element ef = mul_raw(edge_elem(e, g), ghost_elem(f, g), g);
    CHECK(canonical_trace(ef, d, ctx) == Scalar(0));

    // well-defined: raw representatives and normal forms agree
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        Element x = random_element(ctx, rng, 6, 4);
        CHECK(canonical_trace(x, d, ctx) == canonical_trace(normalize(x, ctx), d, ctx));
    }

    GraphTrace bad = fixture_trace("fork_trace_bad", ctx);
    CHECK_THROWS_WITH(canonical_trace(vertex_elem(0), bad, ctx),
                      ContainsSubstring("violates the fan relation at 'v'"));
}

TEST_CASE("canonical trace satisfies the trace identity") {
    std::mt19937_64 rng(1234);
    for (const char *name : {"toeplitz", "fork", "wn", "loop"}) {
        INFO("graph " << name);
        AlgebraContext ctx = corpus_context(name);
        GraphTrace d = fixture_trace(std::string(name) + "_trace", ctx);
        for (int trial = 0; trial < 30; ++trial) {
            Element x = random_element(ctx, rng, 5, 3);
            Element y = random_element(ctx, rng, 5, 3);
            CHECK(canonical_trace(mul(x, y, ctx), d, ctx) ==
                  canonical_trace(mul(y, x, ctx), d, ctx));
            CHECK(canonical_trace(add(x, y), d, ctx) ==
                  canonical_trace(x, d, ctx) + canonical_trace(y, d, ctx));
        }
    }
}

TEST_CASE("positive traces give positive values on x star(x)") {
    std::mt19937_64 rng(910);
    for (const char *name : {"fork", "comb", "chain_fan", "wn", "toeplitz", "loop", "a2"}) {
        INFO("graph " << name);
        AlgebraContext ctx = corpus_context(name);
        GraphTrace d = fixture_trace(std::string(name) + "_trace", ctx);
        REQUIRE(verify_graph_trace(d, ctx).positive_ok);
        for (int trial = 0; trial < 40; ++trial) {
            Element x = random_element(ctx, rng, 5, 3);
            Scalar t = canonical_trace(mul(x, star_elem(x, ctx), ctx), d, ctx);
            CHECK(in_positive_cone(t, ctx.field));
        }
    }
}

TEST_CASE("faithful traces vanish only at zero") {
    std::mt19937_64 rng(911);
    for (const char *name : {"fork", "comb", "chain_fan", "wn"}) {
        INFO("graph " << name);
        AlgebraContext ctx = corpus_context(name);
        GraphTrace d = fixture_trace(std::string(name) + "_trace", ctx);
        REQUIRE(verify_graph_trace(d, ctx).faithful_ok);
        for (int trial = 0; trial < 25; ++trial) {
            Element x = random_nonzero_element(ctx, rng, 5, 3);
            Scalar t = canonical_trace(mul(x, star_elem(x, ctx), ctx), d, ctx);
            CHECK(in_positive_cone(t, ctx.field));
            CHECK_FALSE(t.is_zero());
        }
    }
}

TEST_CASE("identity involution on Q(i) defeats faithfulness") {
    FieldConfig qi_id{Involution::identity, false};
    AlgebraContext ctx = corpus_context("a2", qi_id);
    const Graph &g = ctx.graph;
    GraphTrace ones = fixture_trace("a2_trace", ctx);

    TraceReport rep = verify_graph_trace(ones, ctx);
    CHECK(rep.sck2_ok);
    CHECK(rep.positive_ok);
    CHECK(rep.faithful_conditions_ok);
    CHECK_FALSE(rep.faithful_certified);
    CHECK_FALSE(rep.faithful_ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].condition == "certification");

    Element x = add(vertex_elem(*g.find_vertex("v")),
                    scalar_mul(Scalar::i(), vertex_elem(*g.find_vertex("w"))));
    Element xxstar = mul(x, star_elem(x, ctx), ctx);
    Element v_minus_w =
        sub(vertex_elem(*g.find_vertex("v")), vertex_elem(*g.find_vertex("w")));
    CHECK(xxstar == v_minus_w);
    CHECK_FALSE(xxstar.is_zero());
    CHECK(canonical_trace(xxstar, ones, ctx) == Scalar(0));

    // under conjugation the same element has trace 2
    AlgebraContext conj_ctx = corpus_context("a2");
    Element y = add(vertex_elem(0), scalar_mul(Scalar::i(), vertex_elem(1)));
    Scalar t = canonical_trace(mul(y, star_elem(y, conj_ctx), conj_ctx),
                               fixture_trace("a2_trace", conj_ctx), conj_ctx);
    CHECK(t == Scalar(2));
}

TEST_CASE("canonical traces are gauge invariant and kill nonzero degrees") {
    std::mt19937_64 rng(5150);
    AlgebraContext ctx = corpus_context("toeplitz");
    GraphTrace d = fixture_trace("toeplitz_trace", ctx);
    Scalar ks[] = {Scalar(2), Scalar(Rational(1, 3)), Scalar::i()};
    for (int trial = 0; trial < 40; ++trial) {
        Element x = random_element(ctx, rng, 6, 4);
        for (const Scalar &k : ks)
            CHECK(canonical_trace(gauge_action(x, k, ctx), d, ctx) ==
                  canonical_trace(x, d, ctx));
        for (int n : degrees(x))
            if (n != 0)
                CHECK(canonical_trace(graded_component(x, n), d, ctx) == Scalar(0));
    }
}

TEST_CASE("nonzero trace of m1 star(m2) forces comparability") {
    std::mt19937_64 rng(5151);
    AlgebraContext ctx = corpus_context("fork");
    GraphTrace d = fixture_trace("fork_trace", ctx);
    int hits = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Monomial m1 = random_monomial(ctx.graph, rng, 3);
        Monomial m2 = random_monomial(ctx.graph, rng, 3);
        Element prod = mul_raw(Element(m1), star_raw(Element(m2), ctx.field), ctx.graph);
        if (!canonical_trace(prod, d, ctx).is_zero()) {
            ++hits;
            CHECK(comparable(m1, m2, ctx.graph));
        }
    }
    CHECK(hits > 20); // the implication must actually fire
}

TEST_CASE("two-point reduction of condition (P) matches exhaustive subsets") {
    std::mt19937_64 rng(888);
    std::uniform_int_distribution<long> val(-2, 2), den(1, 2);
    FieldConfig conj{};
    FieldConfig qi_id{Involution::identity, false};
    for (const std::string &name : corpus_names()) {
        INFO("graph " << name);
        for (const FieldConfig &field : {conj, qi_id}) {
            AlgebraContext ctx = corpus_context(name, field);
            for (int trial = 0; trial < 40; ++trial) {
                GraphTrace d;
                for (int v = 0; v < ctx.graph.vertex_count(); ++v) {
                    Rational im = trial % 3 == 0 ? Rational(val(rng)) : Rational(0);
                    d.values.emplace_back(Rational(val(rng), den(rng)), im);
                }
                bool two_point = verify_graph_trace(d, ctx).positive_ok;
                CHECK(two_point == exhaustive_condition_p(d, ctx));
            }
        }
    }
}

TEST_CASE("trace solver outcomes are frozen for the key fixtures") {
    // Toeplitz, faithful: infeasible with the two-line certificate
    AlgebraContext toeplitz = corpus_context("toeplitz");
    TraceSolveOutcome out = solve_graph_trace(toeplitz, true);
    REQUIRE_FALSE(out.trace);
    REQUIRE(out.certificate);
    CHECK(check_certificate(out.constraints, 2, *out.certificate));
    REQUIRE(out.certificate->combination.size() == 2);
    CHECK(out.constraints[out.certificate->combination[0].index].id == "SCK2(v)");
    CHECK(out.constraints[out.certificate->combination[1].index].id == "F(w)");
    CHECK(out.certificate->combination[0].mult == Rational(1));
    CHECK(out.certificate->combination[1].mult == Rational(1));
    CHECK(out.certificate->rel == LinearConstraint::Rel::gt);
    CHECK(out.certificate->rhs == Rational(0));

    // Toeplitz, positive only: the solver finds delta = (1, 0)
    out = solve_graph_trace(toeplitz, false);
    REQUIRE(out.trace);
    CHECK(out.trace->values == std::vector<Scalar>{Scalar(1), Scalar(0)});

    // a2, faithful: delta = (1, 1)
    out = solve_graph_trace(corpus_context("a2"), true);
    REQUIRE(out.trace);
    CHECK(out.trace->values == std::vector<Scalar>{Scalar(1), Scalar(1)});

    // w_n, faithful: a scaled copy of the hand trace (1, 1, 2, 3)
    AlgebraContext wn = corpus_context("wn");
    out = solve_graph_trace(wn, true);
    REQUIRE(out.trace);
    CHECK(out.trace->values ==
          std::vector<Scalar>{Scalar(Rational(1, 3)), Scalar(Rational(1, 3)),
                              Scalar(Rational(2, 3)), Scalar(1)});
    CHECK(verify_graph_trace(*out.trace, wn).faithful_ok);
    CHECK(verify_graph_trace(fixture_trace("wn_trace", wn), wn).faithful_ok);
}

TEST_CASE("faithful solvability coincides with direct finiteness") {
    for (const std::string &name : corpus_names()) {
        INFO("graph " << name);
        AlgebraContext ctx = corpus_context(name);
        TraceSolveOutcome out = solve_graph_trace(ctx, true);
        FinitenessReport fin = is_directly_finite(ctx);
        CHECK(out.trace.has_value() == fin.directly_finite);
        if (out.trace)
            CHECK(verify_graph_trace(*out.trace, ctx).faithful_ok);
        else
            CHECK(check_certificate(out.constraints, ctx.graph.vertex_count(),
                                    *out.certificate));
    }
}
