#pragma once

#include "expr.hpp"
#include "finiteness.hpp"
#include "json_io.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "relative.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace leavitt {

namespace cli_detail {

struct CommonOpts {
    std::string graph_path;
    std::string field = "qi";
    std::string involution; // defaults per field when empty
    bool json = false;
};

inline FieldConfig field_config(const CommonOpts &o) {
    FieldConfig fc;
    fc.restrict_to_rationals = o.field == "q";
    std::string inv = o.involution;
    if (inv.empty())
        inv = fc.restrict_to_rationals ? "id" : "conj";
    fc.involution = inv == "id" ? Involution::identity : Involution::conjugation;
    if (fc.restrict_to_rationals)
        fc.involution = Involution::identity;
    return fc;
}

inline void add_common(CLI::App *sub, CommonOpts &o) {
    sub->add_option("graph", o.graph_path, "graph JSON file")->required();
    sub->add_option("--field", o.field, "coefficient field: q or qi (default qi)")
        ->check(CLI::IsMember({"q", "qi"}));
    sub->add_option("--involution", o.involution,
                    "involution on the field: id or conj (default conj on qi)")
        ->check(CLI::IsMember({"id", "conj"}));
    sub->add_flag("--json", o.json, "machine-readable report");
}

inline AlgebraContext load_context(const CommonOpts &o) {
    LoadedGraph lg = load_graph_file(o.graph_path);
    return make_context(std::move(lg.graph), lg.s, field_config(o));
}

inline int cmd_check(const AlgebraContext &ctx, bool as_json, std::ostream &out) {
    const Graph &g = ctx.graph;
    auto cls = classify_vertices(g);
    auto cyc = cycle_vertices(g);
    auto exits = is_no_exit(g);
    auto fin = is_directly_finite(ctx);
    bool acyclic = cyc.empty();
    bool noetherian = exits.no_exit;

    if (as_json) {
        json doc;
        doc["vertices"] = json::array();
        for (int v = 0; v < g.vertex_count(); ++v)
            doc["vertices"].push_back({{"id", g.vertex_id(v)},
                                       {"regular", static_cast<bool>(cls.is_regular[v])},
                                       {"in_s", static_cast<bool>(ctx.in_s[v])}});
        doc["cycle_vertices"] = json::array();
        for (int v : cyc)
            doc["cycle_vertices"].push_back(g.vertex_id(v));
        doc["no_exit"] = exits.no_exit;
        if (!exits.no_exit) {
            doc["exit_vertex"] = g.vertex_id(exits.vertex);
            doc["exit_edge"] = g.edge(exits.exit_edge).id;
        }
        doc["acyclic"] = acyclic;
        doc["directly_finite"] = fin.directly_finite;
        doc["reason"] = fin.reason;
        doc["locally_noetherian"] = noetherian;
        out << doc.dump(2) << "\n";
        return fin.directly_finite ? 0 : 1;
    }

    out << "vertices: ";
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v)
            out << "; ";
        out << g.vertex_id(v)
            << (cls.is_regular[v] ? (ctx.in_s[v] ? " (regular, in S)" : " (regular)")
                                  : " (sink)");
    }
    out << "\n";
    out << "cycle vertices: ";
    if (cyc.empty()) {
        out << "none";
    } else {
        for (size_t i = 0; i < cyc.size(); ++i)
            out << (i ? ", " : "") << g.vertex_id(cyc[i]);
    }
    out << "\n";
    if (exits.no_exit)
        out << "no-exit: true\n";
    else
        out << "no-exit: false (cycle vertex " << g.vertex_id(exits.vertex)
            << " has exit " << g.edge(exits.exit_edge).id << ")\n";
    out << "acyclic: " << (acyclic ? "true" : "false") << "\n";
    if (fin.directly_finite)
        out << "directly-finite: true\n";
    else
        out << "directly-finite: false (" << fin.reason << ")\n";
    out << "locally-noetherian: " << (noetherian ? "true" : "false") << "\n";
    return fin.directly_finite ? 0 : 1;
}

inline int cmd_eval(const AlgebraContext &ctx, const std::string &expr,
                    const std::string &trace_path, bool as_json, std::ostream &out) {
    Element nf = normalize(parse_element(expr, ctx), ctx);
    std::string text = to_string(nf, ctx.graph);
    std::optional<std::string> trace_text;
    if (!trace_path.empty()) {
        GraphTrace d = load_trace_file(trace_path, ctx.graph, ctx.field);
        trace_text = to_string(canonical_trace(nf, d, ctx));
    }
    if (as_json) {
        json doc{{"normal_form", text}};
        if (trace_text)
            doc["trace"] = *trace_text;
        out << doc.dump(2) << "\n";
    } else {
        out << text << "\n";
        if (trace_text)
            out << "trace: " << *trace_text << "\n";
    }
    return 0;
}

inline int cmd_trace_verify(const AlgebraContext &ctx, const std::string &trace_path,
                            bool as_json, std::ostream &out) {
    GraphTrace d = load_trace_file(trace_path, ctx.graph, ctx.field);
    TraceReport rep = verify_graph_trace(d, ctx);
    bool conditions = rep.sck2_ok && rep.positive_ok && rep.faithful_conditions_ok;

    if (as_json) {
        json doc{{"sck2", rep.sck2_ok},
                 {"positive", rep.positive_ok},
                 {"faithful_conditions", rep.faithful_conditions_ok},
                 {"faithful_certified", rep.faithful_certified},
                 {"faithful", rep.faithful_ok}};
        doc["violations"] = json::array();
        for (const auto &v : rep.violations)
            doc["violations"].push_back(
                {{"condition", v.condition}, {"vertex", v.vertex}, {"detail", v.detail}});
        out << doc.dump(2) << "\n";
    } else {
        out << "sck2: " << (rep.sck2_ok ? "ok" : "violated") << "\n";
        out << "positive: " << (rep.positive_ok ? "ok" : "violated") << "\n";
        if (rep.faithful_ok)
            out << "faithful: ok\n";
        else if (conditions)
            out << "faithful: not certified\n";
        else
            out << "faithful: violated\n";
        for (const auto &v : rep.violations) {
            out << "  " << v.condition;
            if (!v.vertex.empty())
                out << " at " << v.vertex;
            out << ": " << v.detail << "\n";
        }
    }
    return rep.sck2_ok && rep.positive_ok ? 0 : 1;
}

inline int cmd_trace_solve(const AlgebraContext &ctx, bool faithful, std::ostream &out) {
    TraceSolveOutcome res = solve_graph_trace(ctx, faithful);
    if (res.trace) {
        out << trace_to_json(*res.trace, ctx.graph).dump(2) << "\n";
        return 0;
    }
    out << certificate_to_json(*res.certificate, res.constraints).dump(2) << "\n";
    return 1;
}

inline int cmd_construct_es(const AlgebraContext &ctx, std::ostream &out) {
    RelativeGraph rel = build_relative_graph(ctx.graph, ctx.s);
    GeneratorDictionary dict = build_generator_dictionary(rel, ctx);
    json phi = json::object();
    for (int v = 0; v < rel.graph.vertex_count(); ++v)
        phi[rel.graph.vertex_id(v)] = to_string(dict.vertex_image[v], ctx.graph);
    for (int e = 0; e < rel.graph.edge_count(); ++e)
        phi[rel.graph.edge(e).id] = to_string(dict.edge_image[e], ctx.graph);
    json doc{{"graph", graph_to_json(rel.graph, classify_vertices(rel.graph).regular)},
             {"phi", std::move(phi)}};
    out << doc.dump(2) << "\n";
    return 0;
}

inline int cmd_construct_complete(const AlgebraContext &ctx, const std::string &sub_path,
                                  std::ostream &out) {
    Subgraph sub = load_subgraph_file(sub_path, ctx.graph);
    SubobjectResult res = complete_subobject(ctx.graph, ctx.s, sub);
    out << graph_to_json(res.graph, res.t).dump(2) << "\n";
    return 0;
}

inline int cmd_witness(const AlgebraContext &ctx, bool as_json, std::ostream &out) {
    auto w = non_finiteness_witness(ctx);
    if (!w) {
        if (as_json)
            out << json{{"witness", nullptr}}.dump(2) << "\n";
        else
            out << "witness: none (directly finite)\n";
        return 1;
    }
    const Graph &g = ctx.graph;
    std::string x = to_string(normalize(w->x, ctx), g);
    std::string u = to_string(normalize(w->u, ctx), g);
    if (as_json) {
        json doc{{"kind", w->kind},
                 {"x", x},
                 {"u", u},
                 {"xstar_x", to_string(w->xstar_x, g)},
                 {"x_xstar", to_string(w->x_xstar, g)},
                 {"verified", true}};
        out << doc.dump(2) << "\n";
    } else {
        out << "kind: " << w->kind << "\n";
        out << "x: " << x << "\n";
        out << "u: " << u << "\n";
        out << "star(x)*x: " << to_string(w->xstar_x, g) << "\n";
        out << "x*star(x): " << to_string(w->x_xstar, g) << "\n";
        out << "verified: star(x)*x = u and x*star(x) != u\n";
    }
    return 0;
}

inline int cmd_oracle_check(const AlgebraContext &ctx, uint64_t seed, bool as_json,
                            std::ostream &out) {
    std::mt19937_64 rng(seed);
    json report = json::array();
    bool applicable = false, all_pass = true;
    auto line = [&](const std::string &name, const std::string &status) {
        report.push_back({{"check", name}, {"status", status}});
        if (!as_json)
            out << name << ": " << status << "\n";
        if (status.rfind("fail", 0) == 0)
            all_pass = false;
    };

    try {
        MatrixRep rep = build_matrix_rep(ctx);
        applicable = true;
        line("matrix oracle",
             "applicable (blocks: " + std::to_string(rep.blocks.size()) +
                 ", dimension: " + std::to_string(rep.dimension) + ")");
        line("defining relations", "pass");
        line("basis count", "pass (" + std::to_string(rep.basis_count) + ")");

        size_t bad = 0;
        for (int i = 0; i < 200; ++i) {
            Element x = random_element(ctx, rng, 4, 3);
            Element y = random_element(ctx, rng, 4, 3);
            BlockDiag ex = oracle_eval(x, rep), ey = oracle_eval(y, rep);
            if (!(oracle_eval(mul(x, y, ctx), rep) == bd_mul(ex, ey)))
                ++bad;
            if (!(oracle_eval(normalize(x, ctx), rep) == ex))
                ++bad;
            if (!(oracle_eval(star_elem(x, ctx), rep) == bd_star(ex, ctx.field)))
                ++bad;
        }
        line("evaluation homomorphism (200 samples)",
             bad ? "fail (" + std::to_string(bad) + " mismatches)" : "pass");

        TraceSolveOutcome solved = solve_graph_trace(ctx, false);
        if (solved.trace) {
            size_t tbad = 0;
            for (int i = 0; i < 50; ++i) {
                Element x = random_element(ctx, rng, 4, 3);
                if (canonical_trace(x, *solved.trace, ctx) !=
                    oracle_trace(oracle_eval(x, rep), rep, *solved.trace))
                    ++tbad;
            }
            line("trace compatibility (50 samples)",
                 tbad ? "fail (" + std::to_string(tbad) + " mismatches)" : "pass");
        } else {
            line("trace compatibility", "skipped (no positive trace)");
        }

        ProbeResult probe = oracle_direct_finiteness_probe(rep, 200, rng);
        line("direct finiteness probe (200 triples)",
             probe.ok ? "pass" : "fail (" + probe.detail + ")");
    } catch (const error &e) {
        line("matrix oracle", std::string("not applicable (") + e.what() + ")");
    }

    try {
        LaurentRep rep = build_laurent_rep(ctx);
        applicable = true;
        line("laurent oracle", "applicable");

        size_t bad = 0;
        for (int i = 0; i < 200; ++i) {
            Element x = random_element(ctx, rng, 4, 3);
            Element y = random_element(ctx, rng, 4, 3);
            Laurent ex = laurent_eval(x, rep), ey = laurent_eval(y, rep);
            if (!(laurent_eval(mul(x, y, ctx), rep) == laurent_mul(ex, ey)))
                ++bad;
            if (!(laurent_eval(normalize(x, ctx), rep) == ex))
                ++bad;
            if (!(laurent_eval(star_elem(x, ctx), rep) == laurent_star(ex, ctx.field)))
                ++bad;
        }
        line("laurent evaluation homomorphism (200 samples)",
             bad ? "fail (" + std::to_string(bad) + " mismatches)" : "pass");

        TraceSolveOutcome solved = solve_graph_trace(ctx, false);
        if (solved.trace) {
            size_t tbad = 0;
            for (int i = 0; i < 50; ++i) {
                Element x = random_element(ctx, rng, 4, 3);
                if (canonical_trace(x, *solved.trace, ctx) !=
                    laurent_trace(laurent_eval(x, rep), rep, *solved.trace))
                    ++tbad;
            }
            line("laurent trace compatibility (50 samples)",
                 tbad ? "fail (" + std::to_string(tbad) + " mismatches)" : "pass");
        } else {
            line("laurent trace compatibility", "skipped (no positive trace)");
        }

        ProbeResult probe = oracle_direct_finiteness_probe(rep, 200, rng);
        line("laurent direct finiteness probe (200 triples)",
             probe.ok ? "pass" : "fail (" + probe.detail + ")");
    } catch (const error &e) {
        line("laurent oracle", std::string("not applicable (") + e.what() + ")");
    }

    if (!applicable && !as_json)
        out << "result: not applicable\n";
    if (as_json)
        out << json{{"checks", std::move(report)},
                    {"applicable", applicable},
                    {"pass", applicable && all_pass}}
                   .dump(2)
            << "\n";
    return applicable && all_pass ? 0 : 1;
}

} // namespace cli_detail

/// Command-line front end. Takes the argument list without the program
/// name; writes reports to `out` and errors to `err`; returns the exit
/// code (0 = success/true, 1 = property false/infeasible, 2 = input error).
inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    using namespace cli_detail;
    if (args.size() >= 2 && args[0] == "oracle" && args[1] == "check") {
        args.erase(args.begin());
        args[0] = "oracle-check";
    }

    CLI::App app{"Cohn-Leavitt path algebra toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    CommonOpts check_o;
    auto *check = app.add_subcommand("check", "graph and finiteness report");
    add_common(check, check_o);
    check->callback([&] { rc = cmd_check(load_context(check_o), check_o.json, out); });

    CommonOpts eval_o;
    std::string eval_expr, eval_trace;
    auto *eval = app.add_subcommand("eval", "normalize an expression");
    add_common(eval, eval_o);
    eval->add_option("--expr", eval_expr, "element expression")->required();
    eval->add_option("--trace", eval_trace, "trace JSON file for the canonical trace");
    eval->callback(
        [&] { rc = cmd_eval(load_context(eval_o), eval_expr, eval_trace, eval_o.json, out); });

    CommonOpts tv_o;
    std::string tv_trace;
    auto *tverify = app.add_subcommand("trace-verify", "verify a graph trace");
    add_common(tverify, tv_o);
    tverify->add_option("trace", tv_trace, "trace JSON file")->required();
    tverify->callback(
        [&] { rc = cmd_trace_verify(load_context(tv_o), tv_trace, tv_o.json, out); });

    CommonOpts ts_o;
    bool ts_faithful = false;
    auto *tsolve = app.add_subcommand("trace-solve", "solve for a positive graph trace");
    add_common(tsolve, ts_o);
    tsolve->add_flag("--faithful", ts_faithful, "require a faithful trace");
    tsolve->callback([&] { rc = cmd_trace_solve(load_context(ts_o), ts_faithful, out); });

    CommonOpts es_o;
    auto *es = app.add_subcommand("construct-es", "relative graph E_S and phi images");
    add_common(es, es_o);
    es->callback([&] { rc = cmd_construct_es(load_context(es_o), out); });

    CommonOpts cc_o;
    std::string cc_sub;
    auto *cc = app.add_subcommand("construct-complete", "complete a subgraph to (F, T)");
    add_common(cc, cc_o);
    cc->add_option("--sub", cc_sub, "subgraph JSON file")->required();
    cc->callback([&] { rc = cmd_construct_complete(load_context(cc_o), cc_sub, out); });

    CommonOpts w_o;
    auto *wit = app.add_subcommand("witness", "non-finiteness witness");
    add_common(wit, w_o);
    wit->callback([&] { rc = cmd_witness(load_context(w_o), w_o.json, out); });

    CommonOpts oc_o;
    uint64_t oc_seed = 12345;
    auto *oc = app.add_subcommand("oracle-check", "run the oracle cross-check suite");
    add_common(oc, oc_o);
    oc->add_option("--seed", oc_seed, "seed for the randomized samples");
    oc->callback([&] { rc = cmd_oracle_check(load_context(oc_o), oc_seed, oc_o.json, out); });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return 2;
    } catch (const error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace leavitt
