#pragma once

#include "algebra.hpp"
#include "feasibility.hpp"

#include <optional>
#include <string>
#include <vector>

namespace leavitt {

/// Vertex values delta(v) of a candidate graph trace, indexed like the
/// graph's vertices. The fan condition delta(v) = sum_{e in s^-1(v)}
/// delta(r(e)) is required at vertices of S only.
struct GraphTrace {
    std::vector<Scalar> values;
};

struct TraceViolation {
    std::string condition; // SCK2 | P | F | SF | certification
    std::string vertex;
    std::string detail;
};

struct TraceReport {
    bool sck2_ok = true;
    bool positive_ok = true;             // condition (P)
    bool faithful_conditions_ok = true;  // conditions (F) and (SF)
    bool faithful_certified = false;     // field is positive definite
    bool faithful_ok = false;
    std::vector<TraceViolation> violations;
};

namespace detail {
inline Scalar fan_sum(const GraphTrace &d, int v, const Graph &g) {
    Scalar s;
    for (int e : g.out_edges(v))
        s += d.values[g.range(e)];
    return s;
}
} // namespace detail

/// Checks the fan equalities at S, positivity (P) and the faithfulness
/// conditions (F), (SF). (P) quantifies over all subsets I of s^-1(v); the
/// empty and full subsets suffice: for any I, delta(v) - sum_I splits as
/// (delta(v) - sum_full) + sum_{full minus I} delta(r(e)), a sum of cone
/// members whenever the two extreme checks pass, and the cone is closed
/// under addition. Faithfulness is only certified when the field itself is
/// positive definite.
inline TraceReport verify_graph_trace(const GraphTrace &d, const AlgebraContext &ctx) {
    const Graph &g = ctx.graph;
    if (d.values.size() != static_cast<size_t>(g.vertex_count()))
        throw error("trace is not total on the vertices");
    if (ctx.field.restrict_to_rationals)
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!d.values[v].is_rational())
                throw error("trace value at '" + g.vertex_id(v) +
                            "' is imaginary with rational field");

    TraceReport rep;
    auto violate = [&](bool &flag, const char *cond, int v, std::string detail) {
        flag = false;
        rep.violations.push_back({cond, g.vertex_id(v), std::move(detail)});
    };

    for (int v : ctx.s) {
        Scalar sum = detail::fan_sum(d, v, g);
        if (d.values[v] != sum)
            violate(rep.sck2_ok, "SCK2", v,
                    "delta(v) = " + to_string(d.values[v]) +
                        " but the fan sums to " + to_string(sum));
    }

    auto cls = classify_vertices(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!in_positive_cone(d.values[v], ctx.field))
            violate(rep.positive_ok, "P", v,
                    "delta(v) = " + to_string(d.values[v]) + " is outside the cone");
        if (cls.is_regular[v]) {
            Scalar gap = d.values[v] - detail::fan_sum(d, v, g);
            if (!in_positive_cone(gap, ctx.field))
                violate(rep.positive_ok, "P", v,
                        "delta(v) minus the fan sum is " + to_string(gap) +
                            ", outside the cone");
        }
    }

    for (int v = 0; v < g.vertex_count(); ++v) {
        const Scalar &val = d.values[v];
        if (!in_positive_cone(val, ctx.field) || val.is_zero())
            violate(rep.faithful_conditions_ok, "F", v,
                    "delta(v) = " + to_string(val) + " is not strictly positive");
        if (cls.is_regular[v] && !ctx.in_s[v]) {
            Scalar gap = val - detail::fan_sum(d, v, g);
            if (!in_positive_cone(gap, ctx.field) || gap.is_zero())
                violate(rep.faithful_conditions_ok, "SF", v,
                        "delta(v) minus the fan sum is " + to_string(gap) +
                            ", not strictly positive");
        }
    }

    rep.faithful_certified = is_positive_definite(ctx.field);
    bool conditions = rep.sck2_ok && rep.positive_ok && rep.faithful_conditions_ok;
    if (conditions && !rep.faithful_certified)
        rep.violations.push_back({"certification", "",
                                  "field involution is not positive definite; "
                                  "faithfulness is not certified"});
    rep.faithful_ok = conditions && rep.faithful_certified;
    return rep;
}

namespace detail {
inline void require_sck2(const GraphTrace &d, const AlgebraContext &ctx) {
    for (int v : ctx.s) {
        Scalar sum = fan_sum(d, v, ctx.graph);
        if (d.values[v] != sum)
            throw error("trace violates the fan relation at '" +
                        ctx.graph.vertex_id(v) + "': " + to_string(d.values[v]) +
                        " != " + to_string(sum));
    }
}
} // namespace detail

/// The canonical trace t(p q*) = [p = q] * delta(r(p)), extended linearly.
/// Well-defined on raw representatives exactly because delta satisfies the
/// fan relations at S, so this refuses traces that do not.
inline Scalar canonical_trace(const Element &x, const GraphTrace &d,
                              const AlgebraContext &ctx) {
    if (d.values.size() != static_cast<size_t>(ctx.graph.vertex_count()))
        throw error("trace is not total on the vertices");
    detail::require_sck2(d, ctx);
    Scalar out;
    for (const auto &[m, c] : x.terms())
        if (m.p == m.q)
            out += c * d.values[m.p.range(ctx.graph)];
    return out;
}

inline bool check_positive_canonical(const GraphTrace &d, const AlgebraContext &ctx) {
    detail::require_sck2(d, ctx);
    return verify_graph_trace(d, ctx).positive_ok;
}

inline bool check_faithful_canonical(const GraphTrace &d, const AlgebraContext &ctx) {
    detail::require_sck2(d, ctx);
    return verify_graph_trace(d, ctx).faithful_ok;
}

// ---- solver ----------------------------------------------------------------

/// The linear system whose solutions are (faithful) positive graph traces
/// with rational values: fan equalities at S, positivity at every vertex,
/// and the fan gap at regular vertices outside S (strict when faithful).
inline std::vector<LinearConstraint> build_trace_constraints(const AlgebraContext &ctx,
                                                             bool require_faithful) {
    using Rel = LinearConstraint::Rel;
    const Graph &g = ctx.graph;
    size_t n = g.vertex_count();
    std::vector<LinearConstraint> cons;
    auto fan_row = [&](int v) {
        std::vector<Rational> c(n);
        c[v] += Rational(1);
        for (int e : g.out_edges(v))
            c[g.range(e)] -= Rational(1);
        return c;
    };
    for (int v : ctx.s)
        cons.push_back({"SCK2(" + g.vertex_id(v) + ")", fan_row(v), Rational(0), Rel::eq});
    auto cls = classify_vertices(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<Rational> c(n);
        c[v] = Rational(1);
        cons.push_back({(require_faithful ? "F(" : "P0(") + g.vertex_id(v) + ")",
                        std::move(c), Rational(0),
                        require_faithful ? Rel::gt : Rel::ge});
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (cls.is_regular[v] && !ctx.in_s[v])
            cons.push_back({(require_faithful ? "SF(" : "P(") + g.vertex_id(v) + ")",
                            fan_row(v), Rational(0),
                            require_faithful ? Rel::gt : Rel::ge});
    return cons;
}

struct TraceSolveOutcome {
    std::optional<GraphTrace> trace;
    std::optional<InfeasibilityCertificate> certificate;
    std::vector<LinearConstraint> constraints;
};

/// Searches for a rational-valued positive (or faithful) graph trace by
/// exact Fourier-Motzkin elimination. Feasible outcomes carry a point that
/// passes verify_graph_trace; infeasible ones carry a checkable
/// certificate.
inline TraceSolveOutcome solve_graph_trace(const AlgebraContext &ctx,
                                           bool require_faithful) {
    TraceSolveOutcome out;
    out.constraints = build_trace_constraints(ctx, require_faithful);
    size_t n = ctx.graph.vertex_count();
    auto result = solve_linear_system(out.constraints, n);
    if (auto *pt = std::get_if<FeasiblePoint>(&result)) {
        GraphTrace d;
        d.values.reserve(n);
        for (auto &r : pt->x)
            d.values.emplace_back(r);
        TraceReport rep = verify_graph_trace(d, ctx);
        bool good = rep.sck2_ok && rep.positive_ok &&
                    (!require_faithful || rep.faithful_conditions_ok);
        if (!good)
            throw error("internal: solver point fails verification");
        out.trace = std::move(d);
    } else {
        out.certificate = std::get<InfeasibilityCertificate>(std::move(result));
    }
    return out;
}

} // namespace leavitt
