#pragma once

#include "algebra.hpp"

#include <random>

namespace leavitt {

/// Random scalar with small numerators and denominators; imaginary part
/// only when the field allows one.
inline Scalar random_scalar(std::mt19937_64 &rng, const FieldConfig &field,
                            bool nonzero = false) {
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<long> den(1, 2);
    for (;;) {
        Rational re(num(rng), den(rng));
        Rational im = field.restrict_to_rationals ? Rational(0) : Rational(num(rng), den(rng));
        Scalar c(re, im);
        if (!nonzero || !c.is_zero())
            return c;
    }
}

/// Forward random walk from `from` (random vertex when -1) of length at
/// most max_len; stops early at sinks.
inline Path random_path(const Graph &g, std::mt19937_64 &rng, int max_len,
                        int from = -1) {
    if (from == -1)
        from = static_cast<int>(rng() % g.vertex_count());
    std::uniform_int_distribution<int> len(0, max_len);
    Path p = Path::at_vertex(from);
    int want = len(rng);
    for (int i = 0; i < want; ++i) {
        const auto &out = g.out_edges(p.range(g));
        if (out.empty())
            break;
        p.edges.push_back(out[rng() % out.size()]);
    }
    return p;
}

/// Random basis word p q*: p walks forward, q walks backward from r(p) so
/// the ranges agree.
inline Monomial random_monomial(const Graph &g, std::mt19937_64 &rng, int max_len) {
    Path p = random_path(g, rng, max_len);
    int end = p.range(g);
    std::uniform_int_distribution<int> len(0, max_len);
    int want = len(rng);
    std::vector<int> back;
    int at = end;
    for (int i = 0; i < want; ++i) {
        const auto &in = g.in_edges(at);
        if (in.empty())
            break;
        int e = in[rng() % in.size()];
        back.push_back(e);
        at = g.source(e);
    }
    Path q{at, {back.rbegin(), back.rend()}};
    return {std::move(p), std::move(q)};
}

/// Random element with at most max_terms words of path length <= max_len.
/// May come out zero when coefficients collide.
inline Element random_element(const AlgebraContext &ctx, std::mt19937_64 &rng,
                              int max_terms, int max_len) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    Element x;
    int want = terms(rng);
    for (int i = 0; i < want; ++i)
        x.add_term(random_monomial(ctx.graph, rng, max_len),
                   random_scalar(rng, ctx.field, true));
    return x;
}

/// As random_element but retries until the normal form is nonzero.
inline Element random_nonzero_element(const AlgebraContext &ctx, std::mt19937_64 &rng,
                                      int max_terms, int max_len) {
    for (;;) {
        Element x = random_element(ctx, rng, max_terms, max_len);
        if (!normalize(x, ctx).is_zero())
            return x;
    }
}

} // namespace leavitt
