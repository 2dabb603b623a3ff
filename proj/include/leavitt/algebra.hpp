#pragma once

#include "graph.hpp"
#include "scalar.hpp"

#include <map>
#include <random>
#include <vector>

namespace leavitt {

/// Everything a Cohn-Leavitt algebra CL(E, S) needs at run time: the graph,
/// the set S of vertices whose fan relation v = sum e e* is imposed, the
/// coefficient field, and the distinguished edge gamma_v (first out-edge in
/// insertion order) used to orient the rewriting system.
struct AlgebraContext {
    Graph graph;
    std::vector<int> s; // insertion order
    std::vector<char> in_s;
    FieldConfig field;
    std::vector<int> special_edge; // per vertex: gamma_v, or -1 outside S
};

/// S defaults to all regular vertices (the Leavitt path algebra); an empty
/// set gives the Cohn path algebra. S must consist of regular vertices.
inline AlgebraContext make_context(Graph g, std::optional<std::vector<int>> s_set = {},
                                   FieldConfig field = {}) {
    AlgebraContext ctx;
    auto cls = classify_vertices(g);
    if (s_set) {
        std::vector<char> seen(g.vertex_count(), 0);
        for (int v : *s_set) {
            if (v < 0 || v >= g.vertex_count())
                throw error("S: vertex index out of range");
            if (!cls.is_regular[v])
                throw error("S contains non-regular vertex " + g.vertex_id(v));
            if (seen[v])
                throw error("S lists '" + g.vertex_id(v) + "' twice");
            seen[v] = 1;
        }
        ctx.s = *s_set;
        std::sort(ctx.s.begin(), ctx.s.end());
    } else {
        ctx.s = cls.regular;
    }
    ctx.in_s.assign(g.vertex_count(), 0);
    ctx.special_edge.assign(g.vertex_count(), -1);
    for (int v : ctx.s) {
        ctx.in_s[v] = 1;
        ctx.special_edge[v] = g.out_edges(v).front();
    }
    ctx.graph = std::move(g);
    ctx.field = field;
    return ctx;
}

/// Word p q* with r(p) = r(q); the length-0 case p = q = v is the vertex
/// itself. These words span the algebra, and the ones where p and q do not
/// both end in the special edge of a vertex in S form a basis.
struct Monomial {
    Path p, q;

    int degree() const { return p.length() - q.length(); }
    bool operator==(const Monomial &o) const = default;
    bool operator<(const Monomial &o) const {
        int tl = p.length() + q.length(), to = o.p.length() + o.q.length();
        if (tl != to)
            return tl < to;
        if (p.edges != o.p.edges)
            return p.edges < o.p.edges;
        if (p.base != o.p.base)
            return p.base < o.p.base;
        if (q.edges != o.q.edges)
            return q.edges < o.q.edges;
        return q.base < o.q.base;
    }
};

inline Monomial vertex_mono(int v) { return {Path::at_vertex(v), Path::at_vertex(v)}; }
inline Monomial edge_mono(int e, const Graph &g) {
    return {Path{g.source(e), {e}}, Path::at_vertex(g.range(e))};
}
inline Monomial ghost_mono(int e, const Graph &g) {
    return {Path::at_vertex(g.range(e)), Path{g.source(e), {e}}};
}
inline Monomial make_monomial(Path p, Path q, const Graph &g) {
    if (!p.valid(g) || !q.valid(g))
        throw error("monomial: invalid path");
    if (p.range(g) != q.range(g))
        throw error("monomial: ranges of p and q differ");
    return {std::move(p), std::move(q)};
}

/// Finite K-linear combination of monomials. Structural equality; equality
/// in the algebra is equality of normal forms.
class Element {
  public:
    Element() = default;
    Element(Monomial m, Scalar c = Scalar(1)) { add_term(std::move(m), std::move(c)); }

    const std::map<Monomial, Scalar> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(Monomial m, Scalar c) {
        if (c.is_zero())
            return;
        auto [it, fresh] = terms_.emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    bool operator==(const Element &o) const = default;

  private:
    std::map<Monomial, Scalar> terms_;
};

inline Element vertex_elem(int v) { return Element(vertex_mono(v)); }
inline Element edge_elem(int e, const Graph &g) { return Element(edge_mono(e, g)); }
inline Element ghost_elem(int e, const Graph &g) { return Element(ghost_mono(e, g)); }

inline Element add(const Element &a, const Element &b) {
    Element out = a;
    for (const auto &[m, c] : b.terms())
        out.add_term(m, c);
    return out;
}

inline Element neg(const Element &a) {
    Element out;
    for (const auto &[m, c] : a.terms())
        out.add_term(m, -c);
    return out;
}

inline Element sub(const Element &a, const Element &b) { return add(a, neg(b)); }

inline Element scalar_mul(const Scalar &c, const Element &a) {
    Element out;
    for (const auto &[m, k] : a.terms())
        out.add_term(m, c * k);
    return out;
}

/// Product of basis words: (p q*)(r s*) survives only when one of q, r is a
/// prefix of the other, and then collapses to a single word.
inline std::optional<Monomial> mono_mul(const Monomial &a, const Monomial &b,
                                        const Graph &g) {
    const Path &q = a.q, &r = b.p;
    if (q.source() != r.source())
        return std::nullopt;
    size_t n = std::min(q.edges.size(), r.edges.size());
    for (size_t i = 0; i < n; ++i)
        if (q.edges[i] != r.edges[i])
            return std::nullopt;
    if (q.edges.size() <= r.edges.size()) {
        // r = q u, so q* r = u and the product is (p u) s*
        Path u{q.range(g), {r.edges.begin() + n, r.edges.end()}};
        return Monomial{concat(a.p, u, g), b.q};
    }
    // q = r u, so q* r = u* and the product is p (s u)*
    Path u{r.range(g), {q.edges.begin() + n, q.edges.end()}};
    return Monomial{a.p, concat(b.q, u, g)};
}

/// Bilinear extension of mono_mul; no rewriting, so the result may contain
/// words outside the basis.
inline Element mul_raw(const Element &a, const Element &b, const Graph &g) {
    Element out;
    for (const auto &[ma, ca] : a.terms())
        for (const auto &[mb, cb] : b.terms())
            if (auto m = mono_mul(ma, mb, g))
                out.add_term(*m, ca * cb);
    return out;
}

namespace detail {
// v in S such that p and q both end in gamma_v, if any
inline std::optional<int> reduction_vertex(const Monomial &m, const AlgebraContext &ctx) {
    if (m.p.edges.empty() || m.q.edges.empty())
        return std::nullopt;
    int e = m.p.edges.back();
    if (m.q.edges.back() != e)
        return std::nullopt;
    int v = ctx.graph.source(e);
    if (ctx.special_edge[v] != e)
        return std::nullopt;
    return v;
}

inline Path chop(const Path &p) {
    Path out = p;
    out.edges.pop_back();
    return out;
}

inline Path extend(const Path &p, int e) {
    Path out = p;
    out.edges.push_back(e);
    return out;
}
} // namespace detail

inline bool is_normal_form(const Element &x, const AlgebraContext &ctx) {
    for (const auto &[m, c] : x.terms())
        if (detail::reduction_vertex(m, ctx))
            return false;
    return true;
}

/// Rewrites into the monomial basis: whenever p and q both end in the
/// special edge gamma_v, replace p q* by p' q'* minus the sibling words
/// p'f (q'f)* over the other edges f of v (this is the fan relation at v
/// solved for gamma_v gamma_v*). Siblings are already irreducible at their
/// last edge, and the main word shrinks, so the rewriting terminates; the
/// result is independent of the order sites are processed in. Pass an RNG
/// to exercise a random processing order.
inline Element normalize(const Element &x, const AlgebraContext &ctx,
                         std::mt19937_64 *shuffle = nullptr) {
    std::vector<std::pair<Monomial, Scalar>> pending(x.terms().begin(), x.terms().end());
    Element out;
    while (!pending.empty()) {
        if (shuffle) {
            size_t k = (*shuffle)() % pending.size();
            std::swap(pending[k], pending.back());
        }
        auto [m, c] = std::move(pending.back());
        pending.pop_back();
        if (c.is_zero())
            continue;
        auto v = detail::reduction_vertex(m, ctx);
        if (!v) {
            out.add_term(std::move(m), std::move(c));
            continue;
        }
        Path p = detail::chop(m.p), q = detail::chop(m.q);
        for (int f : ctx.graph.out_edges(*v))
            if (f != ctx.special_edge[*v])
                pending.push_back({{detail::extend(p, f), detail::extend(q, f)}, -c});
        pending.push_back({{std::move(p), std::move(q)}, std::move(c)});
    }
    return out;
}

inline Element mul(const Element &a, const Element &b, const AlgebraContext &ctx) {
    return normalize(mul_raw(a, b, ctx.graph), ctx);
}

/// Equality in the algebra (normal forms agree).
inline bool equal_mod_relations(const Element &a, const Element &b,
                                const AlgebraContext &ctx) {
    return normalize(sub(a, b), ctx).is_zero();
}

inline Element star_raw(const Element &x, const FieldConfig &field) {
    Element out;
    for (const auto &[m, c] : x.terms())
        out.add_term({m.q, m.p}, star(c, field));
    return out;
}

/// The involution: (a p q*)* = star(a) q p*. Preserves normal forms, since
/// the excluded words are symmetric in p and q.
inline Element star_elem(const Element &x, const AlgebraContext &ctx) {
    return normalize(star_raw(x, ctx.field), ctx);
}

/// Idempotent u (a sum of vertices) with u x = x u = x for every x in the
/// list. The algebra is non-unital, so local units stand in for 1.
inline Element local_unit(const std::vector<Element> &xs, const AlgebraContext &ctx) {
    if (xs.empty())
        throw error("local_unit: empty list");
    std::vector<char> used(ctx.graph.vertex_count(), 0);
    for (const auto &x : xs)
        for (const auto &[m, c] : x.terms())
            used[m.p.base] = used[m.q.base] = 1;
    Element u;
    for (int v = 0; v < ctx.graph.vertex_count(); ++v)
        if (used[v])
            u.add_term(vertex_mono(v), Scalar(1));
    return u;
}

/// Terms of degree n, where deg(p q*) = |p| - |q| (the Z-grading).
inline Element graded_component(const Element &x, int n) {
    Element out;
    for (const auto &[m, c] : x.terms())
        if (m.degree() == n)
            out.add_term(m, c);
    return out;
}

inline std::vector<int> degrees(const Element &x) {
    std::vector<int> ds;
    for (const auto &[m, c] : x.terms())
        if (ds.empty() || ds.back() != m.degree())
            ds.push_back(m.degree());
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

namespace detail {
inline Scalar scalar_pow(const Scalar &k, int n) {
    Scalar base = n < 0 ? Scalar(1) / k : k;
    Scalar out(1);
    for (int i = 0; i < (n < 0 ? -n : n); ++i)
        out *= base;
    return out;
}
} // namespace detail

/// Gauge action of a nonzero scalar k: p q* scales by k^(|p| - |q|).
inline Element gauge_action(const Element &x, const Scalar &k, const AlgebraContext &ctx) {
    if (k.is_zero())
        throw error("gauge_action: k must be nonzero");
    (void)ctx;
    Element out;
    for (const auto &[m, c] : x.terms())
        out.add_term(m, detail::scalar_pow(k, m.degree()) * c);
    return out;
}

/// Strips the longest common edge suffix of p and q: p q* = p' u (q' u)*
/// with (p', q') sharing no final edge. u is returned as the stripped
/// suffix path (the range vertex when nothing was stripped).
inline std::pair<Monomial, Path> reduce_to_irreducible(const Monomial &m, const Graph &g) {
    size_t np = m.p.edges.size(), nq = m.q.edges.size();
    size_t l = 0;
    while (l < np && l < nq && m.p.edges[np - 1 - l] == m.q.edges[nq - 1 - l])
        ++l;
    Path p{m.p.base, {m.p.edges.begin(), m.p.edges.end() - l}};
    Path q{m.q.base, {m.q.edges.begin(), m.q.edges.end() - l}};
    Path u = l == 0 ? Path::at_vertex(m.p.range(g))
                    : Path{g.source(m.p.edges[np - l]),
                           {m.p.edges.end() - l, m.p.edges.end()}};
    return {Monomial{std::move(p), std::move(q)}, std::move(u)};
}

inline bool is_irreducible_mono(const Monomial &m) {
    return m.p.edges.empty() || m.q.edges.empty() || m.p.edges.back() != m.q.edges.back();
}

/// Comparability: p q* ~ r s* when both strip to the same irreducible word.
inline bool comparable(const Monomial &a, const Monomial &b, const Graph &g) {
    return reduce_to_irreducible(a, g).first == reduce_to_irreducible(b, g).first;
}

/// Partition indices of `ms` into comparability classes, classes ordered by
/// first occurrence.
inline std::vector<std::vector<size_t>> comparability_classes(const std::vector<Monomial> &ms,
                                                              const Graph &g) {
    std::vector<std::vector<size_t>> classes;
    std::map<Monomial, size_t> seen;
    for (size_t i = 0; i < ms.size(); ++i) {
        Monomial key = reduce_to_irreducible(ms[i], g).first;
        auto [it, fresh] = seen.emplace(std::move(key), classes.size());
        if (fresh)
            classes.emplace_back();
        classes[it->second].push_back(i);
    }
    return classes;
}

} // namespace leavitt
