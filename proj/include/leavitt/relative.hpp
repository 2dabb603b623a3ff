#pragma once

#include "algebra.hpp"

#include <vector>

namespace leavitt {

/// Images in CL(E, S) of the generators of L(E_S), indexed by the vertex
/// and edge numbering of the relative graph. The map they induce is the
/// star-isomorphism L(E_S) -> CL(E, S).
struct GeneratorDictionary {
    std::vector<Element> vertex_image;
    std::vector<Element> edge_image;
    std::vector<Element> ghost_image;
};

/// phi sends an original vertex v to v, except that a regular v outside S
/// splits as v = (sum over its fan of e e*) + v', with the fan going to v
/// and the complement to the new sink v'. Edges follow by e = e r(e):
/// phi(e) = e phi(r(e)) and phi(e') = e phi(r(e)'), ghosts by starring.
inline GeneratorDictionary build_generator_dictionary(const RelativeGraph &rel,
                                                      const AlgebraContext &ctx) {
    const Graph &g = ctx.graph;
    GeneratorDictionary dict;
    dict.vertex_image.resize(rel.graph.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (rel.primed_vertex[v] == -1) {
            dict.vertex_image[v] = vertex_elem(v);
            continue;
        }
        Element fan;
        for (int e : g.out_edges(v))
            fan = add(fan, Element(Monomial{Path{v, {e}}, Path{v, {e}}}));
        dict.vertex_image[v] = normalize(fan, ctx);
        dict.vertex_image[rel.primed_vertex[v]] =
            normalize(sub(vertex_elem(v), fan), ctx);
    }

    dict.edge_image.resize(rel.graph.edge_count());
    dict.ghost_image.resize(rel.graph.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Element &range_img = dict.vertex_image[g.range(e)];
        dict.edge_image[e] = mul(edge_elem(e, g), range_img, ctx);
        if (rel.primed_edge[e] != -1) {
            int rv = rel.primed_vertex[g.range(e)];
            dict.edge_image[rel.primed_edge[e]] =
                mul(edge_elem(e, g), dict.vertex_image[rv], ctx);
        }
    }
    for (int e = 0; e < rel.graph.edge_count(); ++e)
        dict.ghost_image[e] = star_elem(dict.edge_image[e], ctx);
    return dict;
}

/// Applies the dictionary to an element of L(E_S): every word becomes the
/// product of its generator images in CL(E, S). Additive, multiplicative,
/// star-preserving and K-linear by construction.
inline Element phi_map(const Element &x, const GeneratorDictionary &dict,
                       const RelativeGraph &rel, const AlgebraContext &ctx) {
    Element out;
    for (const auto &[m, c] : x.terms()) {
        if (!m.p.valid(rel.graph) || !m.q.valid(rel.graph) ||
            m.p.range(rel.graph) != m.q.range(rel.graph))
            throw error("element references generators outside the relative graph");
        Element t = dict.vertex_image[m.p.base];
        for (int e : m.p.edges)
            t = mul(t, dict.edge_image[e], ctx);
        for (auto it = m.q.edges.rbegin(); it != m.q.edges.rend(); ++it)
            t = mul(t, dict.ghost_image[*it], ctx);
        t = mul(t, dict.vertex_image[m.q.base], ctx);
        out = add(out, scalar_mul(c, t));
    }
    return normalize(out, ctx);
}

} // namespace leavitt
