#pragma once

#include "rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace leavitt {

struct Edge {
    std::string id;
    int src;
    int rng;
};

inline bool valid_id(std::string_view id) {
    if (id.empty())
        return false;
    auto head = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto tail = [&](char c) {
        return head(c) || (c >= '0' && c <= '9') || c == '\'';
    };
    if (!head(id[0]))
        return false;
    for (size_t i = 1; i < id.size(); ++i)
        if (!tail(id[i]))
            return false;
    return true;
}

/// Finite directed graph with parallel edges. Vertices and edges keep their
/// insertion order; every deterministic choice downstream (special edges,
/// certificates, display order) is stated in terms of that order.
/// Ids are identifiers ([A-Za-z_][A-Za-z0-9_']*), unique across vertices
/// and edges together so that expression text stays unambiguous.
class Graph {
  public:
    int add_vertex(const std::string &id) {
        if (!valid_id(id))
            throw error("invalid id '" + id + "'");
        if (index_.count(id))
            throw error("duplicate id '" + id + "'");
        int v = static_cast<int>(vertices_.size());
        vertices_.push_back(id);
        out_.emplace_back();
        in_.emplace_back();
        index_[id] = {true, v};
        return v;
    }

    int add_edge(const std::string &id, const std::string &src, const std::string &rng) {
        if (!valid_id(id))
            throw error("invalid id '" + id + "'");
        if (index_.count(id))
            throw error("duplicate id '" + id + "'");
        auto s = find_vertex(src);
        if (!s)
            throw error("edge '" + id + "': unknown vertex '" + src + "'");
        auto r = find_vertex(rng);
        if (!r)
            throw error("edge '" + id + "': unknown vertex '" + rng + "'");
        int e = static_cast<int>(edges_.size());
        edges_.push_back({id, *s, *r});
        out_[*s].push_back(e);
        in_[*r].push_back(e);
        index_[id] = {false, e};
        return e;
    }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string &vertex_id(int v) const { return vertices_[v]; }
    const Edge &edge(int e) const { return edges_[e]; }
    int source(int e) const { return edges_[e].src; }
    int range(int e) const { return edges_[e].rng; }
    const std::vector<int> &out_edges(int v) const { return out_[v]; }
    const std::vector<int> &in_edges(int v) const { return in_[v]; }
    int out_degree(int v) const { return static_cast<int>(out_[v].size()); }

    std::optional<int> find_vertex(const std::string &id) const {
        auto it = index_.find(id);
        if (it == index_.end() || !it->second.first)
            return std::nullopt;
        return it->second.second;
    }
    std::optional<int> find_edge(const std::string &id) const {
        auto it = index_.find(id);
        if (it == index_.end() || it->second.first)
            return std::nullopt;
        return it->second.second;
    }
    bool has_id(const std::string &id) const { return index_.count(id) != 0; }

  private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_, in_;
    std::map<std::string, std::pair<bool, int>> index_; // id -> (is_vertex, idx)
};

/// Directed path: a base vertex plus a (possibly empty) run of consecutive
/// edges starting there. A lone vertex is the length-0 path at that vertex.
struct Path {
    int base = -1;
    std::vector<int> edges;

    static Path at_vertex(int v) { return {v, {}}; }

    int length() const { return static_cast<int>(edges.size()); }
    int source() const { return base; }
    int range(const Graph &g) const {
        return edges.empty() ? base : g.range(edges.back());
    }
    bool valid(const Graph &g) const {
        if (base < 0 || base >= g.vertex_count())
            return false;
        int at = base;
        for (int e : edges) {
            if (e < 0 || e >= g.edge_count() || g.source(e) != at)
                return false;
            at = g.range(e);
        }
        return true;
    }
    bool operator==(const Path &o) const = default;
};

/// p followed by q; requires r(p) = s(q).
inline Path concat(const Path &p, const Path &q, const Graph &g) {
    if (p.range(g) != q.source())
        throw error("path concat: ranges do not match");
    Path r = p;
    r.edges.insert(r.edges.end(), q.edges.begin(), q.edges.end());
    return r;
}

inline std::string path_str(const Path &p, const Graph &g) {
    if (p.edges.empty())
        return g.vertex_id(p.base);
    std::string out;
    for (size_t i = 0; i < p.edges.size(); ++i) {
        if (i)
            out += '.';
        out += g.edge(p.edges[i]).id;
    }
    return out;
}

struct VertexClassification {
    std::vector<int> regular; // insertion order
    std::vector<int> sinks;   // insertion order
    std::vector<char> is_regular;
};

/// Regular = emits at least one edge (finite graphs have no infinite
/// emitters, so this is the whole condition). Everything else is a sink.
inline VertexClassification classify_vertices(const Graph &g) {
    VertexClassification c;
    c.is_regular.resize(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.out_degree(v) > 0) {
            c.is_regular[v] = 1;
            c.regular.push_back(v);
        } else {
            c.sinks.push_back(v);
        }
    }
    return c;
}

/// Vertices lying on at least one cycle, in insertion order. A vertex is on
/// a cycle iff its strongly connected component has two or more vertices or
/// it carries a self-loop.
inline std::vector<int> cycle_vertices(const Graph &g) {
    int n = g.vertex_count();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    std::vector<int> comp_size;
    int next = 0;

    // iterative Tarjan
    struct Frame {
        int v;
        size_t ei;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1)
            continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame &f = call.back();
            const auto &out = g.out_edges(f.v);
            if (f.ei < out.size()) {
                int w = g.range(out[f.ei++]);
                if (index[w] == -1) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    int cid = static_cast<int>(comp_size.size());
                    int size = 0;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = cid;
                        ++size;
                        if (w == f.v)
                            break;
                    }
                    comp_size.push_back(size);
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }

    std::vector<char> self_loop(n, 0);
    for (int e = 0; e < g.edge_count(); ++e)
        if (g.source(e) == g.range(e))
            self_loop[g.source(e)] = 1;

    std::vector<int> result;
    for (int v = 0; v < n; ++v)
        if (self_loop[v] || comp_size[comp[v]] >= 2)
            result.push_back(v);
    return result;
}

/// First cycle through v (v must lie on a cycle): depth-first search that
/// follows out-edges in insertion order and closes back at v without
/// repeating intermediate vertices.
inline std::optional<Path> find_cycle_at(const Graph &g, int v) {
    std::vector<char> visited(g.vertex_count(), 0);
    std::vector<int> trail;
    std::function<bool(int)> dfs = [&](int at) -> bool {
        for (int e : g.out_edges(at)) {
            int w = g.range(e);
            if (w == v) {
                trail.push_back(e);
                return true;
            }
            if (!visited[w]) {
                visited[w] = 1;
                trail.push_back(e);
                if (dfs(w))
                    return true;
                trail.pop_back();
            }
        }
        return false;
    };
    visited[v] = 1;
    if (!dfs(v))
        return std::nullopt;
    return Path{v, trail};
}

struct NoExitReport {
    bool no_exit = true;
    int vertex = -1;    // first cycle vertex with an exit, insertion order
    int exit_edge = -1; // an out-edge of that vertex missing from its cycle
};

/// A cycle has an exit iff some vertex on it emits an edge outside the
/// cycle; over all cycles this happens iff some cycle vertex has
/// out-degree >= 2.
inline NoExitReport is_no_exit(const Graph &g) {
    for (int v : cycle_vertices(g)) {
        if (g.out_degree(v) >= 2) {
            auto cyc = find_cycle_at(g, v);
            int cycle_first = cyc ? cyc->edges.front() : -1;
            for (int e : g.out_edges(v))
                if (e != cycle_first)
                    return {false, v, e};
        }
    }
    return {};
}

/// For finite graphs local noetherianity of the associated algebras is
/// exactly the no-exit property.
inline bool is_locally_noetherian_graph(const Graph &g) {
    return is_no_exit(g).no_exit;
}

// ---- relative graph ------------------------------------------------------

struct RelativeGraph {
    Graph graph;                    // original vertices/edges first, then primes
    std::vector<int> primed_vertex; // per original vertex: index of v' or -1
    std::vector<int> primed_edge;   // per original edge: index of e' or -1
};

namespace detail {
inline std::string fresh_prime_name(const Graph &g, const std::string &base) {
    std::string name = base + "'";
    int k = 1;
    while (g.has_id(name))
        name = base + "'" + std::to_string(k++);
    return name;
}
} // namespace detail

/// The graph E_S: one new sink v' per regular vertex v outside S, and one
/// new edge e' : s(e) -> r(e)' per edge e whose range is such a vertex.
/// The Cohn-Leavitt algebra of (E, S) is isomorphic to the Leavitt path
/// algebra of E_S.
inline RelativeGraph build_relative_graph(const Graph &g, const std::vector<int> &s_set) {
    std::vector<char> in_s(g.vertex_count(), 0);
    for (int v : s_set)
        in_s[v] = 1;
    auto cls = classify_vertices(g);

    RelativeGraph rel;
    rel.primed_vertex.assign(g.vertex_count(), -1);
    rel.primed_edge.assign(g.edge_count(), -1);

    for (int v = 0; v < g.vertex_count(); ++v)
        rel.graph.add_vertex(g.vertex_id(v));
    for (int v = 0; v < g.vertex_count(); ++v)
        if (cls.is_regular[v] && !in_s[v])
            rel.primed_vertex[v] =
                rel.graph.add_vertex(detail::fresh_prime_name(rel.graph, g.vertex_id(v)));

    for (int e = 0; e < g.edge_count(); ++e)
        rel.graph.add_edge(g.edge(e).id, g.vertex_id(g.source(e)), g.vertex_id(g.range(e)));
    for (int e = 0; e < g.edge_count(); ++e) {
        int r = g.range(e);
        if (rel.primed_vertex[r] != -1)
            rel.primed_edge[e] = rel.graph.add_edge(
                detail::fresh_prime_name(rel.graph, g.edge(e).id),
                g.vertex_id(g.source(e)), rel.graph.vertex_id(rel.primed_vertex[r]));
    }
    return rel;
}

// ---- complete subobjects -------------------------------------------------

struct Subgraph {
    std::vector<int> vertices; // indices into the ambient graph
    std::vector<int> edges;
};

struct SubobjectResult {
    Graph graph;        // F, with ids carried over from the ambient graph
    std::vector<int> t; // T as vertex indices of F
};

/// Completes a subgraph G of (E, S) to a pair (F, T) satisfying the
/// completeness condition: whenever a vertex v in S keeps one of its edges
/// in the subobject, it must keep all of them (and their ranges). T is then
/// the part of S that stayed regular. The inclusion of algebras induced by
/// (F, T) -> (E, S) is injective exactly because of this condition.
inline SubobjectResult complete_subobject(const Graph &g, const std::vector<int> &s_set,
                                          const Subgraph &sub) {
    std::vector<char> in_s(g.vertex_count(), 0);
    for (int v : s_set)
        in_s[v] = 1;
    std::vector<char> in_v(g.vertex_count(), 0), in_e(g.edge_count(), 0);
    for (int v : sub.vertices) {
        if (v < 0 || v >= g.vertex_count())
            throw error("subgraph: vertex index out of range");
        in_v[v] = 1;
    }
    for (int e : sub.edges) {
        if (e < 0 || e >= g.edge_count())
            throw error("subgraph: edge index out of range");
        if (!in_v[g.source(e)] || !in_v[g.range(e)])
            throw error("subgraph: edge '" + g.edge(e).id + "' has an endpoint outside it");
        in_e[e] = 1;
    }

    std::vector<char> f_v = in_v, f_e = in_e;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!in_v[v] || !in_s[v])
            continue;
        bool touches = false;
        for (int e : g.out_edges(v))
            if (in_e[e])
                touches = true;
        if (!touches)
            continue;
        for (int e : g.out_edges(v)) {
            f_e[e] = 1;
            f_v[g.range(e)] = 1;
        }
    }

    SubobjectResult out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (f_v[v])
            out.graph.add_vertex(g.vertex_id(v));
    for (int e = 0; e < g.edge_count(); ++e)
        if (f_e[e])
            out.graph.add_edge(g.edge(e).id, g.vertex_id(g.source(e)),
                               g.vertex_id(g.range(e)));
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!f_v[v] || !in_s[v])
            continue;
        bool touches = false;
        for (int e : g.out_edges(v))
            if (f_e[e])
                touches = true;
        if (touches)
            out.t.push_back(*out.graph.find_vertex(g.vertex_id(v)));
    }

    // completeness: every T vertex keeps its full edge fan
    for (int tv : out.t) {
        int v = *g.find_vertex(out.graph.vertex_id(tv));
        for (int e : g.out_edges(v))
            if (!f_e[e])
                throw error("internal: completion missed an edge of '" +
                            g.vertex_id(v) + "'");
    }
    return out;
}

} // namespace leavitt
