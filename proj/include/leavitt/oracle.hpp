#pragma once

#include "algebra.hpp"
#include "trace.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace leavitt {

// Brute-force cross-checks for the algebra engine, independent of the
// rewriting code: a matrix-unit representation for finite acyclic graphs
// with S = R(E), and the Laurent polynomial representation for the
// single-vertex single-loop graph.

// ---- exact dense matrices over Scalar -------------------------------------

using Matrix = std::vector<std::vector<Scalar>>;

inline Matrix mat_zero(size_t n, size_t m) {
    return Matrix(n, std::vector<Scalar>(m, Scalar(0)));
}

inline Matrix mat_identity(size_t n) {
    Matrix out = mat_zero(n, n);
    for (size_t i = 0; i < n; ++i)
        out[i][i] = Scalar(1);
    return out;
}

inline Matrix mat_mul(const Matrix &a, const Matrix &b) {
    size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Matrix out = mat_zero(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero())
                continue;
            for (size_t j = 0; j < m; ++j)
                out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

inline Matrix mat_add(const Matrix &a, const Matrix &b) {
    Matrix out = a;
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j < out[i].size(); ++j)
            out[i][j] += b[i][j];
    return out;
}

inline Matrix mat_scale(const Scalar &c, const Matrix &a) {
    Matrix out = a;
    for (auto &row : out)
        for (auto &x : row)
            x *= c;
    return out;
}

/// Conjugate transpose with respect to the configured involution.
inline Matrix mat_star(const Matrix &a, const FieldConfig &cfg) {
    size_t n = a.size(), m = n ? a[0].size() : 0;
    Matrix out = mat_zero(m, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j)
            out[j][i] = star(a[i][j], cfg);
    return out;
}

inline bool mat_is_zero(const Matrix &a) {
    for (const auto &row : a)
        for (const auto &x : row)
            if (!x.is_zero())
                return false;
    return true;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<Matrix> mat_inverse(Matrix a) {
    size_t n = a.size();
    Matrix inv = mat_identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero())
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Scalar d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero())
                continue;
            Scalar f = a[r][col];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// ---- block-diagonal matrices (one block per sink) --------------------------

using BlockDiag = std::vector<Matrix>;

inline BlockDiag bd_mul(const BlockDiag &a, const BlockDiag &b) {
    BlockDiag out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        out.push_back(mat_mul(a[i], b[i]));
    return out;
}

inline BlockDiag bd_add(const BlockDiag &a, const BlockDiag &b) {
    BlockDiag out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        out.push_back(mat_add(a[i], b[i]));
    return out;
}

inline BlockDiag bd_scale(const Scalar &c, const BlockDiag &a) {
    BlockDiag out;
    out.reserve(a.size());
    for (const auto &m : a)
        out.push_back(mat_scale(c, m));
    return out;
}

inline BlockDiag bd_star(const BlockDiag &a, const FieldConfig &cfg) {
    BlockDiag out;
    out.reserve(a.size());
    for (const auto &m : a)
        out.push_back(mat_star(m, cfg));
    return out;
}

inline bool bd_is_zero(const BlockDiag &a) {
    for (const auto &m : a)
        if (!mat_is_zero(m))
            return false;
    return true;
}

// ---- path enumeration (acyclic graphs) -------------------------------------

/// All directed paths of the graph, including the length-0 path at each
/// vertex. Only terminates on acyclic graphs, so those are required.
inline std::vector<Path> enumerate_paths(const Graph &g) {
    if (!cycle_vertices(g).empty())
        throw error("path enumeration requires an acyclic graph");
    std::vector<Path> out;
    for (int v = 0; v < g.vertex_count(); ++v)
        out.push_back(Path::at_vertex(v));
    for (size_t i = 0; i < out.size(); ++i) {
        Path p = out[i];
        for (int e : g.out_edges(p.range(g)))
            out.push_back(detail::extend(p, e));
    }
    return out;
}

/// Number of words p q* in the monomial basis (finite for acyclic graphs).
inline size_t count_basis_monomials(const AlgebraContext &ctx) {
    auto paths = enumerate_paths(ctx.graph);
    size_t n = 0;
    for (const auto &p : paths)
        for (const auto &q : paths) {
            if (p.range(ctx.graph) != q.range(ctx.graph))
                continue;
            if (!detail::reduction_vertex(Monomial{p, q}, ctx))
                ++n;
        }
    return n;
}

// ---- matrix-unit representation --------------------------------------------

struct MatrixBlock {
    int sink;
    std::vector<Path> paths; // all paths ending at the sink, incl. the sink
};

/// For a finite acyclic graph with S = R(E) the algebra is a direct sum of
/// matrix rings, one block per sink v of size n_v = number of paths ending
/// at v. The word p q* acts as the matrix unit E_{p,q} of its block.
/// Coordinates are fixed by breadth-first search from the sink along
/// reversed edges, ties broken by edge id, so failures are diffable.
struct MatrixRep {
    AlgebraContext ctx;
    std::vector<MatrixBlock> blocks;
    std::vector<BlockDiag> vertex_img; // indexed by vertex
    std::vector<BlockDiag> edge_img;   // indexed by edge
    std::vector<BlockDiag> ghost_img;  // indexed by edge
    size_t dimension = 0;   // sum of block sizes
    size_t basis_count = 0; // sum of squared block sizes
};

inline BlockDiag zero_blockdiag(const MatrixRep &rep) {
    BlockDiag out;
    out.reserve(rep.blocks.size());
    for (const auto &b : rep.blocks)
        out.push_back(mat_zero(b.paths.size(), b.paths.size()));
    return out;
}

inline MatrixRep build_matrix_rep(const AlgebraContext &ctx) {
    const Graph &g = ctx.graph;
    if (!cycle_vertices(g).empty())
        throw error("matrix oracle requires an acyclic graph");
    auto cls = classify_vertices(g);
    for (int v : cls.regular)
        if (!ctx.in_s[v])
            throw error("matrix oracle requires S to contain every regular vertex");

    MatrixRep rep;
    rep.ctx = ctx;
    std::vector<std::map<std::string, size_t>> row; // per block: path key -> index
    for (int sink : cls.sinks) {
        MatrixBlock b;
        b.sink = sink;
        b.paths.push_back(Path::at_vertex(sink));
        for (size_t i = 0; i < b.paths.size(); ++i) {
            Path p = b.paths[i];
            std::vector<int> in = g.in_edges(p.source());
            std::sort(in.begin(), in.end(),
                      [&](int a, int bb) { return g.edge(a).id < g.edge(bb).id; });
            for (int f : in) {
                Path np{g.source(f), {f}};
                np.edges.insert(np.edges.end(), p.edges.begin(), p.edges.end());
                b.paths.push_back(std::move(np));
            }
        }
        std::map<std::string, size_t> idx;
        for (size_t i = 0; i < b.paths.size(); ++i)
            idx[path_str(b.paths[i], g)] = i;
        row.push_back(std::move(idx));
        rep.dimension += b.paths.size();
        rep.basis_count += b.paths.size() * b.paths.size();
        rep.blocks.push_back(std::move(b));
    }

    rep.vertex_img.assign(g.vertex_count(), {});
    for (int v = 0; v < g.vertex_count(); ++v) {
        BlockDiag m = zero_blockdiag(rep);
        for (size_t bi = 0; bi < rep.blocks.size(); ++bi) {
            const auto &paths = rep.blocks[bi].paths;
            for (size_t i = 0; i < paths.size(); ++i)
                if (paths[i].source() == v)
                    m[bi][i][i] = Scalar(1);
        }
        rep.vertex_img[v] = std::move(m);
    }

    rep.edge_img.assign(g.edge_count(), {});
    rep.ghost_img.assign(g.edge_count(), {});
    for (int e = 0; e < g.edge_count(); ++e) {
        BlockDiag m = zero_blockdiag(rep);
        for (size_t bi = 0; bi < rep.blocks.size(); ++bi) {
            const auto &paths = rep.blocks[bi].paths;
            for (size_t j = 0; j < paths.size(); ++j) {
                if (paths[j].source() != g.range(e))
                    continue;
                Path ext{g.source(e), {e}};
                ext.edges.insert(ext.edges.end(), paths[j].edges.begin(),
                                 paths[j].edges.end());
                m[bi][row[bi].at(path_str(ext, g))][j] = Scalar(1);
            }
        }
        rep.ghost_img[e] = bd_star(m, ctx.field);
        rep.edge_img[e] = std::move(m);
    }

    // the five defining relations, checked exhaustively on generators
    auto expect = [](bool ok) {
        if (!ok)
            throw error("internal: matrix representation fails a defining relation");
    };
    BlockDiag zero = zero_blockdiag(rep);
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int w = 0; w < g.vertex_count(); ++w)
            expect(bd_mul(rep.vertex_img[v], rep.vertex_img[w]) ==
                   (v == w ? rep.vertex_img[v] : zero));
    for (int e = 0; e < g.edge_count(); ++e) {
        expect(bd_mul(rep.vertex_img[g.source(e)], rep.edge_img[e]) == rep.edge_img[e]);
        expect(bd_mul(rep.edge_img[e], rep.vertex_img[g.range(e)]) == rep.edge_img[e]);
        expect(bd_mul(rep.vertex_img[g.range(e)], rep.ghost_img[e]) == rep.ghost_img[e]);
        expect(bd_mul(rep.ghost_img[e], rep.vertex_img[g.source(e)]) == rep.ghost_img[e]);
        for (int f = 0; f < g.edge_count(); ++f)
            expect(bd_mul(rep.ghost_img[e], rep.edge_img[f]) ==
                   (e == f ? rep.vertex_img[g.range(e)] : zero));
    }
    for (int v : cls.regular) {
        BlockDiag fan = zero;
        for (int e : g.out_edges(v))
            fan = bd_add(fan, bd_mul(rep.edge_img[e], rep.ghost_img[e]));
        expect(fan == rep.vertex_img[v]);
    }
    expect(rep.basis_count == count_basis_monomials(ctx));
    return rep;
}

/// Image of an element under the matrix representation: each word is the
/// product of its generator images, computed by plain matrix multiplication.
inline BlockDiag oracle_eval(const Element &x, const MatrixRep &rep) {
    const Graph &g = rep.ctx.graph;
    BlockDiag acc = zero_blockdiag(rep);
    for (const auto &[m, c] : x.terms()) {
        if (!m.p.valid(g) || !m.q.valid(g) || m.p.range(g) != m.q.range(g))
            throw error("element does not fit the oracle's graph");
        BlockDiag t = rep.vertex_img[m.p.base];
        for (int e : m.p.edges)
            t = bd_mul(t, rep.edge_img[e]);
        for (auto it = m.q.edges.rbegin(); it != m.q.edges.rend(); ++it)
            t = bd_mul(t, rep.ghost_img[*it]);
        t = bd_mul(t, rep.vertex_img[m.q.base]);
        acc = bd_add(acc, bd_scale(c, t));
    }
    return acc;
}

/// Weighted sum of matrix traces: each block contributes delta(sink) times
/// the standard trace of that block. Agrees with the canonical trace.
inline Scalar oracle_trace(const BlockDiag &m, const MatrixRep &rep, const GraphTrace &d) {
    Scalar out(0);
    for (size_t bi = 0; bi < rep.blocks.size(); ++bi) {
        Scalar bt(0);
        for (size_t i = 0; i < m[bi].size(); ++i)
            bt += m[bi][i][i];
        out += d.values[rep.blocks[bi].sink] * bt;
    }
    return out;
}

// ---- Laurent polynomial representation --------------------------------------

/// Finitely supported map exponent -> coefficient, zeros pruned.
struct Laurent {
    std::map<int, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(int n, const Scalar &c) {
        if (c.is_zero())
            return;
        auto [it, fresh] = terms.emplace(n, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }
    bool operator==(const Laurent &o) const = default;
};

inline Laurent laurent_monomial(int n, Scalar c = Scalar(1)) {
    Laurent f;
    f.add_term(n, c);
    return f;
}

inline Laurent laurent_add(const Laurent &a, const Laurent &b) {
    Laurent out = a;
    for (const auto &[n, c] : b.terms)
        out.add_term(n, c);
    return out;
}

inline Laurent laurent_mul(const Laurent &a, const Laurent &b) {
    Laurent out;
    for (const auto &[n, c] : a.terms)
        for (const auto &[m, d] : b.terms)
            out.add_term(n + m, c * d);
    return out;
}

/// The involution: x maps to x^-1 and coefficients are starred.
inline Laurent laurent_star(const Laurent &a, const FieldConfig &cfg) {
    Laurent out;
    for (const auto &[n, c] : a.terms)
        out.add_term(-n, star(c, cfg));
    return out;
}

inline std::string to_string(const Laurent &f) {
    if (f.is_zero())
        return "0";
    std::string out;
    for (const auto &[n, c] : f.terms) {
        if (!out.empty())
            out += " + ";
        std::string cs = to_string(c);
        if (cs.find(' ') != std::string::npos)
            cs = "(" + cs + ")";
        if (n == 0) {
            out += cs;
            continue;
        }
        std::string xs = n == 1 ? "x" : "x^" + std::to_string(n);
        out += c.is_one() ? xs : cs + "*" + xs;
    }
    return out;
}

/// The single-vertex single-loop graph with its vertex in S has algebra
/// K[x, x^-1]: the vertex maps to 1, the loop to x, its ghost to x^-1.
struct LaurentRep {
    AlgebraContext ctx;
};

inline LaurentRep build_laurent_rep(const AlgebraContext &ctx) {
    const Graph &g = ctx.graph;
    if (g.vertex_count() != 1 || g.edge_count() != 1 || g.source(0) != 0 ||
        g.range(0) != 0)
        throw error("Laurent oracle requires the single-vertex single-loop graph");
    if (ctx.s.empty())
        throw error("Laurent oracle requires the loop vertex in S");
    return {ctx};
}

inline Laurent laurent_eval(const Element &x, const LaurentRep &rep) {
    const Graph &g = rep.ctx.graph;
    Laurent out;
    for (const auto &[m, c] : x.terms()) {
        if (!m.p.valid(g) || !m.q.valid(g))
            throw error("element does not fit the oracle's graph");
        out.add_term(m.p.length() - m.q.length(), c);
    }
    return out;
}

inline Scalar laurent_trace(const Laurent &f, const LaurentRep &rep, const GraphTrace &d) {
    if (d.values.size() != static_cast<size_t>(rep.ctx.graph.vertex_count()))
        throw error("trace is not total on the vertices");
    auto it = f.terms.find(0);
    return it == f.terms.end() ? Scalar(0) : d.values[0] * it->second;
}

// ---- direct-finiteness probe -------------------------------------------------

struct ProbeTriple {
    Element x, y, u;
};

struct ProbeResult {
    bool ok = true;
    size_t samples = 0;
    std::string detail;
    std::optional<ProbeTriple> witness;
};

/// Constructs triples x y = u with u the local unit of {x, y} and checks
/// y x = u in the representation. On the matrix side x restricts to the
/// paths sourced at a random vertex subset (the corner), where it acts as a
/// random invertible matrix and y as its inverse. Violations would refute
/// direct finiteness and must never occur for these representations.
inline ProbeResult oracle_direct_finiteness_probe(const MatrixRep &rep, size_t samples,
                                                  std::mt19937_64 &rng) {
    const Graph &g = rep.ctx.graph;
    std::uniform_int_distribution<int> entry(-2, 2);
    auto random_invertible = [&](size_t n) -> std::pair<Matrix, Matrix> {
        for (int attempt = 0; attempt < 256; ++attempt) {
            Matrix a = mat_zero(n, n);
            for (auto &r : a)
                for (auto &x : r)
                    x = Scalar(entry(rng));
            if (auto inv = mat_inverse(a))
                return {std::move(a), std::move(*inv)};
        }
        throw error("internal: could not sample an invertible matrix");
    };

    ProbeResult res;
    for (size_t t = 0; t < samples; ++t) {
        std::vector<char> keep(g.vertex_count(), 1);
        if (t % 2 == 1) {
            bool any = false;
            for (auto &k : keep) {
                k = static_cast<char>(rng() & 1);
                any = any || k;
            }
            if (!any)
                keep[rng() % keep.size()] = 1;
        }
        Element x, y;
        for (const auto &b : rep.blocks) {
            std::vector<size_t> idx;
            for (size_t i = 0; i < b.paths.size(); ++i)
                if (keep[b.paths[i].source()])
                    idx.push_back(i);
            if (idx.empty())
                continue;
            auto [a, ainv] = random_invertible(idx.size());
            for (size_t r = 0; r < idx.size(); ++r)
                for (size_t c = 0; c < idx.size(); ++c) {
                    Monomial m{b.paths[idx[r]], b.paths[idx[c]]};
                    x.add_term(m, a[r][c]);
                    y.add_term(m, ainv[r][c]);
                }
        }
        Element u = local_unit({x, y}, rep.ctx);
        BlockDiag ex = oracle_eval(x, rep);
        BlockDiag ey = oracle_eval(y, rep);
        BlockDiag eu = oracle_eval(u, rep);
        if (!(bd_mul(ex, ey) == eu))
            throw error("internal: probe triple construction failed");
        ++res.samples;
        if (!(bd_mul(ey, ex) == eu)) {
            res.ok = false;
            res.detail = "y*x differs from the local unit";
            res.witness = ProbeTriple{std::move(x), std::move(y), std::move(u)};
            return res;
        }
    }
    return res;
}

/// Laurent-side probe: invertible elements are c x^n, so the triple is
/// (c x^n, c^-1 x^-n, 1). Multiplication is commutative, so a failure here
/// would mean the evaluation itself is broken.
inline ProbeResult oracle_direct_finiteness_probe(const LaurentRep &rep, size_t samples,
                                                  std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> expo(-3, 3), num(-3, 3), den(1, 3);
    auto loop_power = [&](int n) {
        std::vector<int> loops(static_cast<size_t>(n < 0 ? -n : n), 0);
        Path pw{0, loops}, triv = Path::at_vertex(0);
        return n >= 0 ? Element(Monomial{pw, triv}) : Element(Monomial{triv, pw});
    };

    ProbeResult res;
    for (size_t t = 0; t < samples; ++t) {
        Scalar c;
        do {
            Rational im = rep.ctx.field.restrict_to_rationals
                              ? Rational(0)
                              : Rational(num(rng), den(rng));
            c = Scalar(Rational(num(rng), den(rng)), im);
        } while (c.is_zero());
        int n = expo(rng);
        Element x = scalar_mul(c, loop_power(n));
        Element y = scalar_mul(Scalar(1) / c, loop_power(-n));
        Element u = vertex_elem(0);
        Laurent ex = laurent_eval(x, rep);
        Laurent ey = laurent_eval(y, rep);
        Laurent eu = laurent_eval(u, rep);
        if (!(laurent_mul(ex, ey) == eu))
            throw error("internal: probe triple construction failed");
        ++res.samples;
        if (!(laurent_mul(ey, ex) == eu)) {
            res.ok = false;
            res.detail = "y*x differs from the local unit";
            res.witness = ProbeTriple{std::move(x), std::move(y), std::move(u)};
            return res;
        }
    }
    return res;
}

} // namespace leavitt
